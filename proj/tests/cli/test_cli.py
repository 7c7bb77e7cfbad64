import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

DCM = os.environ.get("DCM_CLI", "dcm")
GOLDEN = Path(os.environ.get("DCM_GOLDEN_DIR", Path(__file__).resolve().parent.parent / "golden"))


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("DCM_MAX_K", None)
    if env:
        full_env.update(env)
    return subprocess.run([DCM, *args], capture_output=True, text=True, env=full_env)


class Examples(unittest.TestCase):
    def test_enumerate_k3(self):
        r = run("enumerate", "--k", "3")
        self.assertEqual(r.returncode, 0)
        lines = r.stdout.splitlines()
        self.assertEqual(len(lines), 5)
        self.assertEqual(lines[0], "1-2,3-4,5-6")

    def test_enumerate_k1(self):
        self.assertEqual(run("enumerate", "--k", "1").stdout, "1-2\n")

    def test_enumerate_out_of_bounds(self):
        r = run("enumerate", "--k", "99")
        self.assertNotEqual(r.returncode, 0)
        self.assertEqual(r.stdout, "")

    def test_classify_isolated(self):
        r = run("classify", "--k", "3", "--matching", "1-6,2-5,3-4")
        self.assertEqual(r.stdout, "Isolated-I\n")

    def test_classify_ring_is_regular(self):
        r = run("classify", "--k", "5", "--matching", "1-2,3-4,5-6,7-8,9-10")
        self.assertEqual(r.stdout, "Regular\n")

    def test_classify_witness(self):
        r = run("classify", "--k", "4", "--matching", "1-8,2-3,4-7,5-6", "--format", "json")
        out = json.loads(r.stdout)
        self.assertEqual(out["label"], "Pair-DB")
        self.assertTrue(out["witness"].startswith("DB(4,"))

    def test_neighbors_db_partner(self):
        r = run("neighbors", "--k", "4", "--matching", "1-8,2-3,4-7,5-6")
        self.assertEqual(r.stdout, "1-2,3-8,4-5,6-7\n")

    def test_neighbors_dump_dual(self):
        r = run("neighbors", "--k", "2", "--matching", "1-2,3-4", "--dump-dual", "--format", "json")
        tree = json.loads(r.stdout)["dual_tree"]
        self.assertEqual(tree["vertices"], 3)

    def test_components_k9(self):
        r = run("components", "--k", "9", "--format", "csv")
        self.assertEqual(r.returncode, 0)
        rows = [line.split(",") for line in r.stdout.splitlines()[1:]]
        orders = {}
        for row in rows:
            orders[int(row[2])] = orders.get(int(row[2]), 0) + 1
        self.assertEqual(orders, {1: 612, 5: 36, 4070: 1})

    def test_components_k6(self):
        r = run("components", "--k", "6", "--format", "csv")
        rows = [line.split(",") for line in r.stdout.splitlines()[1:]]
        by_class = {}
        for row in rows:
            by_class.setdefault(row[3], []).append(int(row[2]))
        self.assertEqual(by_class["small"], [2] * 12)
        self.assertEqual(by_class["medium"], [12] * 6)
        self.assertEqual(len(by_class["big"]), 1)

    def test_graph_k2_dot_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = Path(d) / "g.dot"
            r = run("graph", "--k", "2", "--out", str(path))
            self.assertEqual(r.returncode, 0)
            text = path.read_text()
        self.assertEqual(text.count(" -- "), 1)
        self.assertEqual(sum(1 for line in text.splitlines() if line.strip().endswith('";') and "--" not in line), 2)

    def test_verify_quick(self):
        r = run("verify", "--k-range", "1..4", "--quick", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        summary = json.loads(r.stdout)
        self.assertTrue(summary["passed"])
        self.assertEqual(len(summary["checks"]), 13)

    def test_verify_iso_sequence(self):
        r = run("verify", "--k-range", "1..8", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        checks = {c["id"]: c for c in json.loads(r.stdout)["checks"]}
        self.assertIn("classes 1,1,2,2,3,3,4,4", checks[4]["detail"])

    def test_series_edges(self):
        r = run("series", "--edges", "--terms", "30")
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "k,d_k")
        self.assertEqual(lines[-1], "30,2249645599783054957")


class Errors(unittest.TestCase):
    def assert_error(self, r, code, token):
        self.assertEqual(r.returncode, code)
        lines = r.stderr.strip().splitlines()
        self.assertEqual(len(lines), 1, r.stderr)
        self.assertTrue(lines[0].startswith("dcm: error: " + token), lines[0])

    def test_parse_error_has_position(self):
        r = run("classify", "--k", "3", "--matching", "1-2,3-x")
        self.assert_error(r, 2, "matching-malformed")
        self.assertIn("position 6", r.stderr)

    def test_crossing_matching(self):
        self.assert_error(run("neighbors", "--k", "2", "--matching", "1-3,2-4"), 2, "matching-crossing")

    def test_size_mismatch(self):
        self.assert_error(run("neighbors", "--k", "3", "--matching", "1-2"), 2, "size-mismatch")

    def test_unknown_option(self):
        self.assert_error(run("enumerate", "--k", "2", "--bogus"), 2, "usage")

    def test_bad_format(self):
        self.assert_error(run("graph", "--k", "2", "--format", "csv"), 2, "bad-format")

    def test_zero_k(self):
        self.assert_error(run("enumerate", "--k", "0"), 2, "bad-k")

    def test_env_bound(self):
        self.assert_error(run("components", "--k", "5", env={"DCM_MAX_K": "4"}), 3, "k-bound")

    def test_memory_cap(self):
        self.assert_error(run("components", "--k", "10", "--memory-cap", "1"), 3, "resource")

    def test_bad_range(self):
        self.assert_error(run("verify", "--k-range", "5..2"), 2, "bad-range")

    def test_unwritable_output(self):
        self.assert_error(run("enumerate", "--k", "2", "--out", "/nonexistent/dir/x"), 2, "io")


class Golden(unittest.TestCase):
    CASES = [
        ("components_k3.csv", ["components", "--k", "3", "--format", "csv"]),
        ("components_k4.json", ["components", "--k", "4", "--format", "json"]),
        ("components_k6.csv", ["components", "--k", "6", "--format", "csv"]),
        ("graph_k3.dot", ["graph", "--k", "3", "--format", "dot"]),
        ("graph_k3.json", ["graph", "--k", "3", "--format", "json"]),
        ("graph_k4.dot", ["graph", "--k", "4", "--format", "dot"]),
        ("enumerate_k3.txt", ["enumerate", "--k", "3"]),
        ("enumerate_k4.json", ["enumerate", "--k", "4", "--format", "json"]),
        ("series_edges_12.csv", ["series", "--edges", "--terms", "12"]),
        ("counts_1_8.csv", ["counts", "--k-range", "1..8"]),
    ]

    def test_golden_files(self):
        for name, args in self.CASES:
            with self.subTest(name=name):
                r = run(*args)
                self.assertEqual(r.returncode, 0, r.stderr)
                self.assertEqual(r.stdout, (GOLDEN / name).read_text())

    def test_thread_count_does_not_change_bytes(self):
        for fmt in ("dot", "json"):
            one = run("graph", "--k", "8", "--format", fmt, "--threads", "1").stdout
            four = run("graph", "--k", "8", "--format", fmt, "--threads", "4").stdout
            self.assertEqual(one, four)
        one = run("components", "--k", "9", "--format", "csv", "--threads", "1").stdout
        three = run("components", "--k", "9", "--format", "csv", "--threads", "3").stdout
        self.assertEqual(one, three)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], "-v"])
