#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dcm/compat.hpp"
#include "dcm/dual_tree.hpp"
#include "dcm/families.hpp"
#include "dcm/formulas.hpp"
#include "dcm/graph.hpp"
#include "dcm/matching.hpp"
#include "dcm/verify.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct CliError {
  int exit_code;
  std::string code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& code, const std::string& msg) { throw CliError{kUsage, code, msg}; }

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

struct Config {
  int k = 0;
  std::string k_range;
  std::string matching;
  std::string format = "text";
  std::string out;
  unsigned threads = 0;
  std::uint64_t memory_cap = 0;
  bool quick = false;
  bool edges = false;
  bool fuss = false;
  bool dump_dual = false;
  int terms = 30;
};

void check_k(int k) {
  if (k < 1) usage_error("bad-k", "k must be at least 1, got " + std::to_string(k));
  if (k > dcm::max_k()) {
    throw CliError{kResource, "k-bound",
                   "k=" + std::to_string(k) + " exceeds the configured bound " + std::to_string(dcm::max_k()) +
                       " (set DCM_MAX_K to raise it)"};
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      usage_error("bad-range", "expected A..B, got '" + text + "'");
    }
    return v;
  };
  if (dots == std::string::npos) {
    const int k = number(text);
    return {k, k};
  }
  const std::string_view v(text);
  const int a = number(v.substr(0, dots));
  const int b = number(v.substr(dots + 2));
  if (a > b) usage_error("bad-range", "empty range '" + text + "'");
  return {a, b};
}

std::pair<int, int> range_of(const Config& c) {
  if (!c.k_range.empty()) return parse_range(c.k_range);
  if (c.k > 0) return {c.k, c.k};
  usage_error("missing-k", "give --k or --k-range");
}

dcm::Matching matching_of(const Config& c) {
  if (c.matching.empty()) usage_error("missing-matching", "--matching is required");
  dcm::Matching m;
  try {
    m = dcm::Matching::parse(c.matching);
  } catch (const dcm::MatchingError& e) {
    usage_error(std::string("matching-") + std::string(dcm::to_string(e.kind())), e.what());
  }
  if (m.size() != c.k) {
    usage_error("size-mismatch",
                "matching has " + std::to_string(m.size()) + " edges but --k is " + std::to_string(c.k));
  }
  return m;
}

void require_format(const Config& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  usage_error("bad-format", "format '" + c.format + "' not supported here (use " + list + ")");
}

dcm::BuildOptions build_options(const Config& c) { return {c.threads, c.memory_cap}; }

std::string big_to_string(const dcm::BigInt& v) { return v.str(); }

int cmd_enumerate(const Config& c, std::ostream& out) {
  check_k(c.k);
  require_format(c, {"text", "csv", "json"});
  const auto all = dcm::enumerate_matchings(c.k);
  if (c.format == "json") {
    ordered_json j;
    j["k"] = c.k;
    j["count"] = all.size();
    j["matchings"] = ordered_json::array();
    for (const auto& m : all) j["matchings"].push_back(m.to_string());
    out << j.dump() << '\n';
    return kOk;
  }
  if (c.format == "csv") out << "rank,matching\n";
  std::uint64_t r = 0;
  for (const auto& m : all) {
    if (c.format == "csv") out << r++ << ',';
    out << m.to_string() << '\n';
  }
  return kOk;
}

int cmd_neighbors(const Config& c, std::ostream& out) {
  check_k(c.k);
  require_format(c, {"text", "csv", "json"});
  const dcm::Matching m = matching_of(c);
  const auto nb = dcm::neighbors(m);
  if (c.format == "json") {
    ordered_json j;
    j["matching"] = m.to_string();
    j["degree"] = nb.size();
    j["neighbors"] = ordered_json::array();
    for (const auto& n : nb) j["neighbors"].push_back(n.to_string());
    if (c.dump_dual) j["dual_tree"] = ordered_json::parse(dcm::to_dual_tree(m).to_json());
    out << j.dump() << '\n';
    return kOk;
  }
  if (c.format == "csv") out << "neighbor\n";
  for (const auto& n : nb) out << n.to_string() << '\n';
  if (c.dump_dual) out << dcm::to_dual_tree(m).to_json() << '\n';
  return kOk;
}

int cmd_classify(const Config& c, std::ostream& out) {
  check_k(c.k);
  require_format(c, {"text", "csv", "json"});
  const dcm::Matching m = matching_of(c);
  const dcm::Classification cl = dcm::classify(m);
  const std::string label(dcm::to_string(cl.label));
  // I-matchings have no parameters beyond k, so they get no witness.
  const bool parametrised = cl.witness && cl.witness->variant != dcm::Variant::kI;
  const std::string witness = parametrised ? cl.witness->to_string() : "";
  if (c.format == "json") {
    ordered_json j;
    j["matching"] = m.to_string();
    j["label"] = label;
    j["witness"] = parametrised ? ordered_json(witness) : ordered_json(nullptr);
    if (c.dump_dual) j["dual_tree"] = ordered_json::parse(dcm::to_dual_tree(m).to_json());
    out << j.dump() << '\n';
    return kOk;
  }
  if (c.format == "csv") {
    out << "matching,label,witness\n\"" << m.to_string() << "\"," << label << ",\"" << witness << "\"\n";
  } else {
    out << label;
    if (!witness.empty()) out << ' ' << witness;
    out << '\n';
  }
  if (c.dump_dual) out << dcm::to_dual_tree(m).to_json() << '\n';
  return kOk;
}

int cmd_components(const Config& c, std::ostream& out) {
  check_k(c.k);
  require_format(c, {"text", "csv", "json"});
  const dcm::DcmGraph g = dcm::build_graph(c.k, build_options(c));
  const dcm::Census census = dcm::components(g, c.format == "json");
  if (c.format == "csv") {
    dcm::write_census_csv(census, out);
    return kOk;
  }
  if (c.format == "json") {
    ordered_json j;
    j["k"] = c.k;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["components"] = ordered_json::array();
    for (const auto& comp : census.components) {
      ordered_json p = ordered_json::object();
      for (const auto& [name, count] : comp.profile) p[name] = count;
      j["components"].push_back({{"id", comp.id},
                                 {"order", comp.order},
                                 {"edges", comp.edges},
                                 {"class", std::string(dcm::to_string(comp.cls))},
                                 {"bipartite", comp.bipartite},
                                 {"representative", comp.representative.to_string()},
                                 {"profile", p}});
    }
    out << j.dump() << '\n';
    return kOk;
  }
  // (class, order) -> count, in class order then by order
  std::map<std::pair<int, std::uint64_t>, std::uint64_t> totals;
  for (const auto& comp : census.components) ++totals[{static_cast<int>(comp.cls), comp.order}];
  out << "k=" << c.k << " vertices=" << g.vertex_count() << " edges=" << g.edge_count()
      << " components=" << census.components.size() << '\n';
  for (const auto& [key, count] : totals) {
    out << dcm::to_string(static_cast<dcm::ComponentClass>(key.first)) << " order=" << key.second
        << " count=" << count << '\n';
  }
  return kOk;
}

int cmd_graph(const Config& c, std::ostream& out) {
  check_k(c.k);
  Config local = c;
  if (local.format == "text") local.format = "dot";
  require_format(local, {"dot", "json"});
  const dcm::DcmGraph g = dcm::build_graph(c.k, build_options(c));
  if (local.format == "dot") {
    dcm::write_dot(g, out);
  } else {
    dcm::write_json(g, out);
  }
  return kOk;
}

int cmd_verify(const Config& c, std::ostream& out, bool to_file) {
  require_format(c, {"text", "json"});
  const auto [a, b] = range_of(c);
  check_k(a);
  check_k(b);
  dcm::SuiteOptions o;
  o.k_min = a;
  o.k_max = b;
  o.quick = c.quick;
  o.threads = c.threads;
  o.memory_cap_mb = c.memory_cap;
  if (to_file || c.format == "text") o.progress = [](const std::string& s) { std::cerr << "... " << s << '\n'; };
  const auto results = dcm::run_suite(o);
  if (c.format == "json") {
    out << dcm::suite_json(o, results) << '\n';
  } else {
    for (const auto& r : results) {
      out << r.id << ' ' << dcm::to_string(r.status) << ' ' << r.name;
      if (!r.detail.empty()) out << " | " << r.detail;
      out << '\n';
    }
    out << (dcm::all_passed(results) ? "all checks passed" : "verification FAILED") << '\n';
  }
  return dcm::all_passed(results) ? kOk : kVerifyFailed;
}

int cmd_series(const Config& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  if (c.edges && c.fuss) usage_error("bad-series", "choose one of --edges and --fuss");
  if (c.terms < 1 || c.terms > 2000) usage_error("bad-terms", "--terms must lie in 1..2000");
  const bool fuss = c.fuss;
  const dcm::SeriesTable t = fuss ? dcm::fuss_series(c.terms) : dcm::edge_series(c.terms);
  const char* column = fuss ? "g_k" : "d_k";
  if (c.format == "json") {
    ordered_json j;
    j["series"] = t.name;
    j["coefficients"] = ordered_json::array();
    for (int k = 1; k <= c.terms; ++k) j["coefficients"].push_back(big_to_string(t.coefficients[k]));
    out << j.dump() << '\n';
    return kOk;
  }
  out << "k," << column << '\n';
  for (int k = 1; k <= c.terms; ++k) out << k << ',' << t.coefficients[k] << '\n';
  return kOk;
}

int cmd_counts(const Config& c, std::ostream& out) {
  require_format(c, {"text", "csv", "json"});
  const auto [a, b] = range_of(c);
  check_k(a);
  check_k(b);
  struct Row {
    int k;
    std::uint64_t vertices, edges;
    std::uint64_t count[3] = {0, 0, 0};
    std::uint64_t order[3] = {0, 0, 0};
    std::vector<std::uint64_t> big_orders;  // below k=9 there can be more than one
    std::size_t iso = 0;
  };
  std::vector<Row> rows;
  for (int k = a; k <= b; ++k) {
    const dcm::DcmGraph g = dcm::build_graph(k, build_options(c));
    const dcm::Census census = dcm::components(g, false);
    Row r{k, g.vertex_count(), g.edge_count()};
    for (const auto& comp : census.components) {
      const int i = static_cast<int>(comp.cls);
      ++r.count[i];
      r.order[i] = comp.order;
      if (comp.cls == dcm::ComponentClass::kBig) r.big_orders.push_back(comp.order);
    }
    std::sort(r.big_orders.begin(), r.big_orders.end());
    r.iso = dcm::isomorphism_classes(g, census).count;
    rows.push_back(r);
  }
  if (c.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"k", r.k},
                   {"vertices", r.vertices},
                   {"edges", r.edges},
                   {"small", r.count[0]},
                   {"small_order", r.order[0]},
                   {"medium", r.count[1]},
                   {"medium_order", r.order[1]},
                   {"big", r.count[2]},
                   {"big_orders", r.big_orders},
                   {"iso_classes", r.iso}});
    }
    out << j.dump() << '\n';
    return kOk;
  }
  out << "k,vertices,edges,small,small_order,medium,medium_order,big,big_orders,iso_classes\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.vertices << ',' << r.edges;
    for (int i = 0; i < 2; ++i) out << ',' << r.count[i] << ',' << r.order[i];
    out << ',' << r.count[2] << ',';
    for (std::size_t i = 0; i < r.big_orders.size(); ++i) out << (i ? ";" : "") << r.big_orders[i];
    out << ',' << r.iso << '\n';
  }
  return kOk;
}

int report(const CliError& e) {
  std::cerr << "dcm: error: " << e.code << ": " << one_line(e.message) << '\n';
  return e.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjoint compatibility graphs of non-crossing perfect matchings"};
  app.require_subcommand(1);
  Config c;

  auto add_k = [&](CLI::App* s) { s->add_option("--k", c.k, "number of edges (points 1..2k)")->required(); };
  auto add_format = [&](CLI::App* s, const std::string& help) { s->add_option("--format", c.format, help); };
  auto add_build = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "worker threads (0 = all cores)");
    s->add_option("--memory-cap", c.memory_cap, "refuse builds needing more than this many MB");
  };
  for (CLI::App* a : {&app}) a->add_option("--out", c.out, "write output to this file instead of stdout");

  auto* enumerate = app.add_subcommand("enumerate", "list all matchings in canonical order");
  add_k(enumerate);
  add_format(enumerate, "text, csv or json");

  auto* neighbors = app.add_subcommand("neighbors", "disjoint compatible matchings of one matching");
  add_k(neighbors);
  neighbors->add_option("--matching", c.matching, "edges as a-b,c-d,...")->required();
  neighbors->add_flag("--dump-dual", c.dump_dual, "also print the dual tree as JSON");
  add_format(neighbors, "text, csv or json");

  auto* classify = app.add_subcommand("classify", "component type of a matching, with family parameters");
  add_k(classify);
  classify->add_option("--matching", c.matching, "edges as a-b,c-d,...")->required();
  classify->add_flag("--dump-dual", c.dump_dual, "also print the dual tree as JSON");
  add_format(classify, "text, csv or json");

  auto* comps = app.add_subcommand("components", "connected component census");
  add_k(comps);
  add_build(comps);
  add_format(comps, "text, csv or json");

  auto* graph = app.add_subcommand("graph", "export the whole graph");
  add_k(graph);
  add_build(graph);
  add_format(graph, "dot or json (text means dot)");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks over a range of k");
  verify->add_option("--k-range", c.k_range, "A..B");
  verify->add_option("--k", c.k, "single k");
  verify->add_flag("--quick", c.quick, "skip graph builds above k=8");
  add_build(verify);
  add_format(verify, "text or json");

  auto* series = app.add_subcommand("series", "coefficients of the edge-count generating function");
  series->add_flag("--edges", c.edges, "edge counts d_k (default)");
  series->add_flag("--fuss", c.fuss, "quaternary tree numbers g_k");
  series->add_option("--terms", c.terms, "last k to print (default 30)");
  add_format(series, "text, csv or json");

  auto* counts = app.add_subcommand("counts", "component counts per k, as in the published tables");
  counts->add_option("--k-range", c.k_range, "A..B");
  counts->add_option("--k", c.k, "single k");
  add_build(counts);
  add_format(counts, "text, csv or json");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report({kUsage, "usage", e.what()});
  }

  std::ofstream file;
  std::ostringstream buffer;
  const bool to_file = !c.out.empty();
  std::ostream& out = to_file ? static_cast<std::ostream&>(buffer) : std::cout;

  int rc = kOk;
  try {
    if (*enumerate) rc = cmd_enumerate(c, out);
    else if (*neighbors) rc = cmd_neighbors(c, out);
    else if (*classify) rc = cmd_classify(c, out);
    else if (*comps) rc = cmd_components(c, out);
    else if (*graph) rc = cmd_graph(c, out);
    else if (*verify) rc = cmd_verify(c, out, to_file);
    else if (*series) rc = cmd_series(c, out);
    else if (*counts) rc = cmd_counts(c, out);
  } catch (const CliError& e) {
    return report(e);
  } catch (const dcm::ResourceError& e) {
    return report({kResource, "resource", e.what()});
  } catch (const std::bad_alloc&) {
    return report({kResource, "out-of-memory", "allocation failed"});
  } catch (const std::invalid_argument& e) {
    return report({kUsage, "invalid-argument", e.what()});
  } catch (const std::domain_error& e) {
    return report({kUsage, "domain", e.what()});
  } catch (const std::exception& e) {
    return report({kUsage, "internal", e.what()});
  }

  if (to_file) {
    file.open(c.out, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      return report({kUsage, "io", "cannot write " + c.out});
    }
  }
  return rc;
}
