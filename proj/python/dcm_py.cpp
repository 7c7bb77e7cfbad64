#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcm/compat.hpp"
#include "dcm/families.hpp"
#include "dcm/formulas.hpp"
#include "dcm/graph.hpp"
#include "dcm/matching.hpp"
#include "dcm/verify.hpp"

namespace py = pybind11;

namespace {

// Python ints have arbitrary precision, so go through the decimal string.
py::int_ to_py(const dcm::BigInt& v) { return py::int_(py::str(v.str())); }

py::list to_py(const std::vector<dcm::BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

std::vector<std::pair<int, int>> edge_pairs(const dcm::Matching& m) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : m.edges()) out.emplace_back(e.a, e.b);
  return out;
}

dcm::Matching from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<dcm::Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b)});
  return dcm::Matching::from_edges(edges);
}

py::dict component_dict(const dcm::ComponentReport& c) {
  py::dict d;
  d["id"] = c.id;
  d["order"] = c.order;
  d["edges"] = c.edges;
  d["class"] = std::string(dcm::to_string(c.cls));
  d["bipartite"] = c.bipartite;
  d["representative"] = c.representative.to_string();
  d["profile"] = c.profile;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Disjoint compatibility graphs of non-crossing perfect matchings";

  py::register_exception<dcm::ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<dcm::MatchingError>(m, "MatchingError", PyExc_ValueError);

  py::class_<dcm::Matching>(m, "Matching")
      .def(py::init(&from_pairs), py::arg("edges"))
      .def_static("parse", [](const std::string& s) { return dcm::Matching::parse(s); })
      .def_static("from_partners", &dcm::Matching::from_partners)
      .def_property_readonly("k", &dcm::Matching::size)
      .def_property_readonly("partners", &dcm::Matching::partners)
      .def("edges", &edge_pairs)
      .def("partner", &dcm::Matching::partner)
      .def("is_ring", [](const dcm::Matching& x) { return dcm::is_ring(x); })
      .def("__str__", &dcm::Matching::to_string)
      .def("__repr__", [](const dcm::Matching& x) { return "Matching('" + x.to_string() + "')"; })
      .def("__hash__", [](const dcm::Matching& x) { return std::hash<dcm::Matching>{}(x); })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self);

  m.def("enumerate_matchings", &dcm::enumerate_matchings, py::arg("k"));
  m.def("rank", &dcm::rank);
  m.def("unrank", &dcm::unrank, py::arg("k"), py::arg("r"));
  m.def("rotate", &dcm::rotate, py::arg("m"), py::arg("s"));
  m.def("reflect", &dcm::reflect);

  m.def("are_disjoint_compatible", &dcm::are_disjoint_compatible);
  m.def("degree", &dcm::degree);
  m.def("neighbors", &dcm::neighbors);
  m.def("neighbors_bruteforce", &dcm::neighbors_bruteforce);

  m.def("is_I", &dcm::is_I);
  m.def("is_L", &dcm::is_L);
  m.def("rings", &dcm::rings);
  m.def("classify", [](const dcm::Matching& x) {
    const auto c = dcm::classify(x);
    py::object witness = py::none();
    if (c.witness) witness = py::str(c.witness->to_string());
    return py::make_tuple(std::string(dcm::to_string(c.label)), witness);
  });

  m.def("catalan", [](long n) { return to_py(dcm::catalan(n)); });
  m.def("riordan", [](long k) { return to_py(dcm::riordan(k)); });
  m.def("edge_series", [](long n) { return to_py(dcm::edge_series(n).coefficients); }, py::arg("n"));
  m.def("fuss_series", [](long n) { return to_py(dcm::fuss_series(n).coefficients); }, py::arg("n"));
  m.def("big_component_order", [](long k) { return to_py(dcm::big_component_order(k)); });
  m.def("max_k", &dcm::max_k);

  py::class_<dcm::DcmGraph>(m, "Graph")
      .def_readonly("k", &dcm::DcmGraph::k)
      .def_property_readonly("vertex_count", &dcm::DcmGraph::vertex_count)
      .def_property_readonly("edge_count", &dcm::DcmGraph::edge_count)
      .def("vertex", [](const dcm::DcmGraph& g, std::uint32_t v) { return g.vertices.at(v); })
      .def("index_of", &dcm::DcmGraph::index_of)
      .def("degree", &dcm::DcmGraph::degree)
      .def("neighbors", [](const dcm::DcmGraph& g, std::uint32_t v) {
        if (v >= g.vertex_count()) throw py::index_error("vertex out of range");
        const auto s = g.neighbors(v);
        return std::vector<std::uint32_t>(s.begin(), s.end());
      })
      .def("components", [](const dcm::DcmGraph& g) {
        py::list out;
        for (const auto& c : dcm::components(g, true).components) out.append(component_dict(c));
        return out;
      })
      .def("isomorphism_class_count", [](const dcm::DcmGraph& g) {
        return dcm::isomorphism_classes(g, dcm::components(g, false)).count;
      });

  m.def(
      "build_graph",
      [](int k, unsigned threads, std::uint64_t memory_cap_mb) {
        py::gil_scoped_release release;
        return dcm::build_graph(k, {threads, memory_cap_mb});
      },
      py::arg("k"), py::arg("threads") = 0, py::arg("memory_cap_mb") = 0);

  m.def(
      "run_suite",
      [](int k_min, int k_max, bool quick) {
        dcm::SuiteOptions o;
        o.k_min = k_min;
        o.k_max = k_max;
        o.quick = quick;
        std::vector<dcm::CheckResult> results;
        {
          py::gil_scoped_release release;
          results = dcm::run_suite(o);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["status"] = std::string(dcm::to_string(r.status));
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("k_min") = 1, py::arg("k_max") = 8, py::arg("quick") = false);
}
