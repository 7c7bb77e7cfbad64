#include "dcm/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "dcm/compat.hpp"
#include "dcm/dual_tree.hpp"
#include "dcm/families.hpp"
#include "dcm/formulas.hpp"
#include "dcm/graph.hpp"

namespace dcm {

namespace {

// Known census values, indexed by k.
const std::map<int, std::uint64_t> kIsolated{{1, 1}, {3, 3}, {5, 15}, {7, 91}, {9, 612}, {11, 4389}};
const std::map<int, std::uint64_t> kStars{{3, 1}, {5, 5}, {7, 14}, {9, 36}, {11, 88}};
const std::map<int, std::uint64_t> kPairs{{2, 1}, {4, 4}, {6, 12}, {8, 32}, {10, 80}, {12, 192}};
const std::map<int, std::uint64_t> kMediumEven{{4, 1}, {6, 6}, {8, 16}, {10, 40}, {12, 96}};
const std::map<int, std::size_t> kIsoClasses{{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 3},
                                             {7, 4}, {8, 4}, {9, 3}, {10, 3}, {11, 3}, {12, 3}};

constexpr double kGrowthLow = 4.97;
constexpr double kGrowthHigh = 5.57;
constexpr double kSeriesSeconds = 1.0;

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ran_ = true;
    if (!ok && ok_) first_failure_ = what;
    ok_ = ok_ && ok;
  }
  void note(const std::string& s) { notes_.push_back(s); }

  CheckResult result(int id, std::string name) const {
    CheckResult r{id, std::move(name), CheckStatus::kSkip, ""};
    if (!ran_) {
      r.detail = "nothing to check in this range";
      return r;
    }
    r.status = ok_ ? CheckStatus::kPass : CheckStatus::kFail;
    std::string d = ok_ ? "" : "first failure: " + first_failure_;
    for (const auto& n : notes_) d += (d.empty() ? "" : "; ") + n;
    r.detail = d;
    return r;
  }

 private:
  bool ran_ = false;
  bool ok_ = true;
  std::string first_failure_;
  std::vector<std::string> notes_;
};

std::string ks(int k) { return "k=" + std::to_string(k); }

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

bool two_disjoint_separated_pairs(const Matching& m) {
  std::vector<SeparatedPair> pairs = find_blocks(m);
  const auto anti = find_antiblocks(m);
  pairs.insert(pairs.end(), anti.begin(), anti.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const std::set<Edge> edges{pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second};
      if (edges.size() == 4) return true;
    }
  }
  return false;
}

std::vector<PositionSequence> all_chis(int n) {
  std::vector<PositionSequence> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    PositionSequence c;
    for (int i = n - 1; i >= 0; --i) c.push_back((mask >> i) & 1u ? Sign::kPlus : Sign::kMinus);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkip: return "skip";
  }
  return "?";
}

std::vector<CheckResult> run_suite(const SuiteOptions& o) {
  auto say = [&](const std::string& s) {
    if (o.progress) o.progress(s);
  };
  auto in_range = [&](int k) { return k >= o.k_min && k <= o.k_max; };
  const int graph_hi = std::min(o.quick ? std::min(o.k_max, o.quick_cap) : o.k_max, 12);

  Tally vertices, table_odd, table_even, iso, max_degree, edges, bipartite, medium_even;
  std::vector<std::size_t> iso_seq;
  std::vector<std::string> edge_seq;
  Tally oracle, props, family_counts, growth, almost;

  const auto d = edge_series(std::max(12, graph_hi)).coefficients;

  for (int k = std::max(1, o.k_min); k <= graph_hi; ++k) {
    say("building DCM_" + std::to_string(k));
    const DcmGraph g = build_graph(k, {o.threads, o.memory_cap_mb});
    const Census census = components(g, true);
    const long l = (k + 1) / 2;

    vertices.check(g.vertex_count() == catalan(k), ks(k) + " has " + std::to_string(g.vertex_count()) + " vertices");

    std::map<std::uint64_t, std::uint64_t> by_order;
    std::uint64_t small_count = 0, medium_count = 0, medium_order = 0, big_order = 0, big_count = 0;
    for (const auto& c : census.components) {
      ++by_order[c.order];
      if (c.cls == ComponentClass::kSmall) ++small_count;
      if (c.cls == ComponentClass::kMedium) {
        ++medium_count;
        medium_order = c.order;
      }
      if (c.cls == ComponentClass::kBig) {
        ++big_count;
        big_order = c.order;
      }
    }

    if (k % 2 == 1) {
      const std::uint64_t expected_small = kIsolated.at(k);
      table_odd.check(by_order[1] == expected_small && small_count == expected_small &&
                          count_I(l) == expected_small,
                      ks(k) + " isolated count " + std::to_string(by_order[1]));
      std::vector<Matching> isolated;
      for (const auto& c : census.components) {
        if (c.order == 1) isolated.push_back(c.representative);
      }
      std::sort(isolated.begin(), isolated.end());
      table_odd.check(isolated == generate_family(Variant::kI, k), ks(k) + " isolated set differs from the I-family");
      if (k >= 3) {
        table_odd.check(medium_count == kStars.at(k) && medium_order == static_cast<std::uint64_t>(l),
                        ks(k) + " stars " + std::to_string(medium_count) + " of order " + std::to_string(medium_order));
        if (k >= 5) table_odd.check(count_DBD(l) == medium_count, ks(k) + " star count against the closed form");
        for (const auto& c : census.components) {
          if (c.cls != ComponentClass::kMedium) continue;
          std::uint32_t centre_degree = 0;
          for (std::uint32_t v : c.members) centre_degree = std::max(centre_degree, g.degree(v));
          const bool star = c.edges == c.order - 1 && centre_degree == c.order - 1;
          const bool profile = k == 3 ? c.profile.at("Medium-DBD") == 2
                                      : c.profile.count("Medium-DBD") && c.profile.at("Medium-DBD") == 1 &&
                                            c.profile.count("Medium-DBDL") &&
                                            c.profile.at("Medium-DBDL") == static_cast<std::uint64_t>(l - 1);
          table_odd.check(star && profile, ks(k) + " medium component " + std::to_string(c.id) + " is not a DBD star");
        }
      }
      if (k >= 9) {
        table_odd.check(big_count == 1 && big_order == big_component_order(k) && big_order > medium_order,
                        ks(k) + " big order " + std::to_string(big_order));
      }
      table_odd.note(ks(k) + ": " + std::to_string(small_count) + " isolated" +
                     (k >= 3 ? ", " + std::to_string(medium_count) + " stars of order " + std::to_string(medium_order) : ""));
    } else {
      const long le = k / 2;
      table_even.check(by_order[2] == kPairs.at(k) && small_count == kPairs.at(k) && count_pairs(le) == kPairs.at(k),
                       ks(k) + " pair count " + std::to_string(by_order[2]));
      for (const auto& c : census.components) {
        if (c.cls == ComponentClass::kSmall) {
          table_even.check(c.order == 2 && c.profile.count("Pair-DB") && c.profile.at("Pair-DB") == 2,
                           ks(k) + " pair component " + std::to_string(c.id) + " is not two DB-matchings");
        }
      }
      if (k >= 4) {
        table_even.check(medium_count == kMediumEven.at(k) && medium_order == medium_even_order(le),
                         ks(k) + " medium " + std::to_string(medium_count) + " of order " + std::to_string(medium_order));
        if (k >= 6) table_even.check(count_EDB_components(le) == medium_count, ks(k) + " medium count vs closed form");
      }
      if (k >= 10) {
        table_even.check(big_count == 1 && big_order == big_component_order(k) && big_order > medium_order,
                         ks(k) + " big order " + std::to_string(big_order));
      }
      table_even.note(ks(k) + ": " + std::to_string(small_count) + " pairs" +
                      (k >= 4 ? ", " + std::to_string(medium_count) + " medium of order " + std::to_string(medium_order) : ""));
    }

    const auto classes = isomorphism_classes(g, census);
    iso.check(classes.count == kIsoClasses.at(k), ks(k) + " has " + std::to_string(classes.count) + " classes");
    iso_seq.push_back(classes.count);

    if (k >= 2) {
      const auto stats = degree_stats(g);
      const auto [ra, rb] = rings(k);
      std::vector<std::uint32_t> ring_ids{g.index_of(ra), g.index_of(rb)};
      std::sort(ring_ids.begin(), ring_ids.end());
      max_degree.check(stats.max_degree == riordan(k) && stats.argmax == ring_ids,
                       ks(k) + " max degree " + std::to_string(stats.max_degree));

      edges.check(g.edge_count() == d[static_cast<std::size_t>(k)], ks(k) + " has " + std::to_string(g.edge_count()) + " edges");
      edge_seq.push_back(std::to_string(g.edge_count()));

      const auto& ring = census.components[census.component_of[ring_ids[0]]];
      const auto bip = is_bipartite(g, ring);
      if (k <= 7) {
        bipartite.check(bip.bipartite, ks(k) + " ring component is not bipartite");
      } else {
        bool witness = !bip.bipartite && bip.odd_cycle.size() % 2 == 1 &&
                       std::set<std::uint32_t>(bip.odd_cycle.begin(), bip.odd_cycle.end()).size() == bip.odd_cycle.size();
        for (std::size_t i = 0; witness && i < bip.odd_cycle.size(); ++i) {
          witness = are_disjoint_compatible(g.vertices[bip.odd_cycle[i]],
                                            g.vertices[bip.odd_cycle[(i + 1) % bip.odd_cycle.size()]]);
        }
        bipartite.check(witness, ks(k) + " ring component lacks a valid odd cycle");
        if (witness) bipartite.note(ks(k) + " odd cycle of length " + std::to_string(bip.odd_cycle.size()));
      }
    }

    if (k >= 4 && k % 2 == 0) {
      const auto report = verify_medium_even_structure(g, census);
      medium_even.check(report.ok && report.components_checked == kMediumEven.at(k),
                        ks(k) + " " + (report.ok ? "checked " + std::to_string(report.components_checked) : report.failure));
    }

    // Degree lower bounds, on the graph just built.
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      const Matching& m = g.vertices[v];
      if (k % 2 == 0) props.check(g.degree(v) >= 1, ks(k) + " even-size matching " + m.to_string() + " is isolated");
      if (k >= 2) {
        const std::size_t blocks = find_blocks(m).size();
        // At k = 3 the two rings are blockless with degree 1, so the
        // two-neighbour bound is only checked from k = 4 on.
        if (blocks == 0 && k != 3) {
          props.check(g.degree(v) >= 2, ks(k) + " blockless " + m.to_string() + " has degree < 2");
        }
        if (blocks == 1) props.check(g.degree(v) >= 1, ks(k) + " one-block " + m.to_string() + " is isolated");
      }
    }
  }
  if (in_range(3) && graph_hi >= 3) props.note("k=3 rings are blockless with degree 1; two-neighbour bound applied for k != 3");
  if (!iso_seq.empty()) iso.note("classes " + join(iso_seq));
  if (!edge_seq.empty()) {
    std::string s;
    for (const auto& e : edge_seq) s += (s.empty() ? "" : ",") + e;
    edges.note("edges " + s);
  }

  for (int k = std::max(1, o.k_min); k <= std::min(o.k_max, 8); ++k) {
    say("neighbour oracle, k=" + std::to_string(k));
    std::size_t checked = 0;
    for (const auto& m : enumerate_matchings(k)) {
      oracle.check(neighbors(m) == neighbors_bruteforce(m), ks(k) + " " + m.to_string());
      ++checked;
    }
    oracle.note(ks(k) + ": " + std::to_string(checked) + " matchings");
  }

  say("property suite");
  for (int k = std::max(4, o.k_min); k <= std::min(o.k_max, 8); ++k) {
    for (const auto& m : enumerate_matchings(k)) {
      props.check(two_disjoint_separated_pairs(m), ks(k) + " " + m.to_string() + " lacks two disjoint separated pairs");
    }
  }
  // Block insertion keeps the degree; hosts of size r produce size r+2.
  for (int r = 1; r <= 6; ++r) {
    if (!in_range(r + 2) && !in_range(r)) continue;
    if (o.quick && r + 2 > o.quick_cap) continue;
    for (const auto& m : enumerate_matchings(r)) {
      const auto before = degree(m);
      for (int gap = 0; gap <= 2 * r; ++gap) {
        props.check(degree(insert(m, block_matching(), gap)) == before, "block insertion into " + m.to_string());
      }
    }
  }
  for (int k = std::max(2, o.k_min); k <= std::min(o.k_max, 7); ++k) {
    for (const auto& m : enumerate_matchings(k)) {
      const auto blocks = find_blocks(m);
      if (blocks.empty()) continue;
      for (const auto& other : neighbors(m)) {
        const auto anti = find_antiblocks(other);
        for (const auto& b : blocks) {
          props.check(std::any_of(anti.begin(), anti.end(), [&](const SeparatedPair& a) { return a.start == b.start; }),
                      ks(k) + " neighbour of " + m.to_string() + " misses an antiblock");
        }
      }
    }
  }
  for (int k = std::max(1, o.k_min); k <= std::min(o.k_max, 9); ++k) {
    if (k % 2 == 0) continue;
    for (const auto& m : generate_family(Variant::kI, k)) {
      props.check(find_antiblocks(m).empty(), ks(k) + " I-matching " + m.to_string() + " has an antiblock");
    }
  }
  for (int k : {8, 10, 12}) {
    if (!in_range(k) || (o.quick && k > o.quick_cap)) continue;
    const int l = k / 2;
    std::size_t sampled = 0;
    for (const auto& chi : all_chis(l - 3)) {
      for (int z = 1; z <= 2 * k; ++z) {
        const auto [chi2, z2] = edb_partner(k, chi, z);
        for (int j = 1; j <= l - 1; ++j) {
          std::set<Matching> expected{make_edbl1(k, j, chi, z), make_edbl2(k, j, chi, z)};
          for (int i = l - j; i <= l - 1; ++i) expected.insert(make_edb(k, i, chi2, z2));
          const auto nb = neighbors(make_edb(k, j, chi, z));
          props.check(nb.size() == static_cast<std::size_t>(j + 2) && std::set<Matching>(nb.begin(), nb.end()) == expected,
                      ks(k) + " EDB(" + std::to_string(j) + "," + to_string(chi) + "," + std::to_string(z) + ")");
          ++sampled;
        }
      }
    }
    props.note(ks(k) + ": " + std::to_string(sampled) + " EDB neighbourhoods");
  }

  say("family counts");
  for (int k = std::max(1, o.k_min); k <= std::min(o.k_max, 12); ++k) {
    const long l = (k + 1) / 2;
    if (k % 2 == 1) {
      family_counts.check(generate_family(Variant::kI, k).size() == count_I(l), ks(k) + " I count");
      family_counts.check(generate_family(Variant::kL, k).size() == count_L_odd(l), ks(k) + " L count");
      if (k >= 5) family_counts.check(generate_family(Variant::kDBD, k).size() == count_DBD(l), ks(k) + " DBD count");
    } else {
      family_counts.check(generate_family(Variant::kL, k).size() == count_L_even(k / 2), ks(k) + " L count");
      family_counts.check(generate_family(Variant::kDB, k).size() == count_DB(k / 2), ks(k) + " DB count");
    }
  }

  {
    say("growth probe");
    const auto start = std::chrono::steady_clock::now();
    const auto series = edge_series(30);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto r = growth_estimate(30);
    growth.check(seconds < kSeriesSeconds, "series took " + std::to_string(seconds) + " s");
    growth.check(r.value >= kGrowthLow && r.value <= kGrowthHigh, "d_30/d_29 = " + std::to_string(r.value));
    growth.check(series.coefficients[2] == 1 && series.coefficients[3] == 1 && series.coefficients[4] == 9 &&
                     series.coefficients[5] == 21,
                 "low-order coefficients");
    growth.note("d_30/d_29 = " + std::to_string(r.value));
  }

  for (int k = std::max(1, o.k_min); k <= std::min(o.k_max, 6); ++k) {
    say("almost-perfect graph, k=" + std::to_string(k));
    const auto r = build_almost_perfect_graph(k);
    almost.check(r.connected, ks(k) + " almost-perfect graph has " + std::to_string(r.components) + " components");
    almost.check(r.rings_form_cycle, ks(k) + " rings do not form a cycle");
    almost.note(ks(k) + ": " + std::to_string(r.vertices) + " vertices");
  }

  return {
      vertices.result(1, "vertex counts equal Catalan numbers"),
      table_odd.result(2, "odd-k census: isolated and star counts"),
      table_even.result(3, "even-k census: pair and medium counts"),
      iso.result(4, "isomorphism classes of components"),
      max_degree.result(5, "maximum degree is the Riordan number, attained by the rings"),
      edges.result(6, "edge counts match the series coefficients"),
      bipartite.result(7, "ring component bipartiteness"),
      medium_even.result(8, "medium components for even k follow the path+chords+leaves template"),
      oracle.result(9, "fast neighbours equal the brute-force oracle"),
      props.result(10, "structural property suite"),
      family_counts.result(11, "family counts match the closed forms"),
      growth.result(12, "growth probe d_30/d_29"),
      almost.result(13, "almost-perfect graph connectivity and ring cycle"),
  };
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::kFail; });
}

std::string suite_json(const SuiteOptions& o, const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  j["k_range"] = {o.k_min, o.k_max};
  j["quick"] = o.quick;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    j["checks"].push_back({{"id", r.id}, {"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
  }
  j["passed"] = all_passed(results);
  return j.dump();
}

}  // namespace dcm
