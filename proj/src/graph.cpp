#include "dcm/graph.hpp"

#include <algorithm>
#include <bitset>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>
#include <thread>

#include "dcm/compat.hpp"
#include "dcm/families.hpp"
#include "dcm/formulas.hpp"

namespace dcm {

int max_k() {
  if (const char* env = std::getenv("DCM_MAX_K")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) return static_cast<int>(v);
  }
  return 12;
}

std::uint32_t DcmGraph::index_of(const Matching& m) const {
  if (m.size() != k) throw std::invalid_argument("index_of: matching has size " + std::to_string(m.size()));
  return static_cast<std::uint32_t>(rank(m));
}

std::uint64_t estimated_graph_bytes(int k) {
  const auto vertices = catalan(k).convert_to<std::uint64_t>();
  const auto edges = edge_series(k).coefficients[static_cast<std::size_t>(k)].convert_to<std::uint64_t>();
  const std::uint64_t per_vertex = sizeof(Matching) + 8ull * static_cast<std::uint64_t>(k) + 16;
  // Adjacency is held twice while shards are merged.
  return vertices * per_vertex + 2 * (2 * edges * sizeof(std::uint32_t));
}

DcmGraph build_graph(int k, const BuildOptions& options) {
  if (k < 1) throw std::invalid_argument("build_graph: k must be >= 1");
  if (k > max_k()) {
    throw ResourceError("k=" + std::to_string(k) + " exceeds the configured bound " + std::to_string(max_k()) +
                        " (set DCM_MAX_K to raise it)");
  }
  if (options.memory_cap_mb > 0) {
    const std::uint64_t need = estimated_graph_bytes(k);
    const std::uint64_t cap = options.memory_cap_mb << 20;
    if (need > cap) {
      throw ResourceError("k=" + std::to_string(k) + " needs about " + std::to_string((need >> 20) + 1) +
                          " MB, above the cap of " + std::to_string(options.memory_cap_mb) + " MB");
    }
  }

  DcmGraph g;
  g.k = k;
  g.vertices = enumerate_matchings(k);
  const std::size_t n = g.vertices.size();

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 64)));
  threads = std::max(1u, threads);

  struct Shard {
    std::size_t begin = 0, end = 0;
    std::vector<std::uint32_t> degree;
    std::vector<std::uint32_t> adjacency;
  };
  std::vector<Shard> shards(threads);
  for (unsigned t = 0; t < threads; ++t) {
    shards[t].begin = n * t / threads;
    shards[t].end = n * (t + 1) / threads;
  }
  auto work = [&g](Shard& s) {
    std::vector<std::uint32_t> row;
    for (std::size_t v = s.begin; v < s.end; ++v) {
      row.clear();
      for_each_neighbor(g.vertices[v], [&](const std::vector<Label>& mate) {
        row.push_back(static_cast<std::uint32_t>(rank_partners(mate)));
      });
      std::sort(row.begin(), row.end());
      s.degree.push_back(static_cast<std::uint32_t>(row.size()));
      s.adjacency.insert(s.adjacency.end(), row.begin(), row.end());
    }
  };
  if (threads == 1) {
    work(shards[0]);
  } else {
    std::vector<std::thread> pool;
    for (auto& s : shards) pool.emplace_back(work, std::ref(s));
    for (auto& t : pool) t.join();
  }

  g.offsets.assign(n + 1, 0);
  std::size_t v = 0;
  std::uint64_t total = 0;
  for (const auto& s : shards) total += s.adjacency.size();
  g.adjacency.reserve(total);
  for (auto& s : shards) {
    for (std::uint32_t d : s.degree) {
      g.offsets[v + 1] = g.offsets[v] + d;
      ++v;
    }
    g.adjacency.insert(g.adjacency.end(), s.adjacency.begin(), s.adjacency.end());
    std::vector<std::uint32_t>().swap(s.adjacency);
  }
  return g;
}

std::string_view to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::kSmall: return "small";
    case ComponentClass::kMedium: return "medium";
    case ComponentClass::kBig: return "big";
  }
  return "?";
}

namespace {

std::uint32_t local_index(const std::vector<std::uint32_t>& members, std::uint32_t v) {
  return static_cast<std::uint32_t>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
}

}  // namespace

BipartiteResult is_bipartite(const DcmGraph& g, const ComponentReport& c) {
  const auto& members = c.members;
  const std::size_t n = members.size();
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> depth(n, kNone), parent(n, kNone);
  std::queue<std::uint32_t> queue;
  depth[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop();
    for (std::uint32_t w_global : g.neighbors(members[u])) {
      const std::uint32_t w = local_index(members, w_global);
      if (depth[w] == kNone) {
        depth[w] = depth[u] + 1;
        parent[w] = u;
        queue.push(w);
      } else if (depth[w] % 2 == depth[u] % 2) {
        // Climb both tree paths to the lowest common ancestor.
        std::vector<std::uint32_t> left{u}, right{w};
        std::uint32_t a = u, b = w;
        while (depth[a] > depth[b]) left.push_back(a = parent[a]);
        while (depth[b] > depth[a]) right.push_back(b = parent[b]);
        while (a != b) {
          left.push_back(a = parent[a]);
          right.push_back(b = parent[b]);
        }
        right.pop_back();
        BipartiteResult r;
        r.bipartite = false;
        for (std::uint32_t x : left) r.odd_cycle.push_back(members[x]);
        std::reverse(r.odd_cycle.begin(), r.odd_cycle.end());
        for (std::uint32_t x : right) r.odd_cycle.push_back(members[x]);
        // Now lca .. u, w .. (child of lca); rotate so it reads as a cycle
        // starting at the smallest vertex.
        std::rotate(r.odd_cycle.begin(), std::min_element(r.odd_cycle.begin(), r.odd_cycle.end()),
                    r.odd_cycle.end());
        return r;
      }
    }
  }
  BipartiteResult r;
  r.side.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.side[i] = static_cast<std::uint8_t>(depth[i] % 2);
  return r;
}

Census components(const DcmGraph& g, bool with_profile) {
  Census census;
  census.k = g.k;
  const std::uint32_t n = g.vertex_count();
  constexpr std::uint32_t kNone = UINT32_MAX;
  census.component_of.assign(n, kNone);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (census.component_of[s] != kNone) continue;
    ComponentReport c;
    c.id = static_cast<std::uint32_t>(census.components.size());
    std::vector<std::uint32_t> stack{s};
    census.component_of[s] = c.id;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      c.members.push_back(u);
      c.edges += g.degree(u);
      for (std::uint32_t w : g.neighbors(u)) {
        if (census.component_of[w] == kNone) {
          census.component_of[w] = c.id;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.edges /= 2;
    c.order = c.members.size();
    c.representative = g.vertices[s];
    census.components.push_back(std::move(c));
  }

  std::vector<std::uint64_t> orders;
  for (const auto& c : census.components) orders.push_back(c.order);
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  std::shared_ptr<const FamilyIndex> index;
  if (with_profile) index = FamilyIndex::get(g.k);
  for (auto& c : census.components) {
    c.cls = c.order == orders[0]                        ? ComponentClass::kSmall
            : orders.size() > 1 && c.order == orders[1] ? ComponentClass::kMedium
                                                        : ComponentClass::kBig;
    c.bipartite = is_bipartite(g, c).bipartite;
    if (with_profile) {
      for (std::uint32_t v : c.members) ++c.profile[std::string(to_string(classify(g.vertices[v], *index).label))];
    }
  }
  return census;
}

AdjacencyList induced_subgraph(const DcmGraph& g, const std::vector<std::uint32_t>& members) {
  AdjacencyList adj(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::uint32_t w : g.neighbors(members[i])) {
      const auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it != members.end() && *it == w) adj[i].push_back(static_cast<std::uint32_t>(it - members.begin()));
    }
  }
  return adj;
}

namespace {

using Colouring = std::vector<std::uint32_t>;
using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Colour refinement to the coarsest equitable partition. New colours are
// ranks of (old colour, sorted neighbour colours), so the result does not
// depend on vertex names.
std::size_t refine(const AdjacencyList& adj, Colouring& colour) {
  const std::size_t n = adj.size();
  std::size_t cells = std::set<std::uint32_t>(colour.begin(), colour.end()).size();
  std::vector<std::vector<std::uint32_t>> sig(n);
  std::vector<std::uint32_t> order(n);
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].clear();
      sig[v].push_back(colour[v]);
      for (std::uint32_t w : adj[v]) sig[v].push_back(colour[w]);
      std::sort(sig[v].begin() + 1, sig[v].end());
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return sig[a] < sig[b]; });
    Colouring next(n);
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++c;
      next[order[i]] = c;
    }
    const std::size_t now = n ? c + 1 : 0;
    colour = std::move(next);
    if (now == cells) return cells;
    cells = now;
  }
}

struct CanonSearch {
  const AdjacencyList& adj;
  EdgeList best;
  bool have = false;

  void run(Colouring colour) {
    const std::size_t n = adj.size();
    const std::size_t cells = refine(adj, colour);
    if (cells == n) {
      EdgeList form;
      for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t w : adj[v]) {
          if (colour[v] < colour[w]) form.emplace_back(colour[v], colour[w]);
        }
      }
      std::sort(form.begin(), form.end());
      if (!have || form < best) {
        best = std::move(form);
        have = true;
      }
      return;
    }
    // First non-singleton cell.
    std::vector<std::uint32_t> size(cells, 0);
    for (std::uint32_t c : colour) ++size[c];
    std::uint32_t target = 0;
    while (size[target] < 2) ++target;
    std::vector<std::uint32_t> tried;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (colour[v] != target) continue;
      // Swapping twins is an automorphism that fixes the colouring, so one
      // representative per twin class is enough.
      const bool twin = std::any_of(tried.begin(), tried.end(), [&](std::uint32_t u) { return are_twins(u, v); });
      if (twin) continue;
      tried.push_back(v);
      Colouring next(n);
      for (std::size_t x = 0; x < n; ++x) next[x] = 2 * colour[x] + 1;
      next[v] = 2 * colour[v];
      run(std::move(next));
    }
  }

  bool are_twins(std::uint32_t u, std::uint32_t v) const {
    // Open neighbourhoods equal (non-adjacent twins) or closed ones equal.
    if (adj[u] == adj[v]) return true;
    if (adj[u].size() != adj[v].size()) return false;
    std::vector<std::uint32_t> a = adj[u], b = adj[v];
    a.insert(std::lower_bound(a.begin(), a.end(), u), u);
    b.insert(std::lower_bound(b.begin(), b.end(), v), v);
    return a == b;
  }
};

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> canonical_form(const AdjacencyList& adj) {
  CanonSearch search{adj, {}, false};
  search.run(Colouring(adj.size(), 0));
  return search.best;
}

IsoClasses isomorphism_classes(const DcmGraph& g, const Census& census) {
  std::map<std::uint64_t, std::size_t> per_order;
  for (const auto& c : census.components) ++per_order[c.order];
  std::map<std::pair<std::uint64_t, EdgeList>, std::uint32_t> ids;
  IsoClasses out;
  for (const auto& c : census.components) {
    EdgeList form;
    // A component alone in its order group needs no certificate.
    if (per_order[c.order] > 1) form = canonical_form(induced_subgraph(g, c.members));
    const auto [it, fresh] = ids.try_emplace({c.order, std::move(form)}, static_cast<std::uint32_t>(ids.size()));
    out.class_of.push_back(it->second);
  }
  out.count = ids.size();
  return out;
}

DegreeStats degree_stats(const DcmGraph& g) {
  DegreeStats s;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t d = g.degree(v);
    if (d > s.max_degree) {
      s.max_degree = d;
      s.argmax.clear();
    }
    if (d == s.max_degree) s.argmax.push_back(v);
  }
  return s;
}

AdjacencyList medium_even_template(int k) {
  if (k < 4 || k % 2) throw std::invalid_argument("medium_even_template: k must be even and >= 4");
  const std::uint32_t n = static_cast<std::uint32_t>(k - 2);
  AdjacencyList adj(3 * n);
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  // Positions are 1-based in the description, 0-based here.
  for (std::uint32_t p = 1; p < n; ++p) link(p - 1, p);
  for (std::uint32_t a = 2; a <= n; a += 2) {
    for (std::uint32_t b = a + 3; b <= n; b += 2) link(a - 1, b - 1);
  }
  for (std::uint32_t p = 0; p < n; ++p) {
    link(p, n + 2 * p);
    link(p, n + 2 * p + 1);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

StructureReport verify_medium_even_structure(const DcmGraph& g, const Census& census) {
  StructureReport report;
  const int k = g.k;
  if (k < 4 || k % 2) throw std::invalid_argument("verify_medium_even_structure: k must be even and >= 4");
  const int l = k / 2;
  const std::uint32_t n = static_cast<std::uint32_t>(k - 2);
  const auto shape = canonical_form(medium_even_template(k));
  const auto index = FamilyIndex::get(k);
  auto fail = [&](const ComponentReport& c, const std::string& why) {
    report.ok = false;
    report.failure = "component " + std::to_string(c.id) + " (" + c.representative.to_string() + "): " + why;
    return report;
  };

  for (const auto& c : census.components) {
    if (c.cls != ComponentClass::kMedium) continue;
    ++report.components_checked;
    if (c.order != 3ull * n) return fail(c, "order " + std::to_string(c.order) + ", expected " + std::to_string(3 * n));

    std::vector<std::uint32_t> path, leaves;
    for (std::uint32_t v : c.members) (g.degree(v) == 1 ? leaves : path).push_back(v);
    if (path.size() != n || leaves.size() != 2ull * n) return fail(c, "wrong number of leaves");
    for (std::uint32_t v : leaves) {
      if (classify(g.vertices[v], *index).label != ClassLabel::kMediumEDBL) return fail(c, "leaf is not EDBL");
    }

    // Place every non-leaf on the path: EDB(t,chi,z) at 2t-1 and
    // EDB(l-t,chi',z') at 2t, with (chi,z) read off the first one.
    const auto first = classify(g.vertices[path[0]], *index);
    if (first.label != ClassLabel::kMediumEDB) return fail(c, "non-leaf is not EDB");
    const auto& w = *first.witness;
    const auto [chi2, z2] = edb_partner(k, w.chi, w.z);
    std::map<std::uint32_t, std::uint32_t> position;
    for (int t = 1; t <= l - 1; ++t) {
      position[g.index_of(make_edb(k, t, w.chi, w.z))] = static_cast<std::uint32_t>(2 * t - 1);
      position[g.index_of(make_edb(k, l - t, chi2, z2))] = static_cast<std::uint32_t>(2 * t);
    }
    std::vector<std::uint32_t> at(n + 1, UINT32_MAX);
    for (std::uint32_t v : path) {
      const auto it = position.find(v);
      if (it == position.end()) return fail(c, g.vertices[v].to_string() + " is not on the EDB path");
      at[it->second] = v;
    }
    for (std::uint32_t p = 1; p <= n; ++p) {
      if (at[p] == UINT32_MAX) return fail(c, "path position " + std::to_string(p) + " is empty");
    }

    for (std::uint32_t a = 1; a <= n; ++a) {
      std::size_t leaf_count = 0;
      for (std::uint32_t x : g.neighbors(at[a])) leaf_count += g.degree(x) == 1;
      if (leaf_count != 2) return fail(c, "path vertex without exactly two leaves");
      for (std::uint32_t b = a + 1; b <= n; ++b) {
        const auto nb = g.neighbors(at[a]);
        const bool edge = std::binary_search(nb.begin(), nb.end(), at[b]);
        const std::uint32_t even = a % 2 == 0 ? a : b;
        const std::uint32_t odd = a % 2 == 0 ? b : a;
        const bool expected = b == a + 1 || ((a + b) % 2 == 1 && even + 3 <= odd);
        if (edge != expected) {
          return fail(c, "positions " + std::to_string(a) + " and " + std::to_string(b) +
                             (edge ? " are adjacent" : " are not adjacent"));
        }
      }
    }
    if (canonical_form(induced_subgraph(g, c.members)) != shape) return fail(c, "not isomorphic to the template");
  }
  return report;
}

namespace {

using Mask = std::bitset<128>;

int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  return (b - 1) * (b - 2) / 2 + (a - 1);
}

}  // namespace

AlmostPerfectReport build_almost_perfect_graph(int k) {
  if (k < 1) throw std::invalid_argument("build_almost_perfect_graph: k must be >= 1");
  if (k > 7) throw ResourceError("almost-perfect graph is limited to k <= 7");
  const int n = 2 * k + 1;

  std::vector<Mask> crossing(static_cast<std::size_t>(pair_index(n - 1, n) + 1));
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = 1; c <= n; ++c) {
        for (int d = c + 1; d <= n; ++d) {
          if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) {
            crossing[static_cast<std::size_t>(pair_index(a, b))].set(static_cast<std::size_t>(pair_index(c, d)));
          }
        }
      }
    }
  }

  struct Vertex {
    int free_point;
    Mask edges;
    Mask crossed;
  };
  std::vector<Vertex> vertices;
  const auto base = enumerate_matchings(k);
  for (int u = 1; u <= n; ++u) {
    // Points after u, in cyclic order, take the labels 1..2k.
    auto actual = [&](int label) { return (u - 1 + label) % n + 1; };
    for (const auto& m : base) {
      Vertex v{u, {}, {}};
      for (const Edge& e : m.edges()) {
        const auto idx = static_cast<std::size_t>(pair_index(actual(e.a), actual(e.b)));
        v.edges.set(idx);
        v.crossed |= crossing[idx];
      }
      vertices.push_back(v);
    }
  }

  const std::size_t count = vertices.size();
  std::vector<std::uint32_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  AlmostPerfectReport r;
  r.k = k;
  r.vertices = count;
  auto adjacent = [&](std::size_t i, std::size_t j) {
    return (vertices[i].edges & vertices[j].edges).none() && (vertices[i].crossed & vertices[j].edges).none();
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (!adjacent(i, j)) continue;
      ++r.edges;
      parent[find(static_cast<std::uint32_t>(i))] = find(static_cast<std::uint32_t>(j));
    }
  }
  for (std::size_t i = 0; i < count; ++i) r.components += find(static_cast<std::uint32_t>(i)) == i;
  r.connected = r.components == 1;

  // Ring R_j leaves j free and matches j+1 j+2, j+3 j+4, ...
  std::vector<std::size_t> ring_ids;
  for (int j = 1; j <= n; ++j) {
    Mask want;
    for (int t = 0; t < k; ++t) want.set(static_cast<std::size_t>(pair_index((j + 2 * t) % n + 1, (j + 2 * t + 1) % n + 1)));
    for (std::size_t i = 0; i < count; ++i) {
      if (vertices[i].free_point == j && vertices[i].edges == want) ring_ids.push_back(i);
    }
  }
  bool cycle = ring_ids.size() == static_cast<std::size_t>(n);
  for (std::size_t a = 0; cycle && a < ring_ids.size(); ++a) {
    for (std::size_t b = 0; b < ring_ids.size(); ++b) {
      if (a == b) continue;
      const std::size_t gap = (b + ring_ids.size() - a) % ring_ids.size();
      const bool neighbouring = gap == 1 || gap == ring_ids.size() - 1;
      if (adjacent(ring_ids[a], ring_ids[b]) != neighbouring) cycle = false;
    }
  }
  r.rings_form_cycle = cycle;
  return r;
}

void write_dot(const DcmGraph& g, std::ostream& out) {
  out << "graph DCM_" << g.k << " {\n";
  for (const auto& m : g.vertices) out << "  \"" << m.to_string() << "\";\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t w : g.neighbors(v)) {
      if (v < w) out << "  \"" << g.vertices[v].to_string() << "\" -- \"" << g.vertices[w].to_string() << "\";\n";
    }
  }
  out << "}\n";
}

void write_json(const DcmGraph& g, std::ostream& out) {
  out << "{\"k\":" << g.k << ",\"vertices\":[";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) out << (i ? "," : "") << '"' << g.vertices[i].to_string() << '"';
  out << "],\"edges\":[";
  bool first = true;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t w : g.neighbors(v)) {
      if (v >= w) continue;
      out << (first ? "" : ",") << '[' << v << ',' << w << ']';
      first = false;
    }
  }
  out << "]}\n";
}

void write_census_csv(const Census& census, std::ostream& out, bool header) {
  if (header) out << "k,component_id,order,class,bipartite\n";
  for (const auto& c : census.components) {
    out << census.k << ',' << c.id << ',' << c.order << ',' << to_string(c.cls) << ','
        << (c.bipartite ? "true" : "false") << '\n';
  }
}

}  // namespace dcm
