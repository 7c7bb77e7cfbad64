#include "dcm/dual_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace dcm {

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw MatchingError(MatchingError::Kind::kMalformed, "malformed embedding: " + why);
}

void check_tree(const std::vector<std::vector<int>>& rotation) {
  const int n = static_cast<int>(rotation.size());
  if (n == 0) malformed("no vertices");
  std::size_t degree_sum = 0;
  for (int v = 0; v < n; ++v) {
    const auto& rot = rotation[static_cast<std::size_t>(v)];
    degree_sum += rot.size();
    for (int u : rot) {
      if (u < 0 || u >= n) malformed("neighbour " + std::to_string(u) + " out of range");
      if (u == v) malformed("loop at vertex " + std::to_string(v));
      if (std::count(rot.begin(), rot.end(), u) != 1) {
        malformed("repeated neighbour in the rotation of " + std::to_string(v));
      }
      const auto& back = rotation[static_cast<std::size_t>(u)];
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        malformed("rotations of " + std::to_string(u) + " and " + std::to_string(v) +
                  " disagree");
      }
    }
  }
  if (degree_sum != 2 * static_cast<std::size_t>(n - 1)) malformed("edge count is not |V|-1");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : rotation[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != n) malformed("not connected");
}

int successor(const std::vector<int>& rot, int u) {
  const auto it = std::find(rot.begin(), rot.end(), u);
  if (it == rot.end()) malformed("missing neighbour in rotation");
  const auto next = std::next(it);
  return next == rot.end() ? rot.front() : *next;
}

int wrap(int x, int n) { return ((x - 1) % n + n) % n + 1; }

}  // namespace

EmbeddedTree::EmbeddedTree(std::vector<std::vector<int>> rotation, std::vector<Dart> darts)
    : rotation_(std::move(rotation)), darts_(std::move(darts)) {
  check_tree(rotation_);
  const int n = static_cast<int>(darts_.size());
  if (n != 2 * edge_count()) malformed("expected two sides per edge");
  std::map<std::pair<int, int>, int> used;
  for (int l = 1; l <= n; ++l) {
    const Dart& d = darts_[static_cast<std::size_t>(l - 1)];
    if (d.tail < 0 || d.tail >= vertex_count() || d.head < 0 || d.head >= vertex_count()) {
      malformed("side " + std::to_string(l) + " has an endpoint out of range");
    }
    const auto& rot = rotation_[static_cast<std::size_t>(d.tail)];
    if (std::find(rot.begin(), rot.end(), d.head) == rot.end()) {
      malformed("side " + std::to_string(l) + " is not on a tree edge");
    }
    if (!used.emplace(std::make_pair(d.tail, d.head), l).second) {
      malformed("edge side labelled twice");
    }
  }
  for (int l = 1; l <= n; ++l) {
    const Dart& d = darts_[static_cast<std::size_t>(l - 1)];
    const Dart& next = darts_[static_cast<std::size_t>(l % n)];
    const Dart expected{d.head, successor(rotation_[static_cast<std::size_t>(d.head)], d.tail)};
    if (next != expected) {
      malformed("label " + std::to_string(l % n + 1) + " is out of traversal order");
    }
  }
  normalise();
}

EmbeddedTree EmbeddedTree::from_rotation(std::vector<std::vector<int>> rotation, int marked_tail,
                                         int marked_head) {
  check_tree(rotation);
  const int edges = static_cast<int>(rotation.size()) - 1;
  std::vector<Dart> darts;
  if (edges > 0) {
    if (marked_tail < 0 || marked_tail >= static_cast<int>(rotation.size())) {
      malformed("marked side out of range");
    }
    const auto& rot = rotation[static_cast<std::size_t>(marked_tail)];
    if (std::find(rot.begin(), rot.end(), marked_head) == rot.end()) {
      malformed("marked side is not on a tree edge");
    }
    Dart cur{marked_tail, marked_head};
    for (int l = 0; l < 2 * edges; ++l) {
      darts.push_back(cur);
      cur = Dart{cur.head, successor(rotation[static_cast<std::size_t>(cur.head)], cur.tail)};
    }
  }
  return EmbeddedTree(std::move(rotation), std::move(darts));
}

void EmbeddedTree::normalise() {
  const int nv = vertex_count();
  const int n = static_cast<int>(darts_.size());
  if (n == 0) return;
  std::vector<int> min_in(static_cast<std::size_t>(nv), n + 1);
  std::vector<int> first_out(static_cast<std::size_t>(nv), -1);
  for (int l = n; l >= 1; --l) {
    const Dart& d = darts_[static_cast<std::size_t>(l - 1)];
    min_in[static_cast<std::size_t>(d.head)] = l;
    first_out[static_cast<std::size_t>(d.tail)] = d.head;
  }
  std::vector<int> order(static_cast<std::size_t>(nv));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return min_in[static_cast<std::size_t>(x)] < min_in[static_cast<std::size_t>(y)]; });
  std::vector<int> id(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) id[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<std::vector<int>> rot(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    auto list = rotation_[static_cast<std::size_t>(v)];
    const auto start = std::find(list.begin(), list.end(), first_out[static_cast<std::size_t>(v)]);
    std::rotate(list.begin(), start, list.end());
    for (int& u : list) u = id[static_cast<std::size_t>(u)];
    rot[static_cast<std::size_t>(id[static_cast<std::size_t>(v)])] = std::move(list);
  }
  for (Dart& d : darts_) d = Dart{id[static_cast<std::size_t>(d.tail)], id[static_cast<std::size_t>(d.head)]};
  rotation_ = std::move(rot);
}

std::vector<int> EmbeddedTree::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v) {
    if (degree(v) == 1) out.push_back(v);
  }
  return out;
}

std::string EmbeddedTree::to_json() const {
  std::ostringstream os;
  os << "{\"vertices\":" << vertex_count() << ",\"rotation\":[";
  for (int v = 0; v < vertex_count(); ++v) {
    if (v) os << ',';
    os << '[';
    const auto& rot = rotation(v);
    for (std::size_t i = 0; i < rot.size(); ++i) os << (i ? "," : "") << rot[i];
    os << ']';
  }
  os << "],\"sides\":[";
  for (std::size_t l = 0; l < darts_.size(); ++l) {
    if (l) os << ',';
    os << "{\"label\":" << l + 1 << ",\"tail\":" << darts_[l].tail << ",\"head\":" << darts_[l].head
       << '}';
  }
  os << "]}";
  return os.str();
}

EmbeddedTree to_dual_tree(const Matching& m) {
  const int n = m.points();
  if (n == 0) return EmbeddedTree({{}}, {});
  // Arc a runs from P_a to P_{a+1}; following the chord at P_{a+1} lands on
  // arc mate(a+1), so faces are the orbits of that map.
  auto next_arc = [&](int a) { return m.partners()[static_cast<std::size_t>(a % n)]; };
  std::vector<int> face(static_cast<std::size_t>(n + 1), -1);
  std::vector<std::vector<int>> rotation;
  for (int a = 1; a <= n; ++a) {
    if (face[static_cast<std::size_t>(a)] != -1) continue;
    const int f = static_cast<int>(rotation.size());
    rotation.emplace_back();
    int x = a;
    do {
      face[static_cast<std::size_t>(x)] = f;
      x = next_arc(x);
    } while (x != a);
  }
  face[0] = face[static_cast<std::size_t>(n)];
  for (int a = 1; a <= n; ++a) {
    if (!rotation[static_cast<std::size_t>(face[static_cast<std::size_t>(a)])].empty()) continue;
    auto& rot = rotation[static_cast<std::size_t>(face[static_cast<std::size_t>(a)])];
    int x = a;
    do {
      rot.push_back(face[static_cast<std::size_t>(x % n + 1)]);
      x = next_arc(x);
    } while (x != a);
  }
  std::vector<Dart> darts;
  darts.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    darts.push_back({face[static_cast<std::size_t>(l - 1)], face[static_cast<std::size_t>(l)]});
  }
  return EmbeddedTree(std::move(rotation), std::move(darts));
}

Matching from_dual_tree(const EmbeddedTree& t) {
  const auto& darts = t.darts();
  std::map<std::pair<int, int>, int> label;
  for (std::size_t l = 0; l < darts.size(); ++l) {
    label[{darts[l].tail, darts[l].head}] = static_cast<int>(l + 1);
  }
  std::vector<Label> mate;
  mate.reserve(darts.size());
  for (const Dart& d : darts) mate.push_back(label.at({d.head, d.tail}));
  return Matching::from_partners(std::move(mate));
}

EmbeddedTree remark(const EmbeddedTree& t, int s) {
  const int n = static_cast<int>(t.darts().size());
  if (n == 0) return t;
  if (s < 1 || s > n) throw std::out_of_range("remark: side label out of range");
  std::vector<Dart> darts(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    darts[static_cast<std::size_t>(wrap(l - s + 1, n) - 1)] = t.dart(l);
  }
  return EmbeddedTree(t.rotations(), std::move(darts));
}

namespace {

EmbeddedTree attach(const EmbeddedTree& t, int gap, bool branch) {
  const int n = static_cast<int>(t.darts().size());
  if (gap < 0 || gap > n) throw std::out_of_range("attach: gap out of range");
  auto rotation = t.rotations();
  const int x = t.vertex_count();
  const int y = x + 1;
  int f = 0;
  std::vector<int> inserted = branch ? std::vector<int>{x} : std::vector<int>{x, y};
  auto& rot_f = rotation[0];
  if (n > 0) {
    const Dart& after = t.dart(gap % n + 1);
    f = after.tail;
    auto& rot = rotation[static_cast<std::size_t>(f)];
    rot.insert(std::find(rot.begin(), rot.end(), after.head), inserted.begin(), inserted.end());
  } else {
    rot_f.insert(rot_f.end(), inserted.begin(), inserted.end());
  }
  std::vector<Dart> darts;
  darts.reserve(static_cast<std::size_t>(n + 4));
  for (int l = 1; l <= gap; ++l) darts.push_back(t.dart(l));
  if (branch) {
    rotation.push_back({f, y});
    rotation.push_back({x});
    darts.insert(darts.end(), {Dart{f, x}, Dart{x, y}, Dart{y, x}, Dart{x, f}});
  } else {
    rotation.push_back({f});
    rotation.push_back({f});
    darts.insert(darts.end(), {Dart{f, x}, Dart{x, f}, Dart{f, y}, Dart{y, f}});
  }
  for (int l = gap + 1; l <= n; ++l) darts.push_back(t.dart(l));
  return EmbeddedTree(std::move(rotation), std::move(darts));
}

}  // namespace

EmbeddedTree attach_branch(const EmbeddedTree& t, int gap) { return attach(t, gap, true); }
EmbeddedTree attach_v_shape(const EmbeddedTree& t, int gap) { return attach(t, gap, false); }

std::vector<std::vector<int>> find_branches(const EmbeddedTree& t, int n) {
  if (n < 1) throw std::invalid_argument("find_branches: branch length must be positive");
  std::vector<std::vector<int>> out;
  for (int leaf : t.leaves()) {
    std::vector<int> path{leaf};
    int prev = -1;
    int cur = leaf;
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      if (i > 1 && t.degree(cur) != 2) {
        ok = false;
        break;
      }
      const auto& rot = t.rotation(cur);
      const int next = rot[0] != prev ? rot[0] : rot[1];
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    if (ok) out.push_back(std::move(path));
  }
  return out;
}

std::vector<VShape> find_v_shapes(const EmbeddedTree& t) {
  std::vector<VShape> out;
  for (int c = 0; c < t.vertex_count(); ++c) {
    const auto& rot = t.rotation(c);
    if (rot.size() < 2) continue;
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const int a = rot[i];
      const int b = rot[(i + 1) % rot.size()];
      if (t.degree(a) == 1 && t.degree(b) == 1) out.push_back({a, c, b});
    }
  }
  return out;
}

std::vector<bool> canonical_code(const EmbeddedTree& t) {
  const Matching m = from_dual_tree(t);
  const int n = m.points();
  std::vector<bool> best;
  for (int s = 1; s <= n; ++s) {
    std::vector<bool> code(static_cast<std::size_t>(n));
    for (int l = 1; l <= n; ++l) {
      const int r = m.partners()[static_cast<std::size_t>(l - 1)];
      const int pl = (l - s + n) % n;
      const int pr = (r - s + n) % n;
      code[static_cast<std::size_t>(pl)] = pl < pr;
    }
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

namespace {

std::vector<SeparatedPair> scan_pairs(const Matching& m, bool blocks) {
  std::vector<SeparatedPair> out;
  const int n = m.points();
  if (m.size() < 2) return out;
  auto mate = [&](int p) { return m.partners()[static_cast<std::size_t>(p - 1)]; };
  auto edge = [](int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; };
  for (int i = 1; i <= n; ++i) {
    const int p0 = i;
    const int p1 = wrap(i + 1, n);
    const int p2 = wrap(i + 2, n);
    const int p3 = wrap(i + 3, n);
    if (blocks && mate(p0) == p3 && mate(p1) == p2) {
      out.push_back({i, edge(p0, p3), edge(p1, p2)});
    } else if (!blocks && mate(p0) == p1 && mate(p2) == p3) {
      out.push_back({i, edge(p0, p1), edge(p2, p3)});
    }
  }
  return out;
}

}  // namespace

std::vector<SeparatedPair> find_blocks(const Matching& m) { return scan_pairs(m, true); }
std::vector<SeparatedPair> find_antiblocks(const Matching& m) { return scan_pairs(m, false); }

bool rotationally_equivalent(const Matching& a, const Matching& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rotationally_equivalent: size mismatch");
  return canonical_code(to_dual_tree(a)) == canonical_code(to_dual_tree(b));
}

bool rotationally_equivalent_by_scan(const Matching& a, const Matching& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rotationally_equivalent: size mismatch");
  for (int s = 0; s < std::max(1, a.points()); ++s) {
    if (rotate(a, s) == b) return true;
  }
  return false;
}

}  // namespace dcm
