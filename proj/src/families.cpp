#include "dcm/families.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "dcm/compat.hpp"
#include "dcm/dual_tree.hpp"

namespace dcm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// A strip drawing built token by token from left to right. A D-edge has one
// end on each row, a boundary edge both ends on one row.
class Strip {
 public:
  int d() {
    upper_.push_back(count_);
    lower_.push_back(count_);
    return count_++;
  }

  int b(Sign side) {
    auto& row = side == Sign::kPlus ? upper_ : lower_;
    row.push_back(count_);
    row.push_back(count_);
    return count_++;
  }

  int upper_points() const { return static_cast<int>(upper_.size()); }

  // Upper row gets z, z+1, ... left to right; the lower row continues right
  // to left.
  std::vector<std::vector<Label>> ends(int z) const {
    const int n = 2 * count_;
    auto wrap = [n](long long x) { return static_cast<Label>(((x - 1) % n + n) % n + 1); };
    std::vector<std::vector<Label>> out(static_cast<std::size_t>(count_));
    long long next = z;
    for (int t : upper_) out[static_cast<std::size_t>(t)].push_back(wrap(next++));
    for (auto it = lower_.rbegin(); it != lower_.rend(); ++it) out[static_cast<std::size_t>(*it)].push_back(wrap(next++));
    return out;
  }

  Matching build(int z) const {
    std::vector<Label> partners(static_cast<std::size_t>(2 * count_));
    for (const auto& e : ends(z)) {
      partners[static_cast<std::size_t>(e[0] - 1)] = e[1];
      partners[static_cast<std::size_t>(e[1] - 1)] = e[0];
    }
    return Matching::from_partners(std::move(partners));
  }

  // Flips the partition whose parts are given as token groups.
  Matching flip_parts(int z, const std::vector<std::vector<int>>& groups) const {
    const auto e = ends(z);
    FlippablePartition p;
    for (const auto& g : groups) {
      FlippableSet s;
      for (int t : g) s.support.insert(s.support.end(), e[static_cast<std::size_t>(t)].begin(), e[static_cast<std::size_t>(t)].end());
      std::sort(s.support.begin(), s.support.end());
      p.parts.push_back(std::move(s));
    }
    std::sort(p.parts.begin(), p.parts.end());
    return flip(build(z), p);
  }

 private:
  int count_ = 0;
  std::vector<int> upper_;
  std::vector<int> lower_;
};

// Sides of n consecutive B-edges: first up, last down, the middle from chi.
// A single element is drawn up.
std::vector<Sign> element_sides(int n, const PositionSequence& chi) {
  if (n == 1) return {Sign::kPlus};
  std::vector<Sign> s{Sign::kPlus};
  s.insert(s.end(), chi.begin(), chi.end());
  s.push_back(Sign::kMinus);
  return s;
}

Sign opposite(Sign s) { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }

struct DbStrip {
  Strip strip;
  std::vector<int> d, b;  // 0-based element index
};

void check_z(int k, int z) {
  require(z >= 1 && z <= 2 * k, "z must lie in 1.." + std::to_string(2 * k));
}

void check_chi(const PositionSequence& chi, int expected, const char* family) {
  require(static_cast<int>(chi.size()) == expected, std::string(family) + ": chi must have length " +
                                                        std::to_string(expected));
}

DbStrip db_strip(int k, const PositionSequence& chi, int z) {
  require(k >= 2 && k % 2 == 0, "DB: k must be even and >= 2");
  const int l = k / 2;
  check_chi(chi, std::max(l - 2, 0), "DB");
  check_z(k, z);
  DbStrip s;
  for (Sign side : element_sides(l, chi)) {
    s.d.push_back(s.strip.d());
    s.b.push_back(s.strip.b(side));
  }
  return s;
}

DbStrip dbd_strip(int k, const PositionSequence& chi, int z) {
  require(k >= 3 && k % 2 == 1, "DBD: k must be odd and >= 3");
  const int l = (k + 1) / 2;
  check_chi(chi, std::max(l - 3, 0), "DBD");
  check_z(k, z);
  DbStrip s;
  for (Sign side : element_sides(l - 1, chi)) {
    s.d.push_back(s.strip.d());
    s.b.push_back(s.strip.b(side));
  }
  s.d.push_back(s.strip.d());
  return s;
}

struct EdbStrip {
  Strip strip;
  std::vector<int> d, b;
  int e = 0, e2 = 0;
};

EdbStrip edb_strip(int k, int j, const PositionSequence& chi, int z) {
  require(k >= 4 && k % 2 == 0, "EDB: k must be even and >= 4");
  const int l = k / 2;
  check_chi(chi, std::max(l - 3, 0), "EDB");
  require(j >= 1 && j <= l - 1, "EDB: j must lie in 1.." + std::to_string(l - 1));
  check_z(k, z);
  EdbStrip s;
  const auto sides = element_sides(l - 1, chi);
  for (int i = 0; i < l - 1; ++i) {
    s.d.push_back(s.strip.d());
    if (i == j - 1) {
      s.e = s.strip.b(sides[static_cast<std::size_t>(i)]);
      s.b.push_back(s.strip.b(sides[static_cast<std::size_t>(i)]));
      s.e2 = s.strip.b(opposite(sides[static_cast<std::size_t>(i)]));
    } else {
      s.b.push_back(s.strip.b(sides[static_cast<std::size_t>(i)]));
    }
  }
  return s;
}

int wrap_label(long long x, int k) {
  const int n = 2 * k;
  return static_cast<int>(((x - 1) % n + n) % n + 1);
}

std::vector<PositionSequence> all_chis(int n) {
  std::vector<PositionSequence> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    PositionSequence chi;
    for (int i = n - 1; i >= 0; --i) chi.push_back((mask >> i) & 1u ? Sign::kPlus : Sign::kMinus);
    out.push_back(std::move(chi));
  }
  return out;
}

// Rotates so that the block starting at `start` covers labels 1..4, then
// strips it.
Matching strip_block(const Matching& m, Label start) {
  return remove(rotate(m, 1 - static_cast<long long>(start)), 0, 2).first;
}

Matching strip_all_blocks(Matching m, int floor_size) {
  while (m.size() > floor_size) {
    const auto blocks = find_blocks(m);
    if (blocks.empty()) break;
    m = strip_block(m, blocks.front().start);
  }
  return m;
}

std::set<Matching> rotation_closure(const std::set<Matching>& in) {
  std::set<Matching> out;
  for (const auto& m : in) {
    for (int s = 0; s < m.points(); ++s) out.insert(rotate(m, s));
  }
  return out;
}

// Grows a rotation-closed seed by block insertion up to size k.
std::vector<Matching> grow_by_blocks(std::set<Matching> level, int k) {
  int size = level.empty() ? k : level.begin()->size();
  while (size < k) {
    std::set<Matching> next;
    for (const auto& m : level) {
      for (int gap = 0; gap <= 2 * size; ++gap) next.insert(insert(m, block_matching(), gap));
    }
    level = rotation_closure(next);
    size += 2;
  }
  return {level.begin(), level.end()};
}

template <typename Visit>
void sweep(Variant v, int k, Visit&& visit) {
  const int l = (k + 1) / 2;
  switch (v) {
    case Variant::kDB:
      for (const auto& chi : all_chis(std::max(l - 2, 0))) {
        for (int z = 1; z <= 2 * k; ++z) visit(FamilySpec{v, k, 0, chi, z});
      }
      break;
    case Variant::kDBD:
      for (const auto& chi : all_chis(std::max(l - 3, 0))) {
        for (int z = 1; z <= 2 * k; ++z) visit(FamilySpec{v, k, 0, chi, z});
      }
      break;
    case Variant::kDBDL:
    case Variant::kEDB:
    case Variant::kEDBL1:
    case Variant::kEDBL2:
      for (int j = 1; j <= l - 1; ++j) {
        for (const auto& chi : all_chis(std::max(l - 3, 0))) {
          for (int z = 1; z <= 2 * k; ++z) visit(FamilySpec{v, k, j, chi, z});
        }
      }
      break;
    default:
      break;
  }
}

bool parity_fits(Variant v, int k) {
  switch (v) {
    case Variant::kRing: return k >= 2;
    case Variant::kI: return k >= 1 && k % 2 == 1;
    case Variant::kL: return k >= 1;
    case Variant::kDB: return k >= 2 && k % 2 == 0;
    case Variant::kDBD:
    case Variant::kDBDL: return k >= 3 && k % 2 == 1;
    default: return k >= 4 && k % 2 == 0;
  }
}

}  // namespace

PositionSequence parse_chi(std::string_view text) {
  PositionSequence out;
  for (char c : text) {
    if (c == '+') {
      out.push_back(Sign::kPlus);
    } else if (c == '-') {
      out.push_back(Sign::kMinus);
    } else {
      throw std::invalid_argument("position sequence may only contain '+' and '-'");
    }
  }
  return out;
}

std::string to_string(const PositionSequence& chi) {
  std::string s;
  for (Sign x : chi) s += x == Sign::kPlus ? '+' : '-';
  return s;
}

PositionSequence chi_conjugate(const PositionSequence& chi) {
  PositionSequence out(chi.rbegin(), chi.rend());
  for (Sign& x : out) x = opposite(x);
  return out;
}

int delta(const PositionSequence& chi) {
  int d = 0;
  for (Sign x : chi) d += static_cast<int>(x);
  return d;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kRing: return "Ring";
    case Variant::kI: return "I";
    case Variant::kL: return "L";
    case Variant::kDB: return "DB";
    case Variant::kDBD: return "DBD";
    case Variant::kDBDL: return "DBDL";
    case Variant::kEDB: return "EDB";
    case Variant::kEDBL1: return "EDBL1";
    case Variant::kEDBL2: return "EDBL2";
  }
  return "?";
}

std::string FamilySpec::to_string() const {
  std::string s(dcm::to_string(variant));
  s += "(" + std::to_string(k);
  if (variant == Variant::kDB || variant == Variant::kDBD || variant == Variant::kDBDL ||
      variant == Variant::kEDB || variant == Variant::kEDBL1 || variant == Variant::kEDBL2) {
    if (j > 0) s += "," + std::to_string(j);
    s += "," + (chi.empty() ? std::string("e") : dcm::to_string(chi)) + "," + std::to_string(z);
  }
  return s + ")";
}

Matching make_db(int k, const PositionSequence& chi, int z) { return db_strip(k, chi, z).strip.build(z); }

std::pair<PositionSequence, int> db_partner(int k, const PositionSequence& chi, int z) {
  const DbStrip s = db_strip(k, chi, z);
  // For k = 2 both z and z+3 name the partner; pairing odd with even z
  // keeps the map an involution.
  if (k == 2) return {chi, z % 2 == 1 ? z + 1 : z - 1};
  return {chi_conjugate(chi), wrap_label(z + s.strip.upper_points(), k)};
}

Matching make_dbd(int k, const PositionSequence& chi, int z) { return dbd_strip(k, chi, z).strip.build(z); }

Matching make_dbdl(int k, int j, const PositionSequence& chi, int z) {
  const DbStrip s = dbd_strip(k, chi, z);
  const int n = static_cast<int>(s.b.size());
  require(j >= 1 && j <= n, "DBDL: j must lie in 1.." + std::to_string(n));
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (i < j - 1) {
      groups.push_back({s.d[u], s.b[u]});
    } else if (i == j - 1) {
      groups.push_back({s.d[u], s.b[u], s.d[u + 1]});
    } else {
      groups.push_back({s.b[u], s.d[u + 1]});
    }
  }
  return s.strip.flip_parts(z, groups);
}

Matching make_edb(int k, int j, const PositionSequence& chi, int z) {
  return edb_strip(k, j, chi, z).strip.build(z);
}

std::pair<PositionSequence, int> edb_partner(int k, const PositionSequence& chi, int z) {
  const EdbStrip s = edb_strip(k, 1, chi, z);
  return {chi_conjugate(chi), wrap_label(z + s.strip.upper_points(), k)};
}

namespace {

Matching edbl(int k, int j, const PositionSequence& chi, int z, bool first) {
  const EdbStrip s = edb_strip(k, j, chi, z);
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < s.b.size(); ++i) {
    if (static_cast<int>(i) == j - 1) {
      groups.push_back({s.b[i], first ? s.e : s.e2});
      groups.push_back({s.d[i], first ? s.e2 : s.e});
    } else {
      groups.push_back({s.d[i], s.b[i]});
    }
  }
  return s.strip.flip_parts(z, groups);
}

}  // namespace

Matching make_edbl1(int k, int j, const PositionSequence& chi, int z) { return edbl(k, j, chi, z, true); }
Matching make_edbl2(int k, int j, const PositionSequence& chi, int z) { return edbl(k, j, chi, z, false); }

Matching make_family(const FamilySpec& f) {
  switch (f.variant) {
    case Variant::kDB: return make_db(f.k, f.chi, f.z);
    case Variant::kDBD: return make_dbd(f.k, f.chi, f.z);
    case Variant::kDBDL: return make_dbdl(f.k, f.j, f.chi, f.z);
    case Variant::kEDB: return make_edb(f.k, f.j, f.chi, f.z);
    case Variant::kEDBL1: return make_edbl1(f.k, f.j, f.chi, f.z);
    case Variant::kEDBL2: return make_edbl2(f.k, f.j, f.chi, f.z);
    default: throw std::invalid_argument("make_family: variant has no parameters");
  }
}

std::pair<Matching, Matching> rings(int k) {
  require(k >= 2, "rings: k must be >= 2");
  std::vector<Label> p(static_cast<std::size_t>(2 * k));
  for (int i = 1; i <= 2 * k; ++i) p[static_cast<std::size_t>(i - 1)] = i % 2 ? i + 1 : i - 1;
  const Matching a = Matching::from_partners(p);
  return {a, rotate(a, 1)};
}

bool is_I(const Matching& m) {
  if (m.size() % 2 == 0) return false;
  return strip_all_blocks(m, 1).size() == 1;
}

bool is_L(const Matching& m) {
  if (m.size() < 2) return false;
  const Matching rest = strip_all_blocks(m, 3);
  return rest.size() <= 3 && is_ring(rest);
}

std::vector<std::pair<Edge, EdgeColour>> i_coloring(const Matching& m) {
  require(is_I(m), "i_coloring: not an I-matching");
  std::vector<std::pair<Edge, EdgeColour>> out;
  for (const Edge& e : m.edges()) {
    const int inside = (e.b - e.a - 1) / 2;
    out.emplace_back(e, inside % 2 == 0 ? EdgeColour::kRed : EdgeColour::kBlack);
  }
  return out;
}

std::vector<Matching> generate_family(Variant v, int k) {
  require(parity_fits(v, k), "generate_family: " + std::string(to_string(v)) + " has no members of size " +
                                 std::to_string(k));
  switch (v) {
    case Variant::kRing: {
      auto [a, b] = rings(k);
      std::vector<Matching> out{a, b};
      std::sort(out.begin(), out.end());
      return out;
    }
    case Variant::kI:
      return grow_by_blocks({Matching::parse("1-2")}, k);
    case Variant::kL: {
      if (k == 1) return {};
      auto [a, b] = rings(k % 2 == 0 ? 2 : 3);
      return grow_by_blocks({a, b}, k);
    }
    default: {
      std::set<Matching> out;
      sweep(v, k, [&](const FamilySpec& f) { out.insert(make_family(f)); });
      return {out.begin(), out.end()};
    }
  }
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::kIsolatedI: return "Isolated-I";
    case ClassLabel::kPairDB: return "Pair-DB";
    case ClassLabel::kMediumDBD: return "Medium-DBD";
    case ClassLabel::kMediumDBDL: return "Medium-DBDL";
    case ClassLabel::kMediumEDB: return "Medium-EDB";
    case ClassLabel::kMediumEDBL: return "Medium-EDBL";
    case ClassLabel::kRegular: return "Regular";
  }
  return "?";
}

FamilyIndex::FamilyIndex(int k) : k_(k) {
  for (Variant v : {Variant::kDB, Variant::kDBD, Variant::kDBDL, Variant::kEDB, Variant::kEDBL1, Variant::kEDBL2}) {
    if (!parity_fits(v, k)) continue;
    sweep(v, k, [&](const FamilySpec& f) { members_.try_emplace(make_family(f), f); });
  }
}

std::shared_ptr<const FamilyIndex> FamilyIndex::get(int k) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const FamilyIndex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) slot.reset(new FamilyIndex(k));
  return slot;
}

const FamilySpec* FamilyIndex::find(const Matching& m) const {
  const auto it = members_.find(m);
  return it == members_.end() ? nullptr : &it->second;
}

Classification classify(const Matching& m) { return classify(m, *FamilyIndex::get(m.size())); }

Classification classify(const Matching& m, const FamilyIndex& index) {
  if (m.size() != index.k()) throw std::invalid_argument("classify: index built for another size");
  if (is_I(m)) return {ClassLabel::kIsolatedI, FamilySpec{Variant::kI, m.size(), 0, {}, 1}};
  const FamilySpec* f = index.find(m);
  if (!f) return {ClassLabel::kRegular, std::nullopt};
  switch (f->variant) {
    case Variant::kDB: return {ClassLabel::kPairDB, *f};
    case Variant::kDBD: return {ClassLabel::kMediumDBD, *f};
    case Variant::kDBDL: return {ClassLabel::kMediumDBDL, *f};
    case Variant::kEDB: return {ClassLabel::kMediumEDB, *f};
    default: return {ClassLabel::kMediumEDBL, *f};
  }
}

}  // namespace dcm
