#include "dcm/matching.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace dcm {

MatchingError::MatchingError(Kind kind, const std::string& what)
    : std::invalid_argument(what), kind_(kind) {}

std::string_view to_string(MatchingError::Kind kind) {
  switch (kind) {
    case MatchingError::Kind::kOutOfRange: return "out_of_range";
    case MatchingError::Kind::kCoverage: return "coverage";
    case MatchingError::Kind::kCrossing: return "crossing";
    case MatchingError::Kind::kMalformed: return "malformed";
    case MatchingError::Kind::kNotFound: return "not_found";
  }
  return "unknown";
}

bool is_crossing(Edge e1, Edge e2) {
  if (e1.a > e1.b) std::swap(e1.a, e1.b);
  if (e2.a > e2.b) std::swap(e2.a, e2.b);
  if (e1.a == e2.a || e1.a == e2.b || e1.b == e2.a || e1.b == e2.b) {
    throw std::invalid_argument("is_crossing: chords share an endpoint");
  }
  const bool a_inside = e1.a < e2.a && e2.a < e1.b;
  const bool b_inside = e1.a < e2.b && e2.b < e1.b;
  return a_inside != b_inside;
}

namespace {

std::string edge_text(Edge e) {
  return std::to_string(e.a) + "-" + std::to_string(e.b);
}

// Crossing check on a partner table in O(k): a matching is non-crossing iff
// the chords nest like parentheses when read left to right.
std::optional<std::pair<Edge, Edge>> find_crossing(const std::vector<Label>& mate) {
  std::vector<Label> open;
  for (Label p = 1; p <= static_cast<Label>(mate.size()); ++p) {
    const Label q = mate[p - 1];
    if (q > p) {
      open.push_back(p);
    } else {
      if (open.back() != q) {
        const Label top = open.back();
        return std::make_pair(Edge{q, p}, Edge{top, mate[top - 1]});
      }
      open.pop_back();
    }
  }
  return std::nullopt;
}

constexpr int kMaxCatalanIndex = 33;

const std::array<std::uint64_t, kMaxCatalanIndex + 1>& catalan_table() {
  static const auto table = [] {
    std::array<std::uint64_t, kMaxCatalanIndex + 1> c{};
    c[0] = 1;
    for (int n = 1; n <= kMaxCatalanIndex; ++n) {
      std::uint64_t s = 0;
      for (int i = 0; i < n; ++i) s += c[i] * c[n - 1 - i];
      c[n] = s;
    }
    return c;
  }();
  return table;
}

void enumerate_into(int lo, int n, std::vector<Label>& mate, std::vector<Matching>& out,
                    const std::function<void()>& emit_rest) {
  // Fills labels lo..lo+2n-1 in lexicographic order, then calls emit_rest.
  if (n == 0) {
    emit_rest();
    return;
  }
  for (int j = 1; j <= n; ++j) {
    const Label p = lo;
    const Label q = lo + 2 * j - 1;
    mate[p - 1] = q;
    mate[q - 1] = p;
    enumerate_into(lo + 1, j - 1, mate, out, [&] {
      enumerate_into(q + 1, n - j, mate, out, emit_rest);
    });
  }
}

std::uint64_t rank_segment(const std::vector<Label>& mate, Label lo, int n) {
  if (n == 0) return 0;
  const auto& c = catalan_table();
  const Label q = mate[lo - 1];
  const int j = (q - lo + 1) / 2;
  std::uint64_t r = 0;
  for (int i = 1; i < j; ++i) r += c[i - 1] * c[n - i];
  r += rank_segment(mate, lo + 1, j - 1) * c[n - j];
  r += rank_segment(mate, q + 1, n - j);
  return r;
}

void unrank_segment(std::vector<Label>& mate, Label lo, int n, std::uint64_t r) {
  if (n == 0) return;
  const auto& c = catalan_table();
  int j = 1;
  for (; j <= n; ++j) {
    const std::uint64_t block = c[j - 1] * c[n - j];
    if (r < block) break;
    r -= block;
  }
  const Label q = lo + 2 * j - 1;
  mate[lo - 1] = q;
  mate[q - 1] = lo;
  unrank_segment(mate, lo + 1, j - 1, r / c[n - j]);
  unrank_segment(mate, q + 1, n - j, r % c[n - j]);
}

}  // namespace

Matching Matching::from_edges(std::span<const Edge> edges, std::optional<int> k) {
  const int size = k.value_or(static_cast<int>(edges.size()));
  if (size < 0) throw MatchingError(MatchingError::Kind::kOutOfRange, "negative matching size");
  if (static_cast<int>(edges.size()) != size) {
    throw MatchingError(MatchingError::Kind::kCoverage,
                        "expected " + std::to_string(size) + " edges, got " +
                            std::to_string(edges.size()));
  }
  const Label n = 2 * size;
  std::vector<Label> mate(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    if (e.a < 1 || e.a > n || e.b < 1 || e.b > n) {
      throw MatchingError(MatchingError::Kind::kOutOfRange,
                          "edge " + edge_text(e) + " has a label outside 1.." + std::to_string(n));
    }
  }
  for (const Edge& e : edges) {
    if (e.a == e.b) {
      throw MatchingError(MatchingError::Kind::kCoverage, "edge " + edge_text(e) + " is a loop");
    }
    for (Label p : {e.a, e.b}) {
      if (mate[p - 1] != 0) {
        throw MatchingError(MatchingError::Kind::kCoverage,
                            "label " + std::to_string(p) + " is covered twice");
      }
    }
    mate[e.a - 1] = e.b;
    mate[e.b - 1] = e.a;
  }
  return from_partners(std::move(mate));
}

Matching Matching::from_partners(std::vector<Label> partners) {
  const Label n = static_cast<Label>(partners.size());
  if (n % 2 != 0) {
    throw MatchingError(MatchingError::Kind::kCoverage, "odd number of points");
  }
  for (Label p = 1; p <= n; ++p) {
    const Label q = partners[p - 1];
    if (q == 0) {
      throw MatchingError(MatchingError::Kind::kCoverage,
                          "label " + std::to_string(p) + " is not covered");
    }
    if (q < 1 || q > n) {
      throw MatchingError(MatchingError::Kind::kOutOfRange,
                          "partner " + std::to_string(q) + " outside 1.." + std::to_string(n));
    }
    if (q == p || partners[q - 1] != p) {
      throw MatchingError(MatchingError::Kind::kCoverage,
                          "partner table is not an involution at " + std::to_string(p));
    }
  }
  if (auto bad = find_crossing(partners)) {
    throw MatchingError(MatchingError::Kind::kCrossing,
                        "edges " + edge_text(bad->first) + " and " + edge_text(bad->second) +
                            " cross");
  }
  return Matching(std::move(partners));
}

Matching Matching::parse(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Matching {
    throw MatchingError(MatchingError::Kind::kMalformed,
                        "parse error at position " + std::to_string(pos) + ": " + why);
  };
  auto read_number = [&](Label& out) {
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr == first) fail("expected a point label");
    pos += static_cast<std::size_t>(ptr - first);
  };
  if (text.empty()) return Matching();
  while (true) {
    Edge e;
    read_number(e.a);
    if (pos >= text.size() || text[pos] != '-') return fail("expected '-'");
    ++pos;
    read_number(e.b);
    if (e.a > e.b) std::swap(e.a, e.b);
    edges.push_back(e);
    if (pos == text.size()) break;
    if (text[pos] != ',') return fail("expected ','");
    ++pos;
  }
  return from_edges(edges);
}

Label Matching::partner(Label p) const {
  if (p < 1 || p > points()) {
    throw MatchingError(MatchingError::Kind::kOutOfRange,
                        "label " + std::to_string(p) + " outside 1.." + std::to_string(points()));
  }
  return mate_[p - 1];
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  out.reserve(mate_.size() / 2);
  for (Label p = 1; p <= points(); ++p) {
    if (mate_[p - 1] > p) out.push_back({p, mate_[p - 1]});
  }
  return out;
}

bool Matching::contains(Edge e) const noexcept {
  if (e.a < 1 || e.a > points() || e.b < 1 || e.b > points()) return false;
  return mate_[e.a - 1] == e.b;
}

std::string Matching::to_string() const {
  std::string out;
  bool first = true;
  for (const Edge& e : edges()) {
    if (!first) out += ',';
    first = false;
    out += edge_text(e);
  }
  return out;
}

std::string Matching::to_json() const {
  std::ostringstream os;
  os << "{\"k\":" << size() << ",\"edges\":[";
  bool first = true;
  for (const Edge& e : edges()) {
    if (!first) os << ',';
    first = false;
    os << '[' << e.a << ',' << e.b << ']';
  }
  os << "]}";
  return os.str();
}

std::vector<Matching> enumerate_matchings(int k) {
  if (k < 0) throw std::invalid_argument("enumerate_matchings: negative size");
  if (k > kMaxCatalanIndex) throw std::invalid_argument("enumerate_matchings: size too large");
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(catalan_table()[static_cast<std::size_t>(k)]));
  std::vector<Label> mate(static_cast<std::size_t>(2 * k), 0);
  enumerate_into(1, k, mate, out, [&] { out.push_back(Matching::from_partners(mate)); });
  return out;
}

std::uint64_t rank(const Matching& m) {
  return rank_segment(m.partners(), 1, m.size());
}

std::uint64_t rank_partners(const std::vector<Label>& partners) {
  return rank_segment(partners, 1, static_cast<int>(partners.size() / 2));
}

Matching unrank(int k, std::uint64_t r) {
  if (k < 0 || k > kMaxCatalanIndex) throw std::invalid_argument("unrank: size out of range");
  if (r >= catalan_table()[static_cast<std::size_t>(k)]) {
    throw std::invalid_argument("unrank: rank out of range");
  }
  std::vector<Label> mate(static_cast<std::size_t>(2 * k), 0);
  unrank_segment(mate, 1, k, r);
  return Matching::from_partners(std::move(mate));
}

Matching rotate(const Matching& m, long long s) {
  const long long n = m.points();
  if (n == 0) return m;
  s %= n;
  if (s < 0) s += n;
  std::vector<Label> mate(static_cast<std::size_t>(n));
  for (long long p = 1; p <= n; ++p) {
    const long long q = m.partners()[static_cast<std::size_t>(p - 1)];
    const long long np = (p - 1 + s) % n + 1;
    const long long nq = (q - 1 + s) % n + 1;
    mate[static_cast<std::size_t>(np - 1)] = static_cast<Label>(nq);
  }
  return Matching::from_partners(std::move(mate));
}

Matching reflect(const Matching& m) {
  const Label n = m.points();
  std::vector<Label> mate(static_cast<std::size_t>(n));
  for (Label p = 1; p <= n; ++p) {
    mate[static_cast<std::size_t>(n - p)] = n + 1 - m.partners()[p - 1];
  }
  return Matching::from_partners(std::move(mate));
}

EdgeKind edge_kind(const Matching& m, Edge e) {
  if (e.a > e.b) std::swap(e.a, e.b);
  if (!m.contains(e)) {
    throw MatchingError(MatchingError::Kind::kNotFound,
                        "edge " + edge_text(e) + " is not in the matching");
  }
  const bool consecutive = (e.b == e.a + 1) || (e.a == 1 && e.b == m.points());
  return consecutive ? EdgeKind::kBoundary : EdgeKind::kDiagonal;
}

std::vector<std::pair<Label, Label>> skips(const Matching& m) {
  std::vector<std::pair<Label, Label>> out;
  const Label n = m.points();
  for (Label p = 1; p <= n; ++p) {
    const Label next = p == n ? 1 : p + 1;
    if (m.partners()[p - 1] != next) out.emplace_back(p, next);
  }
  return out;
}

bool is_ring(const Matching& m) {
  for (const Edge& e : m.edges()) {
    if (edge_kind(m, e) != EdgeKind::kBoundary) return false;
  }
  return true;
}

Matching insert(const Matching& host, const Matching& inner, int gap) {
  const Label r2 = host.points();
  const Label s2 = inner.points();
  if (gap < 0 || gap > r2) {
    throw MatchingError(MatchingError::Kind::kOutOfRange,
                        "insertion gap " + std::to_string(gap) + " outside 0.." + std::to_string(r2));
  }
  auto host_label = [&](Label p) { return p <= gap ? p : p + s2; };
  std::vector<Label> mate(static_cast<std::size_t>(r2 + s2));
  for (Label p = 1; p <= r2; ++p) mate[host_label(p) - 1] = host_label(host.partners()[p - 1]);
  for (Label p = 1; p <= s2; ++p) mate[gap + p - 1] = gap + inner.partners()[p - 1];
  return Matching::from_partners(std::move(mate));
}

std::pair<Matching, Matching> remove(const Matching& m, int gap, int inner_size) {
  const Label n = m.points();
  const Label s2 = 2 * inner_size;
  if (gap < 0 || inner_size < 0 || gap + s2 > n) {
    throw MatchingError(MatchingError::Kind::kOutOfRange, "removal range outside the matching");
  }
  std::vector<Label> inner(static_cast<std::size_t>(s2));
  for (Label p = gap + 1; p <= gap + s2; ++p) {
    const Label q = m.partners()[p - 1];
    if (q <= gap || q > gap + s2) {
      throw MatchingError(MatchingError::Kind::kCoverage,
                          "labels " + std::to_string(gap + 1) + ".." + std::to_string(gap + s2) +
                              " are not matched among themselves");
    }
    inner[p - gap - 1] = q - gap;
  }
  std::vector<Label> host;
  host.reserve(static_cast<std::size_t>(n - s2));
  auto host_label = [&](Label p) { return p <= gap ? p : p - s2; };
  for (Label p = 1; p <= n; ++p) {
    if (p > gap && p <= gap + s2) continue;
    host.push_back(host_label(m.partners()[p - 1]));
  }
  return {Matching::from_partners(std::move(host)), Matching::from_partners(std::move(inner))};
}

const Matching& block_matching() {
  static const Matching m = Matching::from_edges({{1, 4}, {2, 3}});
  return m;
}

const Matching& antiblock_matching() {
  static const Matching m = Matching::from_edges({{1, 2}, {3, 4}});
  return m;
}

}  // namespace dcm
