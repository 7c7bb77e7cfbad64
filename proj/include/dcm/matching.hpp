#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcm {

/// Point label on the circle. Labels run 1..2k clockwise.
using Label = int;

struct Edge {
  Label a = 0;
  Label b = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised by validation and parsing. The kind tells callers which
/// invariant of a matching was violated.
class MatchingError : public std::invalid_argument {
 public:
  enum class Kind { kOutOfRange, kCoverage, kCrossing, kMalformed, kNotFound };

  MatchingError(Kind kind, const std::string& what);

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(MatchingError::Kind kind);

/// True iff the two chords interleave (abab in cyclic order).
/// Throws std::invalid_argument when the chords share an endpoint.
bool is_crossing(Edge e1, Edge e2);

/// Canonical non-crossing perfect matching of {1..2k}.
///
/// Stored as a partner table; the edge list is derived on demand and is
/// always sorted by smaller endpoint. The total order is lexicographic on
/// the flattened canonical edge list, which coincides with lexicographic
/// order of the partner table.
class Matching {
 public:
  /// The empty matching (k = 0).
  Matching() = default;

  /// Validates an edge list; k is taken as edges.size() unless declared.
  static Matching from_edges(std::span<const Edge> edges, std::optional<int> k = std::nullopt);
  static Matching from_edges(std::initializer_list<Edge> edges, std::optional<int> k = std::nullopt) {
    return from_edges(std::span<const Edge>(edges.begin(), edges.size()), k);
  }

  /// Validates a partner table where partners[i] is the mate of label i+1.
  static Matching from_partners(std::vector<Label> partners);

  /// Parses the `a-b,c-d,...` form. Pairs may be given in any order but
  /// the result is canonical.
  static Matching parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(mate_.size() / 2); }
  int points() const noexcept { return static_cast<int>(mate_.size()); }
  bool empty() const noexcept { return mate_.empty(); }

  Label partner(Label p) const;
  const std::vector<Label>& partners() const noexcept { return mate_; }

  std::vector<Edge> edges() const;
  bool contains(Edge e) const noexcept;

  std::string to_string() const;
  std::string to_json() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend std::strong_ordering operator<=>(const Matching& x, const Matching& y) {
    return x.mate_ <=> y.mate_;
  }

 private:
  explicit Matching(std::vector<Label> mate) : mate_(std::move(mate)) {}

  std::vector<Label> mate_;
};

/// Same as Matching::from_edges; kept as a named operation.
inline Matching validate(std::span<const Edge> edges, std::optional<int> k = std::nullopt) {
  return Matching::from_edges(edges, k);
}

/// All C_k matchings in canonical (lexicographic) order. k = 0 yields the
/// single empty matching.
std::vector<Matching> enumerate_matchings(int k);

/// Position of m in enumerate_matchings(m.size()).
std::uint64_t rank(const Matching& m);
Matching unrank(int k, std::uint64_t r);

/// rank() on a raw partner table the caller knows to be valid.
std::uint64_t rank_partners(const std::vector<Label>& partners);

/// Relabels i -> ((i - 1 + s) mod 2k) + 1.
Matching rotate(const Matching& m, long long s);

/// Relabels i -> 2k + 1 - i.
Matching reflect(const Matching& m);

enum class EdgeKind { kBoundary, kDiagonal };

/// Boundary iff the endpoints are cyclically consecutive.
EdgeKind edge_kind(const Matching& m, Edge e);

/// Consecutive point pairs (i, i+1) that are not matched to each other.
std::vector<std::pair<Label, Label>> skips(const Matching& m);

bool is_ring(const Matching& m);

/// Inserts `inner` after label `gap` of `host` (gap 0 puts it before label 1).
Matching insert(const Matching& host, const Matching& inner, int gap);

/// Inverse of insert: labels gap+1..gap+2s are split off as the inner part.
/// Returns {host, inner}.
std::pair<Matching, Matching> remove(const Matching& m, int gap, int inner_size);

/// The block {14,23} and the antiblock {12,34} used for insertions.
const Matching& block_matching();
const Matching& antiblock_matching();

}  // namespace dcm

template <>
struct std::hash<dcm::Matching> {
  std::size_t operator()(const dcm::Matching& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (dcm::Label p : m.partners()) {
      h ^= static_cast<std::size_t>(p);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};
