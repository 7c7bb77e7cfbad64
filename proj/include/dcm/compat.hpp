#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dcm/matching.hpp"

namespace dcm {

// A flippable set is identified by its support, the 2m points it covers,
// sorted ascending. Its edges are the owner's edges on those points.
struct FlippableSet {
  std::vector<Label> support;

  friend auto operator<=>(const FlippableSet&, const FlippableSet&) = default;
};

struct FlippablePartition {
  std::vector<FlippableSet> parts;

  friend auto operator<=>(const FlippablePartition&, const FlippablePartition&) = default;
};

// No common edge and no crossing pair.
bool are_disjoint_compatible(const Matching& a, const Matching& b);

// Same relation, decided through the alternating cycles of a ∪ b.
bool are_disjoint_compatible_by_cycles(const Matching& a, const Matching& b);

// The cycles of a ∪ b, each listed from its smallest label and continuing
// along the edge of a. Common edges show up as cycles of length 2.
std::vector<std::vector<Label>> alternating_cycles(const Matching& a, const Matching& b);

// Throws std::invalid_argument describing the first violated condition.
void check_partition(const Matching& m, const FlippablePartition& p);

Matching flip(const Matching& m, const FlippablePartition& p);

// Every flippable partition exactly once, parts sorted by smallest support
// point and partitions in lexicographic order.
std::vector<FlippablePartition> flippable_partitions(const Matching& m);

// Same partitions in generation order, without materialising the list.
void for_each_flippable_partition(const Matching& m,
                                  const std::function<void(const FlippablePartition&)>& visit);

// Number of flippable partitions (the degree of m), by dynamic programming.
std::uint64_t degree(const Matching& m);

// Sorted neighbour list.
std::vector<Matching> neighbors(const Matching& m);

// Visits the partner table of every neighbour; the span is only valid during
// the call. This is the allocation-light path used by the graph builder.
void for_each_neighbor(const Matching& m, const std::function<void(const std::vector<Label>&)>& visit);

// Filters all C_k matchings; the reference oracle for neighbors().
std::vector<Matching> neighbors_bruteforce(const Matching& m);

}  // namespace dcm
