#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dcm/matching.hpp"

namespace dcm {

// A directed side of a tree edge. Side labels are implicit: the i-th entry
// of EmbeddedTree::darts() carries label i+1.
struct Dart {
  int tail = 0;
  int head = 0;

  friend bool operator==(const Dart&, const Dart&) = default;
};

// Combinatorial embedding of a tree with a marked edge side (label 1).
//
// The rotation of a vertex lists its neighbours in cyclic order; the walk
// that enters v from u continues to the neighbour after u in rotation(v).
// Labels 1..2k are the order in which that walk visits the edge sides,
// starting at the marked side.
//
// Every constructor normalises the representation: vertices are numbered by
// their smallest incoming label and each rotation starts at the neighbour
// reached by the smallest outgoing label. Two trees that describe the same
// labelled embedding therefore compare equal.
class EmbeddedTree {
 public:
  // Takes a rotation system and the explicit side labels; throws a
  // MatchingError of kind kMalformed when the pair is not a tree or the
  // labels disagree with the traversal.
  EmbeddedTree(std::vector<std::vector<int>> rotation, std::vector<Dart> darts);

  // Derives side labels by walking from the marked dart tail -> head.
  static EmbeddedTree from_rotation(std::vector<std::vector<int>> rotation, int marked_tail,
                                    int marked_head);

  int vertex_count() const noexcept { return static_cast<int>(rotation_.size()); }
  int edge_count() const noexcept { return vertex_count() - 1; }
  const std::vector<int>& rotation(int v) const { return rotation_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::vector<int>>& rotations() const noexcept { return rotation_; }
  const std::vector<Dart>& darts() const noexcept { return darts_; }
  const Dart& dart(int label) const { return darts_.at(static_cast<std::size_t>(label - 1)); }

  int degree(int v) const { return static_cast<int>(rotation(v).size()); }
  std::vector<int> leaves() const;

  std::string to_json() const;

  friend bool operator==(const EmbeddedTree&, const EmbeddedTree&) = default;

 private:
  EmbeddedTree() = default;
  void normalise();

  std::vector<std::vector<int>> rotation_;
  std::vector<Dart> darts_;
};

EmbeddedTree to_dual_tree(const Matching& m);
Matching from_dual_tree(const EmbeddedTree& t);

// Moves the marked side to the side labelled s. The result is the dual tree
// of rotate(m, 1 - s).
EmbeddedTree remark(const EmbeddedTree& t, int s);

// Tree surgery matching insert(m, block, gap) and insert(m, antiblock, gap).
EmbeddedTree attach_branch(const EmbeddedTree& t, int gap);
EmbeddedTree attach_v_shape(const EmbeddedTree& t, int gap);

// Paths v1..v_{n+1} with v1 a leaf and v2..v_n of degree 2.
std::vector<std::vector<int>> find_branches(const EmbeddedTree& t, int n);

struct VShape {
  int first = 0;
  int centre = 0;
  int second = 0;

  friend bool operator==(const VShape&, const VShape&) = default;
};

// Leaf-centre-leaf triples where the second leaf follows the first in the
// centre's rotation.
std::vector<VShape> find_v_shapes(const EmbeddedTree& t);

// Canonical code of the unlabelled embedding: the smallest Dyck word over
// all choices of the marked side.
std::vector<bool> canonical_code(const EmbeddedTree& t);

struct SeparatedPair {
  Label start = 0;  // P_start is the first of the four consecutive points
  Edge first;
  Edge second;

  friend bool operator==(const SeparatedPair&, const SeparatedPair&) = default;
};

// {P_i P_{i+3}, P_{i+1} P_{i+2}} and {P_i P_{i+1}, P_{i+2} P_{i+3}}, indices
// taken cyclically. One entry per start label i, so a size-2 matching is
// reported twice in each list.
std::vector<SeparatedPair> find_blocks(const Matching& m);
std::vector<SeparatedPair> find_antiblocks(const Matching& m);

bool rotationally_equivalent(const Matching& a, const Matching& b);
bool rotationally_equivalent_by_scan(const Matching& a, const Matching& b);

}  // namespace dcm
