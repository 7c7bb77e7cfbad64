#include <algorithm>

#include "dcm/dual_tree.hpp"
#include "doctest.h"

using dcm::EmbeddedTree;
using dcm::Matching;

namespace {

int boundary_edges(const Matching& m) {
  int count = 0;
  for (const auto& e : m.edges()) count += dcm::edge_kind(m, e) == dcm::EdgeKind::kBoundary ? 1 : 0;
  return count;
}

std::vector<int> sorted_degrees(const EmbeddedTree& t) {
  std::vector<int> d;
  for (int v = 0; v < t.vertex_count(); ++v) d.push_back(t.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("dual tree shapes") {
  const EmbeddedTree star = dcm::to_dual_tree(Matching::parse("1-2,3-4,5-6"));
  CHECK(star.vertex_count() == 4);
  CHECK(sorted_degrees(star) == std::vector<int>{1, 1, 1, 3});
  const EmbeddedTree path = dcm::to_dual_tree(Matching::parse("1-6,2-5,3-4"));
  CHECK(sorted_degrees(path) == std::vector<int>{1, 1, 2, 2});
  CHECK(dcm::to_dual_tree(Matching()).vertex_count() == 1);
}

TEST_CASE("dual tree round trip and leaf count") {
  for (int k = 0; k <= 6; ++k) {
    for (const auto& m : dcm::enumerate_matchings(k)) {
      const EmbeddedTree t = dcm::to_dual_tree(m);
      CHECK(t.vertex_count() == k + 1);
      CHECK(dcm::from_dual_tree(t) == m);
      if (k >= 2) {
        CHECK(static_cast<int>(t.leaves().size()) == boundary_edges(m));
      }
      // Rebuilding from the bare rotation system and the marked side gives
      // back the same labelled tree.
      if (k >= 1) {
        const auto& d1 = t.dart(1);
        CHECK(EmbeddedTree::from_rotation(t.rotations(), d1.tail, d1.head) == t);
      }
    }
  }
}

TEST_CASE("inverse construction from hand-made embeddings") {
  // Star with centre 0 and leaves 1, 2, 3; marked side leaves the centre.
  const EmbeddedTree star = EmbeddedTree::from_rotation({{1, 2, 3}, {0}, {0}, {0}}, 1, 0);
  const Matching ring = dcm::from_dual_tree(star);
  CHECK(ring.size() == 3);
  CHECK(dcm::is_ring(ring));
  // Path 0-1-2-3; marking the side that leaves the end leaf gives the fully
  // nested matching, marking the opposite side gives a rotation of it.
  const EmbeddedTree path = EmbeddedTree::from_rotation({{1}, {0, 2}, {1, 3}, {2}}, 0, 1);
  CHECK(dcm::from_dual_tree(path).to_string() == "1-6,2-5,3-4");
  const EmbeddedTree back = EmbeddedTree::from_rotation({{1}, {0, 2}, {1, 3}, {2}}, 1, 0);
  CHECK(dcm::from_dual_tree(back).to_string() == "1-2,3-6,4-5");
}

TEST_CASE("malformed embeddings are rejected") {
  using Kind = dcm::MatchingError::Kind;
  auto kind = [](auto f) {
    try {
      f();
    } catch (const dcm::MatchingError& e) {
      return e.kind();
    }
    return Kind::kNotFound;
  };
  // Labels swapped against the traversal order.
  const EmbeddedTree t = dcm::to_dual_tree(Matching::parse("1-2,3-4,5-6"));
  auto darts = t.darts();
  std::swap(darts[1], darts[2]);
  CHECK(kind([&] { EmbeddedTree(t.rotations(), darts); }) == Kind::kMalformed);
  // A cycle is not a tree.
  CHECK(kind([] { EmbeddedTree::from_rotation({{1, 2}, {0, 2}, {0, 1}}, 0, 1); }) == Kind::kMalformed);
  // Asymmetric rotation.
  CHECK(kind([] { EmbeddedTree::from_rotation({{1}, {}}, 0, 1); }) == Kind::kMalformed);
}

TEST_CASE("changing the marked side rotates the matching") {
  for (int k = 1; k <= 5; ++k) {
    for (const auto& m : dcm::enumerate_matchings(k)) {
      const EmbeddedTree t = dcm::to_dual_tree(m);
      for (int s = 1; s <= 2 * k; ++s) {
        CHECK(dcm::remark(t, s) == dcm::to_dual_tree(dcm::rotate(m, 1 - s)));
      }
    }
  }
}

TEST_CASE("block and antiblock insertion attach a branch or a V-shape") {
  for (int k = 0; k <= 5; ++k) {
    for (const auto& m : dcm::enumerate_matchings(k)) {
      const EmbeddedTree t = dcm::to_dual_tree(m);
      for (int gap = 0; gap <= 2 * k; ++gap) {
        CHECK(dcm::to_dual_tree(dcm::insert(m, dcm::block_matching(), gap)) == dcm::attach_branch(t, gap));
        CHECK(dcm::to_dual_tree(dcm::insert(m, dcm::antiblock_matching(), gap)) ==
              dcm::attach_v_shape(t, gap));
      }
    }
  }
}

TEST_CASE("branches and V-shapes") {
  const EmbeddedTree path = dcm::to_dual_tree(Matching::parse("1-6,2-5,3-4"));
  CHECK(dcm::find_branches(path, 2).size() == 2);
  CHECK(dcm::find_branches(path, 3).size() == 2);
  const EmbeddedTree ring4 = dcm::to_dual_tree(Matching::parse("1-2,3-4,5-6,7-8"));
  CHECK(dcm::find_v_shapes(ring4).size() == 4);
  CHECK(dcm::find_branches(ring4, 2).empty());
  const EmbeddedTree star3 = dcm::to_dual_tree(Matching::parse("1-2,3-4,5-6"));
  CHECK(dcm::find_branches(star3, 2).empty());
  CHECK(dcm::find_branches(star3, 1).size() == 3);
}

TEST_CASE("blocks and antiblocks by scan") {
  const auto nested = Matching::parse("1-6,2-5,3-4");
  // Read cyclically, P5 P6 P1 P2 also carries a block ({25,16}); the path
  // dual tree has a 2-branch at each end to match.
  const auto blocks = dcm::find_blocks(nested);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].first == dcm::Edge{2, 5});
  CHECK(blocks[0].second == dcm::Edge{3, 4});
  CHECK(blocks[1].first == dcm::Edge{2, 5});
  CHECK(blocks[1].second == dcm::Edge{1, 6});
  CHECK(dcm::find_antiblocks(nested).empty());
  CHECK(dcm::find_blocks(Matching::parse("1-2,3-4,5-6,7-8")).empty());
  CHECK(dcm::find_antiblocks(Matching::parse("1-2,3-4,5-6,7-8")).size() == 4);
  const auto two = Matching::parse("1-2,3-4");
  for (const auto& list : {dcm::find_blocks(two), dcm::find_antiblocks(two)}) {
    CHECK(list.size() == 2);
    for (const auto& p : list) {
      CHECK(((p.first == dcm::Edge{1, 2} && p.second == dcm::Edge{3, 4}) ||
             (p.first == dcm::Edge{3, 4} && p.second == dcm::Edge{1, 2})));
    }
  }
}

TEST_CASE("separated pairs agree with the dual-tree detectors") {
  for (int k = 2; k <= 6; ++k) {
    for (const auto& m : dcm::enumerate_matchings(k)) {
      const EmbeddedTree t = dcm::to_dual_tree(m);
      CHECK(dcm::find_branches(t, 2).size() == dcm::find_blocks(m).size());
      CHECK(dcm::find_v_shapes(t).size() == dcm::find_antiblocks(m).size());
    }
  }
}

TEST_CASE("rotational equivalence by two routes") {
  CHECK(dcm::rotationally_equivalent(Matching::parse("1-2,3-6,4-5"), Matching::parse("1-6,2-5,3-4")));
  CHECK_FALSE(dcm::rotationally_equivalent(Matching::parse("1-2,3-4,5-6,7-8"),
                                           Matching::parse("1-4,2-3,5-8,6-7")));
  CHECK_THROWS_AS(dcm::rotationally_equivalent(Matching::parse("1-2"), Matching::parse("1-2,3-4")),
                  std::invalid_argument);
  for (int k = 1; k <= 6; ++k) {
    const auto all = dcm::enumerate_matchings(k);
    for (const auto& a : all) {
      CHECK(dcm::rotationally_equivalent(a, a));
      for (const auto& b : all) {
        CHECK(dcm::rotationally_equivalent(a, b) == dcm::rotationally_equivalent_by_scan(a, b));
      }
    }
  }
}

TEST_CASE("tree JSON export") {
  const auto json = dcm::to_dual_tree(Matching::parse("1-2")).to_json();
  CHECK(json == R"({"vertices":2,"rotation":[[1],[0]],"sides":[{"label":1,"tail":1,"head":0},{"label":2,"tail":0,"head":1}]})");
}
