#include <algorithm>
#include <set>

#include "dcm/compat.hpp"
#include "dcm/dual_tree.hpp"
#include "dcm/families.hpp"
#include "dcm/formulas.hpp"
#include "doctest.h"

using dcm::Matching;
using dcm::PositionSequence;
using dcm::Variant;

namespace {

std::vector<PositionSequence> chis(int n) {
  std::vector<PositionSequence> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    PositionSequence c;
    for (int i = 0; i < n; ++i) c.push_back((mask >> i) & 1u ? dcm::Sign::kPlus : dcm::Sign::kMinus);
    out.push_back(c);
  }
  return out;
}

std::vector<Matching> degree_filter(int k, std::uint64_t d) {
  std::vector<Matching> out;
  for (const auto& m : dcm::enumerate_matchings(k)) {
    if (dcm::neighbors_bruteforce(m).size() == d) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("position sequences") {
  const auto chi = dcm::parse_chi("++-++--+");
  CHECK(dcm::to_string(dcm::chi_conjugate(chi)) == "-++--+--");
  CHECK(dcm::delta(chi) == 2);
  CHECK(dcm::delta(dcm::chi_conjugate(chi)) == -2);
  CHECK(dcm::chi_conjugate({}).empty());
  CHECK(dcm::delta({}) == 0);
  CHECK_THROWS_AS(dcm::parse_chi("+x"), std::invalid_argument);
}

TEST_CASE("DB construction and partner") {
  CHECK(dcm::make_db(4, {}, 1).to_string() == "1-8,2-3,4-7,5-6");
  CHECK(dcm::make_db(4, {}, 5).to_string() == "1-2,3-8,4-5,6-7");
  const auto [chi, z] = dcm::db_partner(4, {}, 1);
  CHECK(chi.empty());
  CHECK(z == 5);
  const auto [chi14, z14] = dcm::db_partner(14, dcm::parse_chi("-++-+"), 1);
  CHECK(dcm::to_string(chi14) == "-+--+");
  CHECK(z14 == 16);
  CHECK_THROWS_AS(dcm::make_db(5, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(dcm::make_db(6, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(dcm::make_db(4, {}, 9), std::invalid_argument);
  for (int k = 2; k <= 8; k += 2) {
    const int l = k / 2;
    std::set<Matching> seen;
    for (const auto& c : chis(std::max(l - 2, 0))) {
      for (int zz = 1; zz <= 2 * k; ++zz) {
        const Matching m = dcm::make_db(k, c, zz);
        seen.insert(m);
        const auto [pc, pz] = dcm::db_partner(k, c, zz);
        const auto nb = dcm::neighbors_bruteforce(m);
        REQUIRE(nb.size() == 1);
        CHECK(nb[0] == dcm::make_db(k, pc, pz));
        const auto back = dcm::db_partner(k, pc, pz);
        CHECK(back.first == c);
        CHECK(back.second == zz);
      }
    }
    if (k >= 4) CHECK(seen.size() == static_cast<std::size_t>(l * (1 << l)));
    CHECK(seen.size() == dcm::count_DB(l));
  }
}

TEST_CASE("DBD identification and counts") {
  for (int k : {5, 7, 9}) {
    const int l = (k + 1) / 2;
    std::set<Matching> seen;
    for (const auto& c : chis(l - 3)) {
      for (int z = 1; z <= 2 * k; ++z) {
        const Matching m = dcm::make_dbd(k, c, z);
        seen.insert(m);
        if (k <= 7) {
          bool twin = false;
          for (int z2 = 1; z2 <= 2 * k; ++z2) twin |= dcm::make_dbd(k, dcm::chi_conjugate(c), z2) == m;
          CHECK(twin);
        }
      }
    }
    CHECK(seen.size() == dcm::count_DBD(l));
  }
  // The upside-down reading from the text.
  CHECK(dcm::make_dbd(15, dcm::parse_chi("++--+"), 1) == dcm::make_dbd(15, dcm::parse_chi("-++--"), 17));
  const auto k3 = dcm::generate_family(Variant::kDBD, 3);
  CHECK(k3.size() == 2);
  CHECK(std::all_of(k3.begin(), k3.end(), [](const Matching& m) { return dcm::is_ring(m); }));
}

TEST_CASE("DBDL leaves hang off the DBD centre") {
  for (int k : {3, 5, 7, 9}) {
    const int l = (k + 1) / 2;
    for (const auto& c : chis(std::max(l - 3, 0))) {
      for (int z = 1; z <= 2 * k; ++z) {
        const Matching centre = dcm::make_dbd(k, c, z);
        std::set<Matching> leaves;
        for (int j = 1; j <= l - 1; ++j) leaves.insert(dcm::make_dbdl(k, j, c, z));
        const auto nb = dcm::neighbors(centre);
        CHECK(std::set<Matching>(nb.begin(), nb.end()) == leaves);
        if (k >= 5) {
          for (const auto& leaf : leaves) CHECK(dcm::degree(leaf) == 1);
        }
      }
    }
  }
  CHECK_THROWS_AS(dcm::make_dbdl(5, 3, {}, 1), std::invalid_argument);
}

TEST_CASE("EDB neighbourhoods") {
  // The worked example: EDB(18,5,++-+-+,1) against EDB(18,i,-+-+--,21).
  const auto chi = dcm::parse_chi("++-+-+");
  const auto [pc, pz] = dcm::edb_partner(18, chi, 1);
  CHECK(dcm::to_string(pc) == "-+-+--");
  CHECK(pz == 21);
  {
    std::set<Matching> expected;
    for (int i = 4; i <= 8; ++i) expected.insert(dcm::make_edb(18, i, pc, pz));
    expected.insert(dcm::make_edbl1(18, 5, chi, 1));
    expected.insert(dcm::make_edbl2(18, 5, chi, 1));
    const auto nb = dcm::neighbors(dcm::make_edb(18, 5, chi, 1));
    CHECK(std::set<Matching>(nb.begin(), nb.end()) == expected);
    CHECK(nb.size() == 7);
  }
  for (int k : {4, 6, 8, 10}) {
    const int l = k / 2;
    for (const auto& c : chis(std::max(l - 3, 0))) {
      for (int z = 1; z <= 2 * k; ++z) {
        const auto [qc, qz] = dcm::edb_partner(k, c, z);
        for (int j = 1; j <= l - 1; ++j) {
          const Matching m = dcm::make_edb(k, j, c, z);
          const auto nb = dcm::neighbors(m);
          CHECK(nb.size() == static_cast<std::size_t>(j + 2));
          std::set<Matching> expected;
          for (int i = l - j; i <= l - 1; ++i) expected.insert(dcm::make_edb(k, i, qc, qz));
          const Matching a = dcm::make_edbl1(k, j, c, z);
          const Matching b = dcm::make_edbl2(k, j, c, z);
          expected.insert(a);
          expected.insert(b);
          CHECK(std::set<Matching>(nb.begin(), nb.end()) == expected);
          CHECK(dcm::degree(a) == 1);
          CHECK(dcm::degree(b) == 1);
          CHECK(dcm::is_L(a));
          CHECK(dcm::is_L(b));
        }
      }
    }
  }
  CHECK_THROWS_AS(dcm::make_edb(8, 4, dcm::parse_chi("+"), 1), std::invalid_argument);
  CHECK_THROWS_AS(dcm::make_edb(7, 1, {}, 1), std::invalid_argument);
}

TEST_CASE("rings") {
  const auto [a, b] = dcm::rings(2);
  CHECK(a.to_string() == "1-2,3-4");
  CHECK(b.to_string() == "1-4,2-3");
  const auto [c, d] = dcm::rings(4);
  CHECK(c.to_string() == "1-2,3-4,5-6,7-8");
  CHECK(d.to_string() == "1-8,2-3,4-5,6-7");
  for (int k = 2; k <= 8; ++k) {
    const auto [x, y] = dcm::rings(k);
    CHECK(dcm::are_disjoint_compatible(x, y));
  }
  CHECK_THROWS_AS(dcm::rings(1), std::invalid_argument);
}

TEST_CASE("I and L recognisers agree with degrees") {
  CHECK(dcm::is_I(Matching::parse("1-6,2-5,3-4")));
  CHECK_FALSE(dcm::is_I(dcm::rings(3).first));
  for (int k = 1; k <= 7; ++k) {
    const auto isolated = degree_filter(k, 0);
    const auto leaves = degree_filter(k, 1);
    std::vector<Matching> by_i, by_l;
    for (const auto& m : dcm::enumerate_matchings(k)) {
      if (dcm::is_I(m)) by_i.push_back(m);
      if (dcm::is_L(m)) by_l.push_back(m);
    }
    CHECK(by_i == isolated);
    CHECK(by_l == leaves);
    if (k % 2 == 1) {
      CHECK(dcm::generate_family(Variant::kI, k) == isolated);
    }
    CHECK(dcm::generate_family(Variant::kL, k) == leaves);
  }
  CHECK(dcm::generate_family(Variant::kI, 7).size() == 91);
  CHECK(dcm::generate_family(Variant::kI, 9).size() == 612);
  CHECK(dcm::generate_family(Variant::kL, 4).size() == 12);
  for (int k = 8; k <= 10; ++k) {
    const long l = (k + 1) / 2;
    const auto expected = k % 2 ? dcm::count_L_odd(l) : dcm::count_L_even(k / 2);
    CHECK(dcm::generate_family(Variant::kL, k).size() == expected);
  }
}

TEST_CASE("I-matchings: colouring, blocks and antiblocks") {
  const auto one = dcm::i_coloring(Matching::parse("1-2"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].second == dcm::EdgeColour::kRed);
  const auto three = dcm::i_coloring(Matching::parse("1-6,2-5,3-4"));
  REQUIRE(three.size() == 3);
  CHECK(three[0].second == dcm::EdgeColour::kRed);
  CHECK(three[1].second == dcm::EdgeColour::kBlack);
  CHECK(three[2].second == dcm::EdgeColour::kRed);
  CHECK_THROWS_AS(dcm::i_coloring(dcm::rings(3).first), std::invalid_argument);
  for (int k = 1; k <= 9; k += 2) {
    const int l = (k + 1) / 2;
    for (const auto& m : dcm::generate_family(Variant::kI, k)) {
      if (k <= 7) {
        const auto colours = dcm::i_coloring(m);
        const auto red = std::count_if(colours.begin(), colours.end(),
                                       [](const auto& p) { return p.second == dcm::EdgeColour::kRed; });
        CHECK(red == l);
        CHECK(static_cast<int>(colours.size()) - red == l - 1);
      }
      CHECK(dcm::find_antiblocks(m).empty());
      if (k >= 3) CHECK(dcm::find_blocks(m).size() >= 2);
    }
  }
}

TEST_CASE("family generation respects parity") {
  CHECK_THROWS_AS(dcm::generate_family(Variant::kI, 4), std::invalid_argument);
  CHECK_THROWS_AS(dcm::generate_family(Variant::kDB, 5), std::invalid_argument);
  CHECK_THROWS_AS(dcm::generate_family(Variant::kDBD, 6), std::invalid_argument);
  CHECK_THROWS_AS(dcm::generate_family(Variant::kEDB, 2), std::invalid_argument);
  CHECK(dcm::generate_family(Variant::kDB, 8).size() == 64);
  CHECK(dcm::generate_family(Variant::kDBD, 11).size() == 88);
  CHECK(dcm::generate_family(Variant::kEDB, 8).size() == 6u * 16);
}

TEST_CASE("classification") {
  CHECK(dcm::classify(dcm::rings(5).first).label == dcm::ClassLabel::kRegular);
  const auto iso = dcm::classify(Matching::parse("1-6,2-5,3-4"));
  CHECK(iso.label == dcm::ClassLabel::kIsolatedI);
  const auto edb = dcm::classify(dcm::make_edb(8, 2, dcm::parse_chi("+"), 1));
  CHECK(edb.label == dcm::ClassLabel::kMediumEDB);
  REQUIRE(edb.witness);
  CHECK(dcm::make_family(*edb.witness) == dcm::make_edb(8, 2, dcm::parse_chi("+"), 1));
  const auto db = dcm::classify(Matching::parse("1-8,2-3,4-7,5-6"));
  CHECK(db.label == dcm::ClassLabel::kPairDB);
  REQUIRE(db.witness);
  CHECK(db.witness->to_string() == "DB(4,e,1)");
  CHECK(dcm::classify(dcm::rings(3).first).label == dcm::ClassLabel::kMediumDBD);
  CHECK(dcm::classify(dcm::rings(2).first).label == dcm::ClassLabel::kPairDB);
  // Every witness reproduces the matching it was reported for.
  for (int k = 1; k <= 8; ++k) {
    for (const auto& m : dcm::enumerate_matchings(k)) {
      const auto c = dcm::classify(m);
      if (c.witness && c.label != dcm::ClassLabel::kIsolatedI) CHECK(dcm::make_family(*c.witness) == m);
    }
  }
}
