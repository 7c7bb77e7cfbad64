#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>

#include "dcm/compat.hpp"
#include "dcm/formulas.hpp"
#include "doctest.h"

using dcm::BigInt;

namespace {

// Set partitions of {0..n-1} into quadruples, filtered for non-crossing.
long brute_quadruple_partitions(int n) {
  std::vector<int> block(static_cast<std::size_t>(n), -1);
  long count = 0;
  std::function<void(int)> rec = [&](int blocks) {
    int first = 0;
    while (first < n && block[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == n) {
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          for (int c = b + 1; c < n; ++c) {
            for (int d = c + 1; d < n; ++d) {
              const auto ba = block[a], bb = block[b];
              if (ba != bb && block[c] == ba && block[d] == bb) return;
            }
          }
        }
      }
      ++count;
      return;
    }
    block[static_cast<std::size_t>(first)] = blocks;
    for (int x = first + 1; x < n; ++x) {
      if (block[x] >= 0) continue;
      block[x] = blocks;
      for (int y = x + 1; y < n; ++y) {
        if (block[y] >= 0) continue;
        block[y] = blocks;
        for (int z = y + 1; z < n; ++z) {
          if (block[z] >= 0) continue;
          block[z] = blocks;
          rec(blocks + 1);
          block[z] = -1;
        }
        block[y] = -1;
      }
      block[x] = -1;
    }
    block[static_cast<std::size_t>(first)] = -1;
  };
  rec(0);
  return count;
}

std::uint64_t brute_edge_count(int k) {
  const auto all = dcm::enumerate_matchings(k);
  std::uint64_t edges = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) edges += dcm::are_disjoint_compatible(all[i], all[j]);
  }
  return edges;
}

}  // namespace

TEST_CASE("catalan and binomial") {
  std::vector<std::uint64_t> c{1};
  for (int n = 1; n <= 20; ++n) {
    std::uint64_t next = 0;
    for (int i = 0; i < n; ++i) next += c[i] * c[n - 1 - i];
    c.push_back(next);
  }
  for (int n = 0; n <= 20; ++n) CHECK(dcm::catalan(n) == c[n]);
  CHECK(dcm::catalan(12) == 208012);
  CHECK(dcm::binomial(5, 7) == 0);
  CHECK(dcm::binomial(28, 7) == 1184040);
  CHECK_THROWS_AS(dcm::catalan(-1), std::domain_error);
  CHECK_THROWS_AS(dcm::binomial(-1, 0), std::domain_error);
}

TEST_CASE("fuss numbers against brute-force quadruple partitions") {
  CHECK(dcm::fuss_a(0) == 1);
  CHECK(dcm::fuss_a(2) == 4);
  for (int l = 1; l <= 3; ++l) CHECK(dcm::fuss_a(l) == brute_quadruple_partitions(4 * l));
  CHECK(brute_quadruple_partitions(12) == 22);
  const auto g = dcm::fuss_series(12).coefficients;
  for (int l = 0; l <= 12; ++l) CHECK(g[l] == dcm::fuss_a(l));
  CHECK_THROWS_AS(dcm::fuss_a(-1), std::domain_error);
}

TEST_CASE("family counts reproduce the tables") {
  const std::array<long, 6> small_odd{1, 3, 15, 91, 612, 4389};
  const std::array<long, 6> pairs{1, 4, 12, 32, 80, 192};
  for (int l = 1; l <= 6; ++l) {
    CHECK(dcm::count_I(l) == small_odd[l - 1]);
    CHECK(dcm::count_pairs(l) == pairs[l - 1]);
    CHECK(dcm::count_DB(l) == 2 * pairs[l - 1]);
  }
  const std::array<long, 4> dbd{5, 14, 36, 88};
  const std::array<long, 3> edb{6, 16, 40};
  for (int l = 3; l <= 6; ++l) CHECK(dcm::count_DBD(l) == dbd[l - 3]);
  for (int l = 3; l <= 5; ++l) CHECK(dcm::count_EDB_components(l) == edb[l - 3]);
  CHECK(dcm::count_EDB_components(6) == 96);
  CHECK(dcm::count_L_even(2) == 12);
  CHECK(dcm::count_L_even(1) == 2);
  CHECK(dcm::count_L_odd(1) == 0);
  CHECK(dcm::count_L_odd(2) == 2);
  CHECK(dcm::medium_even_order(6) == 30);
  CHECK(dcm::medium_odd_order(4) == 4);
  CHECK_THROWS_AS(dcm::count_DBD(2), std::domain_error);
  CHECK_THROWS_AS(dcm::count_EDB_components(2), std::domain_error);
  CHECK_THROWS_AS(dcm::count_I(0), std::domain_error);
}

TEST_CASE("riordan numbers") {
  // r_n = (n-1)/(n+1) (2 r_{n-1} + 3 r_{n-2}), r_0 = 1, r_1 = 0.
  std::vector<std::uint64_t> r{1, 0};
  for (std::uint64_t n = 2; n <= 20; ++n) r.push_back((n - 1) * (2 * r[n - 1] + 3 * r[n - 2]) / (n + 1));
  for (int k = 2; k <= 20; ++k) CHECK(dcm::riordan(k) == r[k]);
  CHECK(dcm::riordan(8) == 91);
  CHECK_THROWS_AS(dcm::riordan(1), std::domain_error);
  for (int k = 2; k <= 7; ++k) {
    std::vector<int> partners;
    for (int i = 1; i <= 2 * k; ++i) partners.push_back(i % 2 ? i + 1 : i - 1);
    const auto ring = dcm::Matching::from_partners(partners);
    CHECK(dcm::riordan(k) == dcm::neighbors_bruteforce(ring).size());
  }
}

TEST_CASE("edge series agrees with brute-force edge counts") {
  const auto start = std::chrono::steady_clock::now();
  const auto d = dcm::edge_series(30).coefficients;
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed < std::chrono::seconds(1));
  REQUIRE(d.size() == 31);
  CHECK(d[0] == 1);
  CHECK(d[1] == 0);
  for (int k = 2; k <= 6; ++k) CHECK(d[k] == brute_edge_count(k));
  CHECK(d[4] == 9);
  CHECK(d[5] == 21);
  // A longer expansion does not change earlier terms.
  const auto longer = dcm::edge_series(40).coefficients;
  CHECK(std::equal(d.begin(), d.end(), longer.begin()));
}

TEST_CASE("growth probe") {
  CHECK_THROWS_AS(dcm::growth_estimate(2), std::domain_error);
  const auto early = dcm::growth_estimate(4);
  CHECK(early.numerator == 9);
  CHECK(early.denominator == 1);
  const auto r30 = dcm::growth_estimate(30);
  CHECK(r30.value >= 4.97);
  CHECK(r30.value <= 5.57);
  // Early ratios alternate with parity; from n = 20 on they climb steadily
  // and stay below the limit.
  double prev = dcm::growth_estimate(19).value;
  for (int n = 20; n <= 30; ++n) {
    const double now = dcm::growth_estimate(n).value;
    CHECK(now > prev);
    CHECK(now < 5.27);
    prev = now;
  }
  CHECK(dcm::edge_series(30).coefficients[30] == BigInt("2249645599783054957"));
}

TEST_CASE("ring component order by subtraction") {
  CHECK(dcm::big_component_order(9) == 4070);
  CHECK(dcm::big_component_order(10) == 15676);
  CHECK_THROWS_AS(dcm::big_component_order(8), std::domain_error);
  CHECK(dcm::big_order_inequalities(5));
  CHECK(dcm::big_order_inequalities(40));
  for (int k = 9; k <= 12; ++k) {
    const long l = (k + 1) / 2;
    const BigInt medium = k % 2 ? dcm::medium_odd_order(l) : dcm::medium_even_order(k / 2);
    CHECK(dcm::big_component_order(k) > medium);
  }
}
