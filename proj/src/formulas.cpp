#include "dcm/formulas.hpp"

#include <stdexcept>

namespace dcm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// a / b where the caller knows b divides a.
BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0) throw std::logic_error("inexact division in closed form");
  return q;
}

BigInt pow2(long e) { return BigInt(1) << static_cast<unsigned>(e); }

using Series = std::vector<BigInt>;

Series mul(const Series& a, const Series& b, std::size_t len) {
  Series out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

BigInt binomial(long n, long r) {
  require(n >= 0 && r >= 0, "binomial: negative argument");
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  BigInt out = 1;
  for (long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

BigInt catalan(long n) {
  require(n >= 0, "catalan: negative argument");
  return exact_div(binomial(2 * n, n), n + 1);
}

BigInt fuss_a(long l) {
  require(l >= 0, "fuss_a: l must be >= 0");
  return exact_div(binomial(4 * l, l), 3 * l + 1);
}

BigInt count_I(long l) {
  require(l >= 1, "count_I: l must be >= 1");
  return exact_div(binomial(4 * l - 2, l - 1), l);
}

BigInt count_L_odd(long l) {
  require(l >= 1, "count_L_odd: l must be >= 1");
  return exact_div(2 * (l - 1) * binomial(4 * l - 2, l - 1), 3 * l);
}

BigInt count_L_even(long l) {
  require(l >= 1, "count_L_even: l must be >= 1");
  return (l + 1) * fuss_a(l);
}

BigInt count_DB(long l) {
  require(l >= 1, "count_DB: l must be >= 1");
  return l * pow2(l);
}

BigInt count_pairs(long l) {
  require(l >= 1, "count_pairs: l must be >= 1");
  return l * pow2(l - 1);
}

BigInt count_DBD(long l) {
  require(l >= 3, "count_DBD: l must be >= 3");
  return (2 * l - 1) * pow2(l - 3);
}

BigInt count_EDB_components(long l) {
  require(l >= 3, "count_EDB_components: l must be >= 3");
  return l * pow2(l - 2);
}

BigInt medium_odd_order(long l) {
  require(l >= 2, "medium_odd_order: l must be >= 2");
  return l;
}

BigInt medium_even_order(long l) {
  require(l >= 2, "medium_even_order: l must be >= 2");
  return 6 * l - 6;
}

BigInt riordan(long k) {
  require(k >= 2, "riordan: k must be >= 2");
  BigInt sum = 0;
  for (long i = 1; i <= k / 2; ++i) sum += binomial(k + 1, i) * binomial(k - i - 1, i - 1);
  return exact_div(sum, k + 1);
}

SeriesTable edge_series(long n) {
  require(n >= 0, "edge_series: n must be >= 0");
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  Series z(len, 0);
  z[0] = 1;
  for (long iter = 0; iter <= n + 1; ++iter) {
    const Series z2 = mul(z, z, len);
    const Series z4 = mul(z2, z2, len);
    // w = x Z^2, inverse of (1 - w) by the geometric recursion.
    Series w(len, 0);
    for (std::size_t i = 1; i < len; ++i) w[i] = z2[i - 1];
    Series inv(len, 0);
    inv[0] = 1;
    for (std::size_t m = 1; m < len; ++m) {
      for (std::size_t i = 1; i <= m; ++i) inv[m] += w[i] * inv[m - i];
    }
    const Series q = mul(z4, inv, len);
    Series next(len, 0);
    next[0] = 1;
    for (std::size_t i = 2; i < len; ++i) next[i] = 2 * q[i - 2];
    if (next == z) break;
    z = std::move(next);
  }
  SeriesTable out{"d", Series(len)};
  out.coefficients[0] = 1;
  for (std::size_t i = 1; i < len; ++i) out.coefficients[i] = exact_div(z[i], 2);
  return out;
}

Ratio growth_estimate(long n) {
  require(n >= 3, "growth_estimate: n must be >= 3");
  const auto d = edge_series(n).coefficients;
  Ratio r{d[static_cast<std::size_t>(n)], d[static_cast<std::size_t>(n - 1)], 0.0};
  r.value = r.numerator.convert_to<double>() / r.denominator.convert_to<double>();
  return r;
}

BigInt big_component_order(long k) {
  require(k >= 9, "big_component_order: k must be >= 9");
  if (k % 2 == 1) {
    const long l = (k + 1) / 2;
    return catalan(k) - count_I(l) - medium_odd_order(l) * count_DBD(l);
  }
  const long l = k / 2;
  return catalan(k) - 2 * count_pairs(l) - medium_even_order(l) * count_EDB_components(l);
}

bool big_order_inequalities(long l_max) {
  require(l_max >= 5, "big_order_inequalities: l_max must be >= 5");
  for (long l = 5; l <= l_max; ++l) {
    const BigInt odd_rhs = count_I(l) + l * (2 * l - 1) * pow2(l - 3) + l;
    if (!(catalan(2 * l - 1) > odd_rhs)) return false;
    const BigInt even_rhs = l * pow2(l) + l * (6 * l - 6) * pow2(l - 2) + 6 * l - 6;
    if (!(catalan(2 * l) > even_rhs)) return false;
  }
  return true;
}

SeriesTable fuss_series(long n) {
  require(n >= 0, "fuss_series: n must be >= 0");
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  Series g(len, 0);
  g[0] = 1;
  for (long iter = 0; iter <= n + 1; ++iter) {
    const Series g2 = mul(g, g, len);
    const Series g4 = mul(g2, g2, len);
    Series next(len, 0);
    next[0] = 1;
    for (std::size_t i = 1; i < len; ++i) next[i] = g4[i - 1];
    if (next == g) break;
    g = std::move(next);
  }
  return {"g", g};
}

}  // namespace dcm
