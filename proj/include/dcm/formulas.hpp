#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace dcm {

using BigInt = boost::multiprecision::cpp_int;

struct SeriesTable {
  std::string name;
  std::vector<BigInt> coefficients;
};

// Exact ratio of two integers, plus its double for display.
struct Ratio {
  BigInt numerator;
  BigInt denominator;
  double value = 0.0;
};

// All of these throw std::domain_error below their range of validity.
BigInt catalan(long n);
BigInt binomial(long n, long r);

BigInt fuss_a(long l);
BigInt count_I(long l);             // odd k = 2l-1, l >= 1
BigInt count_L_odd(long l);         // odd k = 2l-1, l >= 1
BigInt count_L_even(long l);        // even k = 2l, l >= 1
BigInt count_DB(long l);            // even k = 2l, l >= 1
BigInt count_pairs(long l);         // even k = 2l, l >= 1
BigInt count_DBD(long l);           // odd k = 2l-1, l >= 3
BigInt count_EDB_components(long l);  // even k = 2l, l >= 3
BigInt medium_odd_order(long l);    // l >= 2
BigInt medium_even_order(long l);   // l >= 2

BigInt riordan(long k);

// d_0..d_n from Z = 1 + 2x^2 Z^4 / (1 - x Z^2), d_k = [x^k] (Z+1)/2.
SeriesTable edge_series(long n);

// d_n / d_{n-1}; n >= 3 because d_1 = 0.
Ratio growth_estimate(long n);

// Order of the ring component by subtracting small and medium ones, k >= 9.
BigInt big_component_order(long k);

// Checks the two strict inequalities comparing C_k with the small and
// medium vertex totals, for every 5 <= l <= l_max.
bool big_order_inequalities(long l_max);

// Coefficients g_0..g_n of g = 1 + x g^4.
SeriesTable fuss_series(long n);

}  // namespace dcm
