#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace brp {

/// Exact arbitrary-precision rational; the scalar of every algebraic identity.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
/// 50 significant digits; the working precision of the remainder harness.
using HighPrec = boost::multiprecision::cpp_bin_float_50;

template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// Accepts "p/q", "p" and plain decimals such as "-0.125"; throws ValidationError.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Shortest round-trip decimal.
std::string to_string(double x);

template <class T>
T scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return T(q);
  }
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace brp
