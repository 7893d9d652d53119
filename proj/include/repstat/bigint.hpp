#pragma once

// Arbitrary-precision integers and rationals, plus the handful of helpers
// every other module leans on: factorials, logarithms of huge integers and
// fixed-precision decimal rendering.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "repstat/error.hpp"

namespace repstat {

// Expression templates off: `auto x = a * b` must hold a value, not a
// reference to temporaries.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt factorial(int n) {
  if (n < 0) throw ValidationError("factorial of a negative number");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Table of 0!, 1!, ..., n!.
inline std::vector<BigInt> factorial_table(int n) {
  std::vector<BigInt> t(static_cast<std::size_t>(n) + 1);
  t[0] = 1;
  for (int k = 1; k <= n; ++k) t[k] = t[k - 1] * k;
  return t;
}

inline BigInt pow_big(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// Natural logarithm of a positive integer of any size.
///
/// Uses the bit length to split x = top * 2^shift with `top` holding the 64
/// leading bits, so the result carries the relative accuracy of a double
/// regardless of magnitude (n! for n in the thousands is fine).
inline double log_big(const BigInt& x) {
  if (x <= 0) throw ValidationError("log of a non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
  const std::size_t shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return std::log(static_cast<double>(top)) +
         static_cast<double>(shift) * std::log(2.0);
}

/// ln(num/den) for positive rationals, without converting through a double.
inline double log_rational(const Rational& r) {
  return log_big(boost::multiprecision::numerator(r)) -
         log_big(boost::multiprecision::denominator(r));
}

/// Nearest double to a rational; the value must be within double range.
inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

/// Exact rational value of a finite double (every double is dyadic).
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite real");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 bits of mantissa fit in an int64 after scaling.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{BigInt(scaled)};
  if (exp > 0) r *= Rational(pow_big(2, static_cast<unsigned>(exp)));
  if (exp < 0) r /= Rational(pow_big(2, static_cast<unsigned>(-exp)));
  return r;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

/// Reals are rendered with 12 significant digits everywhere output leaves
/// the library.
inline std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string format_rational(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

/// Parses "a" or "a/b" with integer a, b (b != 0).
inline Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw ValidationError("malformed rational: '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ValidationError("malformed rational: '" + text + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw ValidationError("malformed rational: '" + text + "'");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace repstat
