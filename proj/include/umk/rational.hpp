// Exact rational scalar used wherever the contracts promise exact arithmetic.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace umk {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = e > 0 ? base : Rational(1) / base;
  unsigned long n = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
  Rational acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// p-adic valuation of a nonzero rational: largest v with p^v | q (v < 0 allowed).
inline long padic_valuation(Rational q, long p) {
  if (q == 0) return 0;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  long v = 0;
  while (num % p == 0) { num /= p; ++v; }
  while (den % p == 0) { den /= p; --v; }
  return v;
}

// True if q is exactly a signed power of p, writing q = ±p^e.
inline bool is_power_of(const Rational& q, long p, long& e) {
  if (q == 0) return false;
  e = padic_valuation(q, p);
  return q == rational_pow(Rational(p), e) || q == -rational_pow(Rational(p), e);
}

// row-sum checks that are exact for exact scalars, tolerant for doubles
inline bool sums_to_one(const Rational& row) { return row == 1; }
inline bool sums_to_one(double row) { return row > 1.0 - 1e-12 && row < 1.0 + 1e-12; }

}  // namespace umk
