// Exact arithmetic in the quadratic field Q(sqrt(d)).
//
// Closed forms for fractional orders alpha = k/2 live in Q(sqrt(p)); numbers
// are kept as a + b*sqrt(d) with rational a, b so that identities like
// F(v,o) = p^{-alpha|v|} can be asserted with equality rather than tolerance.
#pragma once

#include "umk/errors.hpp"
#include "umk/rational.hpp"

#include <cmath>

namespace umk {

struct Quad {
  Rational a{0};
  Rational b{0};
  long d{0};  // radicand; 0 marks a plain rational (b must be 0)

  Quad() = default;
  Quad(Rational r) : a(std::move(r)) {}
  Quad(long n) : a(n) {}
  Quad(Rational ra, Rational rb, long rad) : a(std::move(ra)), b(std::move(rb)), d(rad) {
    if (b == 0) d = 0;
  }

  bool rational_part_only() const { return b == 0; }
};

inline long join_radicand(const Quad& x, const Quad& y) {
  if (x.d == 0) return y.d;
  if (y.d == 0 || x.d == y.d) return x.d;
  fail(errc::model_error, "mixing distinct quadratic fields");
}

inline Quad operator+(const Quad& x, const Quad& y) {
  return Quad(x.a + y.a, x.b + y.b, join_radicand(x, y));
}
inline Quad operator-(const Quad& x, const Quad& y) {
  return Quad(x.a - y.a, x.b - y.b, join_radicand(x, y));
}
inline Quad operator-(const Quad& x) { return Quad(-x.a, -x.b, x.d); }
inline Quad operator*(const Quad& x, const Quad& y) {
  long d = join_radicand(x, y);
  return Quad(x.a * y.a + Rational(d) * x.b * y.b, x.a * y.b + x.b * y.a, d);
}
inline Quad operator/(const Quad& x, const Quad& y) {
  long d = join_radicand(x, y);
  Rational norm = y.a * y.a - Rational(d) * y.b * y.b;
  if (norm == 0) fail(errc::model_error, "division by zero in Q(sqrt(d))");
  // multiply by the conjugate
  Quad num(x.a * y.a - Rational(d) * x.b * y.b, x.b * y.a - x.a * y.b, d);
  return Quad(num.a / norm, num.b / norm, d);
}
inline bool operator==(const Quad& x, const Quad& y) {
  return x.a == y.a && x.b == y.b && (x.b == 0 || x.d == y.d || y.d == 0 || x.d == 0);
}
inline bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

inline Quad& operator+=(Quad& x, const Quad& y) { return x = x + y; }
inline Quad& operator-=(Quad& x, const Quad& y) { return x = x - y; }
inline Quad& operator*=(Quad& x, const Quad& y) { return x = x * y; }
inline Quad& operator/=(Quad& x, const Quad& y) { return x = x / y; }

inline double to_double(const Quad& x) {
  return to_double(x.a) + to_double(x.b) * std::sqrt(static_cast<double>(x.d));
}

// p^(num/2) as an exact element of Q(sqrt(p)).
inline Quad half_power(long p, long num) {
  long whole = num >= 0 ? num / 2 : -((-num + 1) / 2);
  long rem = num - 2 * whole;  // 0 or 1
  Rational w = rational_pow(Rational(p), whole);
  if (rem == 0) return Quad(w);
  return Quad(Rational(0), w, p);
}

inline Quad quad_pow(const Quad& x, long e) {
  Quad acc{Rational(1)};
  Quad b = x;
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (inv) return Quad(Rational(1)) / acc;
  return acc;
}

}  // namespace umk
