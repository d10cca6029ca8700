// Finite-precision p-adic numbers: digit vectors with a valuation offset.
// x = sum_i digit[i] * p^(val + i), digits in [0, p), digit[0] != 0 unless x = 0.
#pragma once

#include "umk/errors.hpp"
#include "umk/rational.hpp"

#include <string>
#include <vector>

namespace umk {

class PAdic {
 public:
  PAdic() = default;

  // zero with a given precision window
  static PAdic zero(long p, int precision = 32);

  // from an integer (exact digits up to the precision window)
  static PAdic from_integer(long p, long long n, int precision = 32);

  // literal syntax "p:2 val:-1 digits:101" (digits little-endian from val)
  static PAdic parse(const std::string& literal);

  static PAdic from_digits(long p, long valuation, std::vector<int> digits, int precision = 32);

  long p() const { return p_; }
  bool is_zero() const { return digits_.empty(); }
  long valuation() const;  // fails on zero
  int precision() const { return precision_; }
  const std::vector<int>& digits() const { return digits_; }

  // ||x||_p = p^-valuation, 0 for x = 0
  double norm() const;
  Rational norm_q() const;

  PAdic add(const PAdic& other) const;
  PAdic negate() const;
  double distance(const PAdic& other) const;  // ||x - y||_p

  std::string to_string() const;

 private:
  long p_ = 2;
  long val_ = 0;            // exponent of the lowest stored digit
  std::vector<int> digits_;  // little-endian, normalized: front() != 0
  int precision_ = 32;

  void normalize();
};

struct PAdicOps {
  PAdic sum;
  double norm_x = 0, norm_y = 0, norm_sum = 0;
  long valuation_x = 0, valuation_y = 0;
  double distance = 0;
};

PAdicOps padic_ops(const PAdic& x, const PAdic& y);

}  // namespace umk
