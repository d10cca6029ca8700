#include "umk/padic.hpp"

#include <cmath>
#include <sstream>

namespace umk {

void PAdic::normalize() {
  while (!digits_.empty() && digits_.front() == 0) {
    digits_.erase(digits_.begin());
    ++val_;
  }
  while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  if (static_cast<int>(digits_.size()) > precision_)
    digits_.resize(precision_);
  if (digits_.empty()) val_ = 0;
}

PAdic PAdic::zero(long p, int precision) {
  PAdic x;
  x.p_ = p;
  x.precision_ = precision;
  return x;
}

PAdic PAdic::from_integer(long p, long long n, int precision) {
  if (p < 2) fail(errc::model_error, "p must be >= 2");
  if (n < 0) fail(errc::model_error, "negative integers need a digit-vector literal");
  PAdic x = zero(p, precision);
  while (n > 0 && static_cast<int>(x.digits_.size()) < precision) {
    x.digits_.push_back(static_cast<int>(n % p));
    n /= p;
  }
  x.normalize();
  return x;
}

PAdic PAdic::from_digits(long p, long valuation, std::vector<int> digits, int precision) {
  if (p < 2) fail(errc::model_error, "p must be >= 2");
  for (int d : digits)
    if (d < 0 || d >= p) fail(errc::model_error, "digit out of range [0, p)");
  PAdic x = zero(p, precision);
  x.val_ = valuation;
  x.digits_ = std::move(digits);
  x.normalize();
  return x;
}

PAdic PAdic::parse(const std::string& literal) {
  long p = -1, val = 0;
  std::string digits;
  std::istringstream in(literal);
  std::string tok;
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) fail(errc::config_error, "bad p-adic literal token " + tok);
    std::string key = tok.substr(0, colon), value = tok.substr(colon + 1);
    if (key == "p") p = std::stol(value);
    else if (key == "val") val = std::stol(value);
    else if (key == "digits") digits = value;
    else fail(errc::config_error, "unknown p-adic literal key " + key);
  }
  if (p < 2) fail(errc::config_error, "p-adic literal needs p:<prime>");
  std::vector<int> ds;
  for (char c : digits) {
    if (c < '0' || c > '9') fail(errc::config_error, "digits must be decimal characters");
    ds.push_back(c - '0');
  }
  return from_digits(p, val, std::move(ds));
}

long PAdic::valuation() const {
  if (is_zero()) fail(errc::model_error, "zero has no finite valuation");
  return val_;
}

double PAdic::norm() const {
  if (is_zero()) return 0.0;
  return std::pow(static_cast<double>(p_), -static_cast<double>(val_));
}

Rational PAdic::norm_q() const {
  if (is_zero()) return Rational(0);
  return rational_pow(Rational(p_), -val_);
}

PAdic PAdic::add(const PAdic& other) const {
  if (p_ != other.p_) fail(errc::prime_mismatch, "operands live over different primes");
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  long lo = std::min(val_, other.val_);
  long hi = std::max(val_ + static_cast<long>(digits_.size()),
                     other.val_ + static_cast<long>(other.digits_.size()));
  if (hi - lo > 4096) fail(errc::precision_underflow, "operand windows too far apart");
  std::vector<int> out(static_cast<size_t>(hi - lo) + 1, 0);
  for (size_t i = 0; i < digits_.size(); ++i) out[val_ - lo + i] += digits_[i];
  for (size_t i = 0; i < other.digits_.size(); ++i) out[other.val_ - lo + i] += other.digits_[i];
  int carry = 0;
  for (auto& d : out) {
    d += carry;
    carry = d / static_cast<int>(p_);
    d %= static_cast<int>(p_);
  }
  // digits are known only inside the joint window [lo, min(val+prec))
  int prec = std::min(precision_, other.precision_);
  long known_hi = std::min(val_ + precision_, other.val_ + other.precision_);
  if (known_hi - lo < static_cast<long>(out.size()))
    out.resize(static_cast<size_t>(std::max<long>(known_hi - lo, 0)));
  PAdic z = zero(p_, prec);
  z.val_ = lo;
  z.digits_ = std::move(out);
  z.normalize();
  return z;
}

PAdic PAdic::negate() const {
  // p-complement: the first nonzero digit maps to p - d, later ones to p-1-d
  if (is_zero()) return *this;
  std::vector<int> out(digits_.size() + precision_, 0);
  bool seen = false;
  for (size_t i = 0; i < out.size(); ++i) {
    int d = i < digits_.size() ? digits_[i] : 0;
    if (!seen) {
      if (d == 0) { out[i] = 0; continue; }
      out[i] = static_cast<int>(p_) - d;
      seen = true;
    } else {
      out[i] = static_cast<int>(p_) - 1 - d;
    }
  }
  PAdic z = zero(p_, precision_);
  z.val_ = val_;
  z.digits_ = std::move(out);
  z.normalize();
  return z;
}

double PAdic::distance(const PAdic& other) const {
  return add(other.negate()).norm();
}

std::string PAdic::to_string() const {
  std::ostringstream out;
  out << "p:" << p_ << " val:" << (is_zero() ? 0 : val_) << " digits:";
  for (int d : digits_) out << d;
  if (digits_.empty()) out << '0';
  return out.str();
}

PAdicOps padic_ops(const PAdic& x, const PAdic& y) {
  if (x.p() != y.p()) fail(errc::prime_mismatch, "operands live over different primes");
  PAdicOps ops;
  ops.sum = x.add(y);
  ops.norm_x = x.norm();
  ops.norm_y = y.norm();
  ops.norm_sum = ops.sum.norm();
  ops.valuation_x = x.is_zero() ? 0 : x.valuation();
  ops.valuation_y = y.is_zero() ? 0 : y.valuation();
  ops.distance = x.distance(y);
  return ops;
}

}  // namespace umk
