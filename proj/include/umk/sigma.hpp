// Distance distribution functions sigma and the intrinsic radius map
// r -> -1/log(sigma(r)).
//
// sigma is contractually evaluated only on a tree's radius set, so the table
// kind needs no interpolation rule. The p-adic kind keeps (alpha, b) in exact
// form so that intrinsic radii of p-power balls stay in Q or Q(sqrt(p)).
#pragma once

#include "umk/errors.hpp"
#include "umk/quadratic.hpp"
#include "umk/rational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace umk {

class Sigma {
 public:
  enum class Kind { standard, padic, table };

  // sigma*(r) = exp(-1/r)
  static Sigma standard() { return Sigma(Kind::standard); }

  // sigma(r) = exp(-(b/r)^alpha); b defaults to p in the p-adic models.
  static Sigma padic(double alpha, double b) {
    Sigma s(Kind::padic);
    s.alpha_ = alpha;
    s.b_ = b;
    return s;
  }

  // exact variant: alpha = alpha_num/2, b = p (used by the Z_p / Q_p models)
  static Sigma padic_exact(long p, long alpha_half_num) {
    Sigma s(Kind::padic);
    s.alpha_ = alpha_half_num / 2.0;
    s.b_ = static_cast<double>(p);
    s.exact_p_ = p;
    s.alpha_half_num_ = alpha_half_num;
    return s;
  }

  static Sigma table(std::vector<std::pair<double, double>> points) {
    Sigma s(Kind::table);
    std::sort(points.begin(), points.end());
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].second <= 0.0 || points[i].second >= 1.0)
        fail(errc::sigma_out_of_range, "table sigma values must lie in (0,1)");
      if (i && points[i].second <= points[i - 1].second)
        fail(errc::sigma_out_of_range, "table sigma must be strictly increasing");
    }
    s.points_ = std::move(points);
    return s;
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double b() const { return b_; }

  double operator()(double r) const {
    switch (kind_) {
      case Kind::standard:
        return std::exp(-1.0 / r);
      case Kind::padic:
        return std::exp(-std::pow(b_ / r, alpha_));
      case Kind::table: {
        for (const auto& [x, v] : points_)
          if (x == r) return v;
        fail(errc::sigma_out_of_range, "table sigma queried off the radius set");
      }
    }
    return 0.0;
  }

  // sigma(r)^t
  double pow_t(double r, double t) const {
    switch (kind_) {
      case Kind::standard:
        return std::exp(-t / r);
      case Kind::padic:
        return std::exp(-t * std::pow(b_ / r, alpha_));
      case Kind::table:
        return std::pow((*this)(r), t);
    }
    return 0.0;
  }

  // intrinsic radius phi*(r) = -1/log sigma(r)
  double intrinsic(double r) const {
    switch (kind_) {
      case Kind::standard:
        return r;
      case Kind::padic:
        return std::pow(r / b_, alpha_);
      case Kind::table: {
        double s = (*this)(r);
        if (s <= 0.0 || s >= 1.0) fail(errc::sigma_out_of_range, "sigma(r) outside (0,1)");
        return -1.0 / std::log(s);
      }
    }
    return 0.0;
  }

  // Exact intrinsic radius when both the model and the radius are p-power
  // exact: r = p^k gives phi* = p^{alpha(k - b_exp)} with b = p^{b_exp}.
  std::optional<Quad> intrinsic_exact(const Rational& r) const {
    if (kind_ == Kind::standard) {
      long e = 0;
      // exact only when r is rational anyway; return it unchanged
      (void)e;
      return Quad(r);
    }
    if (kind_ != Kind::padic || !exact_p_) return std::nullopt;
    long k = 0;
    if (!is_power_of(r, *exact_p_, k)) return std::nullopt;
    // phi* = (r/p)^alpha = p^{(k-1) * alpha_half_num_ / 2}
    return half_power(*exact_p_, (k - 1) * alpha_half_num_);
  }

  bool has_exact_padic() const { return exact_p_.has_value(); }
  long exact_p() const { return *exact_p_; }
  long alpha_half_num() const { return alpha_half_num_; }

 private:
  explicit Sigma(Kind k) : kind_(k) {}

  Kind kind_;
  double alpha_ = 1.0;
  double b_ = 1.0;
  std::optional<long> exact_p_;
  long alpha_half_num_ = 2;
  std::vector<std::pair<double, double>> points_;
};

}  // namespace umk
