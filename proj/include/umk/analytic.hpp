// Closed-form models on Q_p, Z_p and Q_p^n: jump kernels, Green functions,
// spectra, heat-kernel series, moments. Infinite spaces are handled by
// formula; series use windowed sums whose tails vanish at double precision.
#pragma once

#include "umk/errors.hpp"
#include "umk/rational.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace umk {

struct GreenResult {
  bool recurrent = false;
  double value = 0.0;  // meaningful only when !recurrent
};

struct GrowthLaw {
  enum class Kind { power, exponential, constant };
  Kind kind = Kind::power;
  double exponent = 1.0;  // V(s) ~ s^exponent or exp(s^exponent)
};

struct TransienceReport {
  bool transient = false;
  double witness_integral = 0.0;  // int_1^inf ds/V(s); inf when recurrent
  // two-sided r/V(r) Green estimate constants when Eq-(N-Tauberian) applies
  bool tauberian = false;
  double green_lo = 0.0, green_hi = 0.0;
};

TransienceReport transience_test(const GrowthLaw& law);

// limsup log N(tau)/tau over the tail of a jump sequence
double critical_time(const std::vector<double>& tau, const std::vector<double>& n_values);

struct SpectrumDescription {
  bool has_zero = true;
  long p = 2;
  double alpha = 1.0;
  long k_min = 1;       // eigenvalues p^{alpha k}, k >= k_min (k over Z when unbounded_below)
  bool unbounded_below = false;
  // multiplicity of p^{alpha k}; -1 marks infinite multiplicity
  long multiplicity(long k) const;
  int dim = 1;
};

class AnalyticModel {
 public:
  enum class Kind { vladimirov_qp, fractional_zp, taibleson, product_vladimirov };

  static AnalyticModel vladimirov(long p, double alpha);
  static AnalyticModel zp(long p, double alpha);
  static AnalyticModel taibleson(long p, int n, double alpha);
  static AnalyticModel product(long p, std::vector<double> alphas);

  Kind kind() const { return kind_; }
  long p() const { return p_; }
  double alpha() const { return alpha_; }
  int dim() const { return dim_; }
  const std::vector<double>& alphas() const { return alphas_; }

  // jump kernel at p-adic distance p^k (dist > 0); Z_p adds its constant term
  double jump(double dist) const;

  // Green function verdict; DiagonalQuery on dist == 0
  GreenResult green(double dist) const;
  // value-or-throw variant: TransiencyViolation on recurrent models
  double green_value(double dist) const;
  bool transient() const;

  // heat kernel density at distance p^k, by series; k_log = log_p dist
  double kernel(double t, long k_log) const;
  double kernel_diagonal(double t) const;

  // product model: z given per coordinate as log_p ||z_i||, with density
  // w.r.t. the n-dimensional Haar measure
  double product_kernel(double t, const std::vector<long>& k_logs) const;
  double product_envelope(double t, const std::vector<long>& k_logs) const;
  GreenResult product_green(const std::vector<long>& k_logs) const;
  double product_A() const;

  // moment E ||X_t||^gamma in the p-adic norm; diverges for gamma >= alpha
  struct Moment {
    bool divergent = false;
    double value = 0.0;
  };
  Moment moment(double gamma, double t) const;

  SpectrumDescription spectrum() const;
  GrowthLaw growth_law() const;

  std::string name() const;

 private:
  AnalyticModel(Kind kind, long p, double alpha, int n)
      : kind_(kind), p_(p), alpha_(alpha), dim_(n) {}

  Kind kind_;
  long p_;
  double alpha_;
  int dim_;
  std::vector<double> alphas_;
};

// Rotation-invariant classification (5.6-5.8): a(m) on a finite window with
// declared geometric behaviour beyond it.
struct RotationInvariantSpec {
  long p = 2;
  long m0 = 0;                  // index of a[0]
  std::vector<Rational> a;      // non-increasing, positive
  bool a_unbounded_left = true; // a(-inf) = +inf declared

  struct Result {
    std::vector<Rational> lambda;  // lambda(m) on [m0, m0+len-2]
    std::vector<Rational> psi;     // psi(p^m) = lambda(-m+1), reversed window
    std::vector<Rational> j;       // j(p^m)
    bool lambda_non_increasing = false;
    bool psi_non_decreasing = false;
    bool j_non_increasing = false;
    enum class Class { general, monotone, isotropic } classification = Class::general;
  };

  Result evaluate() const;
};

}  // namespace umk
