#include "umk/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace umk {

namespace {

constexpr int kWindow = 400;  // series window; outermost terms underflow doubles

double pow_p(long p, double e) { return std::pow(static_cast<double>(p), e); }

}  // namespace

TransienceReport transience_test(const GrowthLaw& law) {
  TransienceReport rep;
  switch (law.kind) {
    case GrowthLaw::Kind::power: {
      double beta = law.exponent;
      rep.transient = beta > 1.0;
      rep.witness_integral = rep.transient ? 1.0 / (beta - 1.0)
                                           : std::numeric_limits<double>::infinity();
      if (beta > 1.0) {
        // exact power law: g(x,y) = r^{1-beta}/(beta-1) = (1/(beta-1)) r/V(r)
        rep.tauberian = true;
        rep.green_lo = rep.green_hi = 1.0 / (beta - 1.0);
      }
      return rep;
    }
    case GrowthLaw::Kind::exponential: {
      rep.transient = true;
      // int_1^inf exp(-s^e) ds via a log-spaced composite rule
      double e = law.exponent, acc = 0.0;
      int steps = 4000;
      double lo = 0.0, hi = std::pow(80.0, 1.0 / e);
      double h = (hi - lo) / steps;
      for (int i = 0; i < steps; ++i) {
        double s0 = 1.0 + lo + i * h, s1 = s0 + h;
        acc += 0.5 * (std::exp(-std::pow(s0, e)) + std::exp(-std::pow(s1, e))) * h;
      }
      rep.witness_integral = acc;
      return rep;
    }
    case GrowthLaw::Kind::constant:
      rep.transient = false;
      rep.witness_integral = std::numeric_limits<double>::infinity();
      return rep;
  }
  fail(errc::unknown_growth_law, "unsupported volume growth law");
}

double critical_time(const std::vector<double>& tau, const std::vector<double>& n_values) {
  if (tau.size() != n_values.size() || tau.empty())
    fail(errc::model_error, "critical_time needs matching jump/value sequences");
  size_t start = tau.size() - std::max<size_t>(1, tau.size() / 4);
  double sup = 0.0;
  for (size_t i = start; i < tau.size(); ++i)
    sup = std::max(sup, std::log(n_values[i]) / tau[i]);
  return sup;
}

long SpectrumDescription::multiplicity(long k) const {
  if (unbounded_below) return -1;  // infinitely many balls share each radius
  if (k < k_min) return 0;
  // p^{(k-1) dim} balls of level k-1, each contributing p^dim - 1 modes
  long per_ball = 1;
  for (int i = 0; i < dim; ++i) per_ball *= p;
  per_ball -= 1;
  long balls = 1;
  for (long j = 0; j < (k - 1) * dim; ++j) balls *= p;
  return balls * per_ball;
}

AnalyticModel AnalyticModel::vladimirov(long p, double alpha) {
  if (p < 2 || alpha <= 0) fail(errc::model_error, "vladimirov model needs p>=2, alpha>0");
  return AnalyticModel(Kind::vladimirov_qp, p, alpha, 1);
}

AnalyticModel AnalyticModel::zp(long p, double alpha) {
  if (p < 2 || alpha <= 0) fail(errc::model_error, "zp model needs p>=2, alpha>0");
  return AnalyticModel(Kind::fractional_zp, p, alpha, 1);
}

AnalyticModel AnalyticModel::taibleson(long p, int n, double alpha) {
  if (p < 2 || alpha <= 0 || n < 1) fail(errc::model_error, "taibleson model needs p>=2, n>=1, alpha>0");
  return AnalyticModel(Kind::taibleson, p, alpha, n);
}

AnalyticModel AnalyticModel::product(long p, std::vector<double> alphas) {
  if (p < 2 || alphas.empty()) fail(errc::model_error, "product model needs p>=2 and alphas");
  for (double a : alphas)
    if (a <= 0) fail(errc::model_error, "product model needs positive alphas");
  AnalyticModel m(Kind::product_vladimirov, p, alphas.front(), static_cast<int>(alphas.size()));
  m.alphas_ = std::move(alphas);
  return m;
}

std::string AnalyticModel::name() const {
  switch (kind_) {
    case Kind::vladimirov_qp: return "vladimirov(Q_p)";
    case Kind::fractional_zp: return "fractional(Z_p)";
    case Kind::taibleson: return "taibleson(Q_p^n)";
    case Kind::product_vladimirov: return "product-vladimirov";
  }
  return "?";
}

double AnalyticModel::jump(double dist) const {
  if (!(dist > 0)) fail(errc::diagonal_query, "jump kernel diverges on the diagonal");
  double pa = pow_p(p_, alpha_);
  switch (kind_) {
    case Kind::vladimirov_qp:
      return (pa - 1.0) / (1.0 - pow_p(p_, -alpha_ - 1.0)) * std::pow(dist, -(1.0 + alpha_));
    case Kind::fractional_zp: {
      double c = (pow_p(p_, -alpha_) - pow_p(p_, -alpha_ - 1.0)) / (1.0 - pow_p(p_, -alpha_));
      return (pa - 1.0) / (1.0 - pow_p(p_, -alpha_ - 1.0)) *
             (c + std::pow(dist, -(1.0 + alpha_)));
    }
    case Kind::taibleson:
      return (pa - 1.0) / (1.0 - pow_p(p_, -alpha_ - dim_)) * std::pow(dist, -(dim_ + alpha_));
    case Kind::product_vladimirov:
      fail(errc::model_error, "product jump kernel is a sum of measures; query coordinates");
  }
  return 0.0;
}

bool AnalyticModel::transient() const {
  switch (kind_) {
    case Kind::vladimirov_qp: return alpha_ < 1.0;
    case Kind::fractional_zp: return false;  // compact state space
    case Kind::taibleson: return alpha_ < dim_;
    case Kind::product_vladimirov: return product_A() > 1.0;
  }
  return false;
}

GreenResult AnalyticModel::green(double dist) const {
  if (!(dist > 0)) fail(errc::diagonal_query, "green query needs x != y");
  GreenResult g;
  if (!transient()) {
    g.recurrent = true;
    return g;
  }
  switch (kind_) {
    case Kind::vladimirov_qp:
      g.value = (1.0 - pow_p(p_, -alpha_)) / (1.0 - pow_p(p_, alpha_ - 1.0)) *
                std::pow(dist, alpha_ - 1.0);
      return g;
    case Kind::taibleson:
      g.value = (1.0 - pow_p(p_, -alpha_)) / (1.0 - pow_p(p_, alpha_ - dim_)) *
                std::pow(dist, -(dim_ - alpha_));
      return g;
    default:
      fail(errc::model_error, "no closed-form green function for " + name());
  }
}

double AnalyticModel::green_value(double dist) const {
  GreenResult g = green(dist);
  if (g.recurrent)
    fail(errc::transiency_violation, name() + " is recurrent; no finite green value");
  return g.value;
}

double AnalyticModel::kernel(double t, long k_log) const {
  // sum_{j >= k} c_j(t) p^{-j n},  c_j = sigma^t(p^{j+1}) - sigma^t(p^j),
  // sigma^t(p^j) = exp(-t p^{(1-j) alpha}); on Z_p the ladder stops at j = 0.
  int n = kind_ == Kind::taibleson ? dim_ : 1;
  long j_top = kind_ == Kind::fractional_zp ? 0 : k_log + kWindow;
  if (kind_ == Kind::fractional_zp && k_log > 0)
    fail(errc::model_error, "Z_p distances are at most 1");
  double sum = 0.0;
  for (long j = k_log; j < j_top; ++j) {
    double c = std::exp(-t * pow_p(p_, (1.0 - (j + 1)) * alpha_)) -
               std::exp(-t * pow_p(p_, (1.0 - j) * alpha_));
    sum += c * pow_p(p_, -static_cast<double>(j) * n);
  }
  if (kind_ == Kind::fractional_zp)
    sum += 1.0 - std::exp(-t * pow_p(p_, (1.0 - 0.0) * alpha_));  // whole-space ball j = 0
  return sum;
}

double AnalyticModel::kernel_diagonal(double t) const {
  int n = kind_ == Kind::taibleson ? dim_ : 1;
  double sum = 0.0;
  long j_top = kind_ == Kind::fractional_zp ? 0 : kWindow;
  for (long j = -kWindow; j < j_top; ++j) {
    double c = std::exp(-t * pow_p(p_, (1.0 - (j + 1)) * alpha_)) -
               std::exp(-t * pow_p(p_, (1.0 - j) * alpha_));
    double term = c * pow_p(p_, -static_cast<double>(j) * n);
    sum += term;
    if (j > 4 && term < 1e-300) break;
  }
  if (kind_ == Kind::fractional_zp) sum += 1.0 - std::exp(-t * pow_p(p_, alpha_));
  return sum;
}

double AnalyticModel::product_A() const {
  double a = 0.0;
  for (double ai : alphas_) a += 1.0 / ai;
  return a;
}

double AnalyticModel::product_kernel(double t, const std::vector<long>& k_logs) const {
  if (kind_ != Kind::product_vladimirov || k_logs.size() != alphas_.size())
    fail(errc::model_error, "product kernel needs one coordinate per alpha");
  double prod = 1.0;
  for (size_t i = 0; i < alphas_.size(); ++i) {
    AnalyticModel one(Kind::vladimirov_qp, p_, alphas_[i], 1);
    prod *= one.kernel(t, k_logs[i]);
  }
  return prod;
}

double AnalyticModel::product_envelope(double t, const std::vector<long>& k_logs) const {
  double a_sum = product_A();
  double env = std::pow(t, -a_sum);
  for (size_t i = 0; i < alphas_.size(); ++i) {
    double z = pow_p(p_, static_cast<double>(k_logs[i]));
    env *= std::min(1.0, std::pow(t, 1.0 + 1.0 / alphas_[i]) / std::pow(z, 1.0 + alphas_[i]));
  }
  return env;
}

GreenResult AnalyticModel::product_green(const std::vector<long>& k_logs) const {
  GreenResult g;
  if (!transient()) {
    g.recurrent = true;
    return g;
  }
  // g(z) = int_0^inf p(t,z) dt on a log grid with an analytic t^{-A} tail
  double acc = 0.0;
  int steps = 3000;
  double ulo = std::log(1e-24), uhi = std::log(1e18);
  double h = (uhi - ulo) / steps;
  double prev_u = ulo;
  double prev_f = product_kernel(std::exp(ulo), k_logs) * std::exp(ulo);
  for (int i = 1; i <= steps; ++i) {
    double u = ulo + i * h;
    double f = product_kernel(std::exp(u), k_logs) * std::exp(u);
    acc += 0.5 * (prev_f + f) * (u - prev_u);
    prev_u = u;
    prev_f = f;
  }
  double t_hi = std::exp(uhi);
  double a_sum = product_A();
  acc += product_kernel(t_hi, k_logs) * t_hi / (a_sum - 1.0);  // ~ c t^{-A} tail
  g.value = acc;
  return g;
}

AnalyticModel::Moment AnalyticModel::moment(double gamma, double t) const {
  if (!(gamma > 0) || !(t >= 0)) fail(errc::model_error, "moment needs gamma > 0, t >= 0");
  Moment m;
  if (t == 0) return m;
  if (kind_ == Kind::product_vladimirov)
    fail(errc::model_error, "product moments are not provided in closed form");
  if (kind_ != Kind::fractional_zp && gamma >= alpha_) {
    m.divergent = true;
    return m;
  }
  int n = kind_ == Kind::taibleson ? dim_ : 1;
  // Q(k) = P[||X_t|| > p^k] assembled from complementary, cancellation-free terms
  auto q_comp = [&](long k) {
    if (kind_ == Kind::fractional_zp && k >= 0) return 0.0;
    double x_k1 = t * pow_p(p_, (1.0 - (k + 1)) * alpha_);
    double q = -std::expm1(-x_k1);
    if (kind_ == Kind::fractional_zp) {
      // ladder stops at the unit ball: no mass ever leaves Z_p
      for (long nn = k + 1; nn < 0; ++nn) {
        double x_next = t * pow_p(p_, (1.0 - (nn + 1)) * alpha_);
        double x_cur = t * pow_p(p_, (1.0 - nn) * alpha_);
        double c = std::exp(-x_next) - std::exp(-x_cur);
        q -= c * pow_p(p_, static_cast<double>(k - nn) * n);
      }
      if (k < 0) {
        double x0 = t * pow_p(p_, alpha_);
        q -= -std::expm1(-x0) * pow_p(p_, static_cast<double>(k) * n);
      }
      return std::max(q, 0.0);
    }
    for (long nn = k + 1; nn <= k + kWindow; ++nn) {
      double x_next = t * pow_p(p_, (1.0 - (nn + 1)) * alpha_);
      double x_cur = t * pow_p(p_, (1.0 - nn) * alpha_);
      double c = -std::exp(-x_next) * std::expm1(-(x_cur - x_next));
      double term = c * pow_p(p_, static_cast<double>(k - nn) * n);
      q -= term;
      if (nn > k + 4 && term < 1e-305) break;
    }
    return std::max(q, 0.0);
  };

  // upper cut sized so the geometric tail p^{-k(alpha-gamma)} is below 1e-20,
  // with an adaptive break as backup
  long k_hi = 0;
  if (kind_ != Kind::fractional_zp) {
    double lp = std::log(static_cast<double>(p_));
    k_hi = 10 + static_cast<long>(std::ceil((std::log(t + 2.0) / lp + 50.0 / lp) /
                                            (alpha_ - gamma)));
  }
  long k_lo = -kWindow;
  double sum = 0.0;
  double prev_q = q_comp(k_lo - 1);
  for (long k = k_lo; k <= k_hi; ++k) {
    double qk = q_comp(k);
    double sphere = prev_q - qk;
    double term = pow_p(p_, gamma * static_cast<double>(k)) * sphere;
    sum += term;
    prev_q = qk;
    if (kind_ != Kind::fractional_zp && k > 4 && term > 0 && term < 1e-18 * sum &&
        qk < 1e-250)
      break;
  }
  m.value = sum;
  return m;
}

SpectrumDescription AnalyticModel::spectrum() const {
  SpectrumDescription s;
  s.p = p_;
  s.alpha = alpha_;
  s.dim = kind_ == Kind::taibleson ? dim_ : 1;
  switch (kind_) {
    case Kind::vladimirov_qp:
    case Kind::taibleson:
      s.unbounded_below = true;
      return s;
    case Kind::fractional_zp:
      s.k_min = 1;
      return s;
    case Kind::product_vladimirov:
      fail(errc::model_error, "product spectrum is a sumset; not provided");
  }
  return s;
}

GrowthLaw AnalyticModel::growth_law() const {
  switch (kind_) {
    case Kind::vladimirov_qp: return {GrowthLaw::Kind::power, 1.0 / alpha_};
    case Kind::taibleson: return {GrowthLaw::Kind::power, dim_ / alpha_};
    case Kind::fractional_zp: return {GrowthLaw::Kind::constant, 0.0};
    case Kind::product_vladimirov: return {GrowthLaw::Kind::power, product_A()};
  }
  fail(errc::unknown_growth_law, "no growth law");
}

RotationInvariantSpec::Result RotationInvariantSpec::evaluate() const {
  if (a.size() < 3) fail(errc::model_error, "need at least 3 a-values");
  for (const auto& v : a)
    if (v <= 0) fail(errc::not_non_increasing, "a(m) must stay positive");
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] > a[i - 1]) fail(errc::not_non_increasing, "a(m) must be non-increasing");

  Result r;
  size_t len = a.size() - 1;
  r.lambda.reserve(len);
  r.j.reserve(len);
  Rational inv_pm1 = Rational(1) / Rational(p - 1);
  for (size_t i = 0; i < len; ++i) {
    r.lambda.push_back(a[i] - inv_pm1 * (a[i + 1] - a[i]));
    long m = m0 + static_cast<long>(i);
    Rational denom = rational_pow(Rational(p), m) - rational_pow(Rational(p), m - 1);
    r.j.push_back((a[i] - a[i + 1]) / denom);
  }
  // psi(p^m) = lambda(-m+1): the lambda window reversed
  r.psi.assign(r.lambda.rbegin(), r.lambda.rend());

  auto non_increasing = [](const std::vector<Rational>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1]) return false;
    return true;
  };
  auto non_decreasing = [](const std::vector<Rational>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] < v[i - 1]) return false;
    return true;
  };
  auto strictly_decreasing = [](const std::vector<Rational>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] >= v[i - 1]) return false;
    return true;
  };
  r.lambda_non_increasing = non_increasing(r.lambda);
  r.psi_non_decreasing = non_decreasing(r.psi);
  r.j_non_increasing = non_increasing(r.j);

  if (strictly_decreasing(r.lambda) && a_unbounded_left)
    r.classification = Result::Class::isotropic;
  else if (r.lambda_non_increasing)
    r.classification = Result::Class::monotone;
  else
    r.classification = Result::Class::general;
  return r;
}

}  // namespace umk
