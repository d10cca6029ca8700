#include "umk/heat.hpp"

#include <algorithm>
#include <cmath>

namespace umk {

HeatModel::HeatModel(const BallTree& tree, Sigma sigma) : tree_(&tree), sigma_(std::move(sigma)) {
  phi_star_.assign(tree.size(), 0.0);
  for (int v = 0; v < tree.size(); ++v)
    if (!tree.node(v).leaf()) {
      double s = phi_star_[v] = sigma_.intrinsic(tree.node(v).phi);
      if (!(s > 0.0) || !std::isfinite(s))
        fail(errc::sigma_out_of_range, "sigma(phi) must lie in (0,1) on the radius set");
      if (v > 0 && !tree.node(tree.node(v).parent).leaf() &&
          !(s < phi_star_[tree.node(v).parent]))
        fail(errc::sigma_out_of_range, "sigma must be strictly increasing on the radius set");
    }
  paths_.reserve(tree.leaf_count());
  for (int ell : tree.leaves()) paths_.push_back(tree.root_path(ell));
}

double HeatModel::kernel(double t, int leaf_x, int leaf_y) const {
  if (t < 0) fail(errc::model_error, "kernel needs t >= 0");
  if (t == 0) return leaf_x == leaf_y ? 1.0 / tree_->node(leaf_x).mass : 0.0;
  int w = leaf_x == leaf_y ? leaf_x : tree_->confluent(leaf_x, leaf_y);
  double sum = 0.0;
  // climb w -> root accumulating c_v(t)/m(v)
  int v = w;
  if (tree_->node(v).leaf()) {
    sum += sigma_.pow_t(tree_->node(tree_->node(v).parent).phi, t) / tree_->node(v).mass;
    v = tree_->node(v).parent;
  }
  while (v != tree_->root()) {
    double c = sigma_.pow_t(tree_->node(tree_->node(v).parent).phi, t) -
               sigma_.pow_t(tree_->node(v).phi, t);
    sum += c / tree_->node(v).mass;
    v = tree_->node(v).parent;
  }
  sum += (1.0 - sigma_.pow_t(tree_->node(tree_->root()).phi, t)) / tree_->node(tree_->root()).mass;
  return sum;
}

Eigen::MatrixXd HeatModel::kernel_matrix(double t) const {
  int n = tree_->leaf_count();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      k(i, j) = k(j, i) = kernel(t, tree_->leaf_id(i), tree_->leaf_id(j));
  return k;
}

Eigen::MatrixXd HeatModel::transition_matrix(double t) const {
  Eigen::MatrixXd k = kernel_matrix(t);
  for (int j = 0; j < k.cols(); ++j) k.col(j) *= tree_->node(tree_->leaf_id(j)).mass;
  return k;
}

Eigen::MatrixXd HeatModel::compose(const Eigen::MatrixXd& k1, const Eigen::MatrixXd& k2) const {
  Eigen::MatrixXd weighted = k1;
  for (int j = 0; j < weighted.cols(); ++j)
    weighted.col(j) *= tree_->node(tree_->leaf_id(j)).mass;
  return weighted * k2;
}

double HeatModel::spectral_distribution(int leaf_x, double tau) const {
  if (!(tau > 0)) fail(errc::model_error, "N(x,tau) needs tau > 0");
  double s = 1.0 / tau;
  const auto& path = paths_[tree_->leaf_ordinal(leaf_x)];
  // shallowest ball on the path with phi* <= s (closed-ball convention; the
  // relative guard keeps exact jump-point queries on the closed side)
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (phi_star_[path[i]] <= s * (1.0 + 1e-12)) return 1.0 / tree_->node(path[i]).mass;
  return 1.0 / tree_->node(leaf_x).mass;
}

double HeatModel::diagonal_via_N(double t, int leaf_x) const {
  // p(t,x,x) = int_0^inf N(x, s/t) e^{-s} ds, a finite staircase integral here
  const auto& path = paths_[tree_->leaf_ordinal(leaf_x)];
  double sum = 0.0;
  double prev_s = 0.0;  // s-boundary, increasing
  // N(x, s/t) = 1/m(root) while s/t <= 1/phi*(root)  (tau small)
  // jumps of N at tau_j = 1/phi*(v_j): s_j = t/phi*(v_j)
  double prev_val = 1.0 / tree_->node(tree_->root()).mass;
  for (size_t i = 1; i < path.size(); ++i) {
    double s_j = t / phi_star_[path[i - 1]];
    sum += prev_val * (std::exp(-prev_s) - std::exp(-s_j));
    prev_s = s_j;
    prev_val = 1.0 / tree_->node(path[i]).mass;
  }
  sum += prev_val * std::exp(-prev_s);
  return sum;
}

double HeatModel::jump_kernel(int leaf_x, int leaf_y) const {
  if (leaf_x == leaf_y) fail(errc::diagonal_query, "J(x,x) diverges");
  int w = tree_->confluent(leaf_x, leaf_y);
  double sum = 0.0;
  for (int v = w; v != tree_->root(); v = tree_->node(v).parent)
    sum += (1.0 / phi_star_[v] - 1.0 / phi_star_[tree_->node(v).parent]) / tree_->node(v).mass;
  sum += 1.0 / (phi_star_[tree_->root()] * tree_->node(tree_->root()).mass);
  return sum;
}

Eigen::MatrixXd HeatModel::jump_matrix() const {
  int n = tree_->leaf_count();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      j(a, b) = j(b, a) = jump_kernel(tree_->leaf_id(a), tree_->leaf_id(b));
  return j;
}

Eigen::VectorXd HeatModel::apply_laplacian(const Eigen::VectorXd& f) const {
  int n = tree_->leaf_count();
  if (f.size() != n) fail(errc::model_error, "vector length != leaf count");
  Eigen::VectorXd out(n);
  for (int a = 0; a < n; ++a) {
    double acc = 0.0;
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      acc += (f[a] - f[b]) * jump_kernel(tree_->leaf_id(a), tree_->leaf_id(b)) *
             tree_->node(tree_->leaf_id(b)).mass;
    }
    out[a] = acc;
  }
  return out;
}

Staircase HeatModel::volume_staircase(int leaf_x) const {
  const auto& path = paths_[tree_->leaf_ordinal(leaf_x)];
  Staircase v;
  v.base = tree_->node(leaf_x).mass;
  for (size_t i = path.size() - 1; i-- > 0;) {  // deepest internal first
    v.jump_at.push_back(phi_star_[path[i]]);
    v.value.push_back(tree_->node(path[i]).mass);
  }
  return v;
}

namespace {

// R_gamma(x, tau) = (1/V(tau)) sum_{jumps r_i <= tau} r_i^gamma * dV_i
struct AverageMoment {
  std::vector<double> r;        // jump radii, increasing
  std::vector<double> weight;   // r_i^gamma * dV_i
  std::vector<double> volume;   // V at r_i (right value)
  double base_volume;

  double operator()(double tau) const {
    double num = 0.0, vol = base_volume;
    for (size_t i = 0; i < r.size(); ++i) {
      if (r[i] > tau) break;
      num += weight[i];
      vol = volume[i];
    }
    return vol > 0 ? num / vol : 0.0;
  }
};

}  // namespace

MomentReport HeatModel::moments(int leaf_x, double gamma, const std::vector<double>& t_grid) const {
  if (!(gamma > 0)) fail(errc::model_error, "moments need gamma > 0");
  MomentReport rep;
  rep.gamma = gamma;
  rep.t_grid = t_grid;

  const Staircase vol = volume_staircase(leaf_x);
  AverageMoment avg;
  avg.base_volume = vol.base;
  double prev = vol.base;
  for (size_t i = 0; i < vol.jump_at.size(); ++i) {
    avg.r.push_back(vol.jump_at[i]);
    avg.weight.push_back(std::pow(vol.jump_at[i], gamma) * (vol.value[i] - prev));
    avg.volume.push_back(vol.value[i]);
    prev = vol.value[i];
  }

  constexpr double s_cut = 40.0;
  const double diam = intrinsic_diameter();
  rep.tail_bound = std::pow(diam, gamma) * std::exp(-s_cut);

  double lo = 1e300, hi = 0.0;
  bool any_band = false;
  for (double t : t_grid) {
    // exact sum over atoms
    double exact = 0.0;
    if (t > 0) {
      for (int ell : tree_->leaves()) {
        if (ell == leaf_x) continue;
        double dstar = phi_star_[tree_->confluent(leaf_x, ell)];
        exact += std::pow(dstar, gamma) * kernel(t, leaf_x, ell) * tree_->node(ell).mass;
      }
    }
    rep.exact.push_back(exact);

    // M(t) = int_0^inf R_gamma(x, t/s) e^{-s} ds, piecewise-exact in s
    double quad = 0.0;
    if (t > 0) {
      std::vector<double> cut{0.0};
      for (size_t i = avg.r.size(); i-- > 0;) {
        double s = t / avg.r[i];
        if (s < s_cut) cut.push_back(s);
      }
      cut.push_back(s_cut);
      std::sort(cut.begin(), cut.end());
      for (size_t i = 0; i + 1 < cut.size(); ++i) {
        double mid = 0.5 * (cut[i] + cut[i + 1]);
        double val = avg(t / mid);
        quad += val * (std::exp(-cut[i]) - std::exp(-cut[i + 1]));
      }
    }
    rep.quadrature.push_back(quad);
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(exact - quad));

    // compact small-t envelope band, only below t = 1
    if (t > 0 && t <= 1.0) {
      double env = gamma < 1 ? std::pow(t, gamma)
                 : gamma > 1 ? t
                             : t * (std::log(1.0 / t) + 1.0);
      if (exact > 0) {
        lo = std::min(lo, exact / env);
        hi = std::max(hi, exact / env);
        any_band = true;
      }
    }
  }
  if (any_band) {
    rep.band_lo = lo;
    rep.band_hi = hi;
    rep.bracket_finite = lo > 0 && std::isfinite(hi);
  }
  return rep;
}

void HeatModel::family_guard(EnvelopeFamily family, const EnvelopeParams& params) const {
  (void)params;
  if (family != EnvelopeFamily::qp) return;
  if (sigma_.kind() != Sigma::Kind::padic)
    fail(errc::family_mismatch, "qp family needs the p-adic sigma");
  // the model must be a level-regular window: one phi ratio, one mass ratio
  double phi_ratio = 0.0, mass_ratio = 0.0;
  for (int v = 1; v < tree_->size(); ++v) {
    const auto& n = tree_->node(v);
    const auto& par = tree_->node(n.parent);
    if (n.leaf() || par.leaf()) continue;
    double r = n.phi / par.phi, m = n.mass / par.mass;
    if (phi_ratio == 0.0) { phi_ratio = r; mass_ratio = m; continue; }
    if (std::abs(r - phi_ratio) > 1e-12 || std::abs(m - mass_ratio) > 1e-12)
      fail(errc::family_mismatch, "window is not level-regular");
  }
}

double HeatModel::envelope_value(EnvelopeFamily family, const EnvelopeParams& params, double t,
                                 double dist, double dist_star, int leaf_x) const {
  switch (family) {
    case EnvelopeFamily::doubling:
      return t / (t + dist_star) * spectral_distribution(leaf_x, 1.0 / (t + dist_star));
    case EnvelopeFamily::qp:
      return t / std::pow(std::pow(t, 1.0 / params.alpha) + dist, 1.0 + params.alpha);
    case EnvelopeFamily::nab: {
      double base = t + dist_star;
      double expo = base <= 1.0 ? params.beta : params.alpha;
      return t / std::pow(base, 1.0 + expo);
    }
    case EnvelopeFamily::log_family: {
      double base = t + dist_star;
      if (base <= 2.0) fail(errc::family_mismatch, "log family needs t + d* > 2");
      return t / (base * std::pow(std::log(base), params.alpha));
    }
    case EnvelopeFamily::exp_family: {
      double base = t + dist_star;
      return t / base *
             std::exp(-(std::pow(t, params.alpha / (params.alpha + 1.0)) +
                        std::pow(dist_star, params.alpha)));
    }
  }
  return 0.0;
}

Band HeatModel::envelope_band(EnvelopeFamily family, const EnvelopeParams& params,
                              const std::vector<double>& t_grid, bool include_diagonal) const {
  family_guard(family, params);
  Band band{1e300, 0.0};
  // ratio depends on the pair only through the confluent; enumerate one
  // representative pair per internal node (its first two children's leaves)
  for (int w = 0; w < tree_->size(); ++w) {
    const auto& n = tree_->node(w);
    if (n.leaf()) continue;
    int a = n.children[0];
    while (!tree_->node(a).leaf()) a = tree_->node(a).children[0];
    int b = n.children[1];
    while (!tree_->node(b).leaf()) b = tree_->node(b).children[0];
    double dist = n.phi, dist_star = phi_star_[w];
    for (double t : t_grid) {
      double ratio = kernel(t, a, b) / envelope_value(family, params, t, dist, dist_star, a);
      band.lo = std::min(band.lo, ratio);
      band.hi = std::max(band.hi, ratio);
    }
  }
  if (include_diagonal) {
    int a = tree_->leaf_id(0);
    for (double t : t_grid) {
      double ratio = kernel(t, a, a) / envelope_value(family, params, t, 0.0, 0.0, a);
      band.lo = std::min(band.lo, ratio);
      band.hi = std::max(band.hi, ratio);
    }
  }
  return band;
}

double HeatModel::critical_time(int leaf_x) const {
  (void)tree_->leaf_ordinal(leaf_x);
  return 0.0;  // N(x, .) is bounded on a finite model
}

std::optional<std::vector<Quad>> exact_phi_star(const BallTree& tree, const Sigma& sigma) {
  std::vector<Quad> out(tree.size(), Quad(Rational(0)));
  for (int v = 0; v < tree.size(); ++v) {
    if (tree.node(v).leaf()) continue;
    auto e = sigma.intrinsic_exact(tree.node(v).phi_q);
    if (!e) return std::nullopt;
    out[v] = *e;
  }
  return out;
}

Quad exact_jump_kernel(const BallTree& tree, const std::vector<Quad>& phi_star, int leaf_x,
                       int leaf_y) {
  if (leaf_x == leaf_y) fail(errc::diagonal_query, "J(x,x) diverges");
  int w = tree.confluent(leaf_x, leaf_y);
  Quad one{Rational(1)};
  Quad sum{Rational(0)};
  for (int v = w; v != tree.root(); v = tree.node(v).parent)
    sum += (one / phi_star[v] - one / phi_star[tree.node(v).parent]) /
           Quad(tree.node(v).mass_q);
  sum += one / (phi_star[tree.root()] * Quad(tree.node(tree.root()).mass_q));
  return sum;
}

std::vector<Quad> exact_apply_laplacian(const BallTree& tree, const std::vector<Quad>& phi_star,
                                        const std::vector<Quad>& f) {
  int n = tree.leaf_count();
  if (static_cast<int>(f.size()) != n) fail(errc::model_error, "vector length != leaf count");
  std::vector<Quad> out(n, Quad(Rational(0)));
  for (int a = 0; a < n; ++a) {
    Quad acc{Rational(0)};
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      Quad j = exact_jump_kernel(tree, phi_star, tree.leaf_id(a), tree.leaf_id(b));
      acc += (f[a] - f[b]) * j * Quad(tree.node(tree.leaf_id(b)).mass_q);
    }
    out[a] = acc;
  }
  return out;
}

}  // namespace umk
