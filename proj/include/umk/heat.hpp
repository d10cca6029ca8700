// Heat semigroup of the isotropic Markov process on a finite ball tree.
//
// With path pi(root,x) = [v_0 .. v_k, x] and sigma^t evaluated on the radius
// set, the kernel is the path sum
//   p(t,x,y)  = sum_{w in pi(x^y, root)} c_w(t)/m(w),
//   c_root(t) = 1 - sigma^t(phi(root)),
//   c_w(t)    = sigma^t(phi(w-)) - sigma^t(phi(w))   (internal w != root),
// and the atom keeps the remaining mass sigma^t(phi(v_k)) on the diagonal.
#pragma once

#include "umk/balltree.hpp"
#include "umk/errors.hpp"
#include "umk/quadratic.hpp"
#include "umk/sigma.hpp"
#include "umk/staircase.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

namespace umk {

struct MomentReport {
  double gamma = 0;
  std::vector<double> t_grid;
  std::vector<double> exact;       // sum over atoms
  std::vector<double> quadrature;  // average-moment identity route
  double max_abs_diff = 0;
  double tail_bound = 0;           // neglected integral mass beyond the s-cutoff
  // small-t bracket against the compact-regime envelope
  double band_lo = 0, band_hi = 0;
  bool bracket_finite = false;
};

struct Band {
  double lo = 0, hi = 0;
};

enum class EnvelopeFamily { doubling, qp, nab, log_family, exp_family };

struct EnvelopeParams {
  double alpha = 1.0;
  double beta = 0.0;
};

class HeatModel {
 public:
  // the tree must outlive the model
  HeatModel(const BallTree& tree, Sigma sigma);
  HeatModel(BallTree&& tree, Sigma sigma) = delete;

  const BallTree& tree() const { return *tree_; }
  const Sigma& sigma() const { return sigma_; }

  double phi_star(int node) const { return phi_star_[node]; }

  // heat kernel density p(t,x,y) for leaves x, y; t = 0 gives the identity.
  double kernel(double t, int leaf_x, int leaf_y) const;

  // dense kernel matrix over leaf ordinals
  Eigen::MatrixXd kernel_matrix(double t) const;

  // one-step probabilities A(x,y) = p(t,x,y) * mass(y); rows sum to 1
  Eigen::MatrixXd transition_matrix(double t) const;

  // kernel composition (K1 *_mu K2)(x,y) = sum_z K1(x,z) K2(z,y) mass(z)
  Eigen::MatrixXd compose(const Eigen::MatrixXd& k1, const Eigen::MatrixXd& k2) const;

  // spectral distribution function N(x, tau) = 1/mu(B*_{1/tau}(x))
  double spectral_distribution(int leaf_x, double tau) const;

  // on-diagonal value via the N-integral identity (independent of the path sum)
  double diagonal_via_N(double t, int leaf_x) const;

  // jump kernel J(x,y); F diverges on the diagonal
  double jump_kernel(int leaf_x, int leaf_y) const;
  Eigen::MatrixXd jump_matrix() const;

  // L f(x) = sum_y (f(x)-f(y)) J(x,y) mass(y)
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& f) const;

  // Green query on a compact finite model: always recurrent.
  bool green_recurrent() const { return true; }

  // volume staircase V(x, r) = mu(B*_r(x)) for a leaf
  Staircase volume_staircase(int leaf_x) const;

  // exact moment + quadrature cross-check + compact small-t bracket
  MomentReport moments(int leaf_x, double gamma, const std::vector<double>& t_grid) const;

  double intrinsic_diameter() const { return phi_star_[0]; }

  // sup/inf of p_exact/envelope over the grid; pairs grouped per confluent
  Band envelope_band(EnvelopeFamily family, const EnvelopeParams& params,
                     const std::vector<double>& t_grid, bool include_diagonal = false) const;

  double envelope_value(EnvelopeFamily family, const EnvelopeParams& params, double t,
                        double dist, double dist_star, int leaf_x) const;

  // T(x) = limsup log N / tau; bounded N on a finite model gives 0.
  double critical_time(int leaf_x) const;

  const std::vector<int>& path(int leaf) const { return paths_[tree_->leaf_ordinal(leaf)]; }

 private:
  const BallTree* tree_;
  Sigma sigma_;
  std::vector<double> phi_star_;           // per internal node (0 at leaves)
  std::vector<std::vector<int>> paths_;    // per leaf ordinal: root..leaf

  void family_guard(EnvelopeFamily family, const EnvelopeParams& params) const;
};

// ---- exact-arithmetic companions (Q or Q(sqrt p) scalars) ----

// intrinsic radii as exact field elements; empty when sigma cannot provide them
std::optional<std::vector<Quad>> exact_phi_star(const BallTree& tree, const Sigma& sigma);

Quad exact_jump_kernel(const BallTree& tree, const std::vector<Quad>& phi_star, int leaf_x,
                       int leaf_y);

std::vector<Quad> exact_apply_laplacian(const BallTree& tree, const std::vector<Quad>& phi_star,
                                        const std::vector<Quad>& f);

}  // namespace umk
