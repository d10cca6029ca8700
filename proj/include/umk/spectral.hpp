// Eigen-decomposition of the isotropic Laplacian on a ball tree.
//
// Every non-root node C with parent B carries f_C = 1_C/m(C) - 1_B/m(B) and
// eigenvalue 1/phi*(B); per internal B only deg(B)-1 of these are independent
// (the first deg(B)-1 children are kept, the last one is dropped).
#pragma once

#include "umk/heat.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace umk {

struct EigenMode {
  int ball = -1;    // node C; the constant mode uses the root
  int parent = -1;  // B = C^-; -1 for the constant mode
  double lambda = 0.0;
};

struct EigenSystem {
  std::vector<EigenMode> modes;  // constant mode first
  std::optional<std::vector<Quad>> lambda_exact;  // parallel to modes when available

  int dimension() const { return static_cast<int>(modes.size()); }

  // multiplicity per eigenvalue (grouped by relative tolerance)
  std::map<double, int> multiplicities(double rel_tol = 1e-9) const {
    std::map<double, int> out;
    for (const auto& m : modes) {
      bool merged = false;
      for (auto& [l, c] : out)
        if (std::abs(l - m.lambda) <= rel_tol * std::max(1.0, std::abs(l))) {
          ++c;
          merged = true;
          break;
        }
      if (!merged) out[m.lambda] = 1;
    }
    return out;
  }
};

inline Eigen::VectorXd mode_vector(const BallTree& tree, const EigenMode& m) {
  int n = tree.leaf_count();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  if (m.parent < 0) return Eigen::VectorXd::Ones(n);
  double in_c = 1.0 / tree.node(m.ball).mass;
  double in_b = 1.0 / tree.node(m.parent).mass;
  // mark leaves under C and under B
  std::function<void(int, double)> add = [&](int v, double w) {
    if (tree.node(v).leaf()) {
      f[tree.leaf_ordinal(v)] += w;
      return;
    }
    for (int c : tree.node(v).children) add(c, w);
  };
  add(m.ball, in_c);
  add(m.parent, -in_b);
  return f;
}

inline std::vector<Quad> mode_vector_exact(const BallTree& tree, const EigenMode& m) {
  int n = tree.leaf_count();
  std::vector<Quad> f(n, Quad(Rational(0)));
  if (m.parent < 0) {
    for (auto& x : f) x = Quad(Rational(1));
    return f;
  }
  Rational in_c = Rational(1) / tree.node(m.ball).mass_q;
  Rational in_b = Rational(1) / tree.node(m.parent).mass_q;
  std::function<void(int, const Rational&)> add = [&](int v, const Rational& w) {
    if (tree.node(v).leaf()) {
      f[tree.leaf_ordinal(v)] = f[tree.leaf_ordinal(v)] + Quad(w);
      return;
    }
    for (int c : tree.node(v).children) add(c, w);
  };
  add(m.ball, in_c);
  add(m.parent, -in_b);
  return f;
}

inline EigenSystem eigensystem(const HeatModel& model) {
  const BallTree& tree = model.tree();
  EigenSystem sys;
  sys.modes.push_back({tree.root(), -1, 0.0});
  auto exact = exact_phi_star(tree, model.sigma());
  if (exact) sys.lambda_exact = std::vector<Quad>{Quad(Rational(0))};
  for (int b = 0; b < tree.size(); ++b) {
    const auto& node = tree.node(b);
    if (node.leaf()) continue;
    for (size_t i = 0; i + 1 < node.children.size(); ++i) {
      sys.modes.push_back({node.children[i], b, 1.0 / model.phi_star(b)});
      if (exact) sys.lambda_exact->push_back(Quad(Rational(1)) / (*exact)[b]);
    }
  }
  return sys;
}

// P^t entry via the spectral side: mean projector plus telescoping ball terms.
inline double reconstructed_kernel(const HeatModel& model, double t, int leaf_x, int leaf_y) {
  const BallTree& tree = model.tree();
  int w = leaf_x == leaf_y ? leaf_x : tree.confluent(leaf_x, leaf_y);
  auto path = tree.root_path(w);
  double sum = 1.0 / tree.node(tree.root()).mass;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    double lam = 1.0 / model.phi_star(path[i]);
    sum += std::exp(-lam * t) *
           (1.0 / tree.node(path[i + 1]).mass - 1.0 / tree.node(path[i]).mass);
  }
  if (!tree.node(w).leaf()) {
    double lam = 1.0 / model.phi_star(w);
    sum -= std::exp(-lam * t) / tree.node(w).mass;
  }
  return sum;
}

inline Eigen::MatrixXd reconstructed_matrix(const HeatModel& model, double t) {
  int n = model.tree().leaf_count();
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      k(i, j) = k(j, i) =
          reconstructed_kernel(model, t, model.tree().leaf_id(i), model.tree().leaf_id(j));
  return k;
}

// sigma~(r) = exp(-psi(log 1/sigma(r))) on the radius set; eigenvectors are
// untouched and eigenvalues map through psi.
inline HeatModel subordinate(const HeatModel& model, const std::function<double(double)>& psi) {
  const BallTree& tree = model.tree();
  std::vector<std::pair<double, double>> pts;
  std::vector<std::pair<double, double>> lam;  // (lambda, psi(lambda)) sorted
  for (int v = 0; v < tree.size(); ++v) {
    if (tree.node(v).leaf()) continue;
    double lambda = 1.0 / model.phi_star(v);
    lam.emplace_back(lambda, psi(lambda));
  }
  std::sort(lam.begin(), lam.end());
  if (std::abs(psi(0.0)) > 1e-15) fail(errc::non_monotone_psi, "psi(0) must be 0");
  for (size_t i = 1; i < lam.size(); ++i)
    if (lam[i].first > lam[i - 1].first && !(lam[i].second > lam[i - 1].second))
      fail(errc::non_monotone_psi, "psi is not strictly increasing on the eigenvalue set");
  for (int v = 0; v < tree.size(); ++v) {
    if (tree.node(v).leaf()) continue;
    double r = tree.node(v).phi;
    double s_new = std::exp(-psi(1.0 / model.phi_star(v)));
    bool seen = false;
    for (auto& [x, y] : pts)
      if (x == r) { seen = true; break; }
    if (!seen) pts.emplace_back(r, s_new);
  }
  return HeatModel(tree, Sigma::table(std::move(pts)));
}

// dimension of ker(I - P) computed by numeric rank
inline int liouville_dimension(const HeatModel& model, double t = 1.0, double tol = 1e-8) {
  Eigen::MatrixXd a = model.transition_matrix(t);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(a.rows(), a.cols()) - a;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++rank;
  return static_cast<int>(a.rows()) - rank;
}

}  // namespace umk
