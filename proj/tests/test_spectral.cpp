#include "doctest.h"

#include "umk/balltree.hpp"
#include "umk/heat.hpp"
#include "umk/spectral.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace umk;

TEST_CASE("binary tree: one independent mode per internal node plus the constant") {
  BallTree t = BallTree::padic(2, 3, 1);
  HeatModel m(t, Sigma::standard());
  EigenSystem sys = eigensystem(m);
  int internals = 0;
  for (int v = 0; v < t.size(); ++v)
    if (!t.node(v).leaf()) ++internals;
  CHECK(sys.dimension() == internals + 1);
  CHECK(sys.dimension() == t.leaf_count());  // completeness on the finite model
}

TEST_CASE("Z_p spectrum: eigenvalue p^{k alpha} with multiplicity p^{k-1}(p-1)") {
  for (long p : {2L, 3L}) {
    for (long half : {1L, 2L, 4L}) {  // alpha = 1/2, 1, 2
      double alpha = half / 2.0;
      int depth = 4;
      BallTree t = BallTree::padic(p, depth, 1);
      HeatModel m(t, Sigma::padic_exact(p, half));
      EigenSystem sys = eigensystem(m);
      auto mult = sys.multiplicities();
      REQUIRE(static_cast<int>(mult.size()) == depth + 1);
      CHECK(mult.begin()->first == 0.0);
      CHECK(mult.begin()->second == 1);
      long expect_count = 1;
      int k = 1;
      for (auto it = std::next(mult.begin()); it != mult.end(); ++it, ++k) {
        CHECK(it->first ==
              doctest::Approx(std::pow(double(p), k * alpha)).epsilon(1e-12));
        long mk = (p - 1);
        for (int j = 1; j < k; ++j) mk *= p;
        CHECK(it->second == mk);
        expect_count += mk;
      }
      CHECK(expect_count == t.leaf_count());
    }
  }
}

TEST_CASE("eigenmodes are exact eigenvectors of the jump Laplacian") {
  SUBCASE("exact zero residual on p-adic models incl. alpha = 1/2") {
    for (long p : {2L, 3L}) {
      for (long half : {1L, 2L, 4L}) {
        BallTree t = BallTree::padic(p, 3, 1);
        Sigma sig = Sigma::padic_exact(p, half);
        HeatModel m(t, sig);
        auto phi_star = exact_phi_star(t, sig);
        REQUIRE(phi_star.has_value());
        EigenSystem sys = eigensystem(m);
        REQUIRE(sys.lambda_exact.has_value());
        for (size_t i = 0; i < sys.modes.size(); ++i) {
          auto f = mode_vector_exact(t, sys.modes[i]);
          auto lf = exact_apply_laplacian(t, *phi_star, f);
          for (size_t j = 0; j < f.size(); ++j)
            CHECK(lf[j] == (*sys.lambda_exact)[i] * f[j]);
        }
      }
    }
  }
  SUBCASE("double-precision residual on random trees") {
    Rng rng(13, 0);
    BallTree t = testutil::random_balltree(rng, 36);
    HeatModel m(t, Sigma::standard());
    EigenSystem sys = eigensystem(m);
    for (const auto& mode : sys.modes) {
      Eigen::VectorXd f = mode_vector(t, mode);
      Eigen::VectorXd lf = m.apply_laplacian(f);
      CHECK((lf - mode.lambda * f).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, mode.lambda));
    }
  }
}

TEST_CASE("laplacian annihilates constants and is nonnegative symmetric") {
  Rng rng(29, 0);
  BallTree t = testutil::random_balltree(rng, 30);
  HeatModel m(t, Sigma::standard());
  int n = t.leaf_count();
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  CHECK(m.apply_laplacian(ones).cwiseAbs().maxCoeff() < 1e-12);
  // operator matrix: L(x,y) acting on functions
  Eigen::MatrixXd lmat(n, n);
  for (int j = 0; j < n; ++j) lmat.col(j) = m.apply_laplacian(Eigen::VectorXd::Unit(n, j));
  // mu-symmetry: m(x) L(x,y) = m(y) L(y,x)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(t.node(t.leaf_id(i)).mass * lmat(i, j) ==
            doctest::Approx(t.node(t.leaf_id(j)).mass * lmat(j, i)).epsilon(1e-11));
}

TEST_CASE("quadratic form equals the Dirichlet double sum") {
  Rng rng(43, 0);
  BallTree t = testutil::random_balltree(rng, 28);
  HeatModel m(t, Sigma::standard());
  int n = t.leaf_count();
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = std::sin(0.7 * i) + 0.2 * i;
  // (f, Lf)_mu
  Eigen::VectorXd lf = m.apply_laplacian(f);
  double quad = 0;
  for (int i = 0; i < n; ++i) quad += f[i] * lf[i] * t.node(t.leaf_id(i)).mass;
  // (1/2) sum sum (f(x)-f(y))^2 J(x,y) mu(x) mu(y)
  double dsum = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      double diff = f[a] - f[b];
      dsum += diff * diff * m.jump_kernel(t.leaf_id(a), t.leaf_id(b)) *
              t.node(t.leaf_id(a)).mass * t.node(t.leaf_id(b)).mass;
    }
  dsum /= 2;
  CHECK(quad == doctest::Approx(dsum).epsilon(1e-12));
}

TEST_CASE("mode orthogonality and mean-zero") {
  Rng rng(47, 0);
  BallTree t = testutil::random_balltree(rng, 30);
  HeatModel m(t, Sigma::standard());
  EigenSystem sys = eigensystem(m);
  int n = t.leaf_count();
  auto dot_mu = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i] * t.node(t.leaf_id(i)).mass;
    return acc;
  };
  for (size_t i = 1; i < sys.modes.size(); ++i) {
    Eigen::VectorXd fi = mode_vector(t, sys.modes[i]);
    CHECK(std::abs(dot_mu(fi, Eigen::VectorXd::Ones(n))) < 1e-13);  // mean zero
    for (size_t j = 1; j < i; ++j) {
      if (sys.modes[i].parent == sys.modes[j].parent) continue;  // same H_B may overlap
      Eigen::VectorXd fj = mode_vector(t, sys.modes[j]);
      CHECK(std::abs(dot_mu(fi, fj)) < 1e-13);
    }
  }
}

TEST_CASE("within one H_B the chosen modes span dimension deg(B)-1") {
  BallTree t = BallTree::padic(3, 2, 1);
  HeatModel m(t, Sigma::standard());
  EigenSystem sys = eigensystem(m);
  int n = t.leaf_count();
  for (int b = 0; b < t.size(); ++b) {
    if (t.node(b).leaf()) continue;
    std::vector<Eigen::VectorXd> vecs;
    for (const auto& mode : sys.modes)
      if (mode.parent == b) vecs.push_back(mode_vector(t, mode));
    REQUIRE(static_cast<int>(vecs.size()) == static_cast<int>(t.node(b).children.size()) - 1);
    Eigen::MatrixXd gram(vecs.size(), vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i)
      for (size_t j = 0; j < vecs.size(); ++j) {
        double acc = 0;
        for (int k = 0; k < n; ++k) acc += vecs[i][k] * vecs[j][k] * t.node(t.leaf_id(k)).mass;
        gram(i, j) = acc;
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    CHECK(lu.rank() == static_cast<int>(vecs.size()));
  }
}

TEST_CASE("spectral reconstruction reproduces the kernel matrix") {
  Rng rng(53, 0);
  BallTree t = testutil::random_balltree(rng, 40);
  HeatModel m(t, Sigma::standard());
  for (double tt : {0.2, 1.0, 7.0})
    CHECK((m.kernel_matrix(tt) - reconstructed_matrix(m, tt)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("subordination") {
  BallTree t = BallTree::padic(2, 4, 1);
  Sigma base = Sigma::padic_exact(2, 2);  // alpha = 1
  HeatModel m(t, base);
  SUBCASE("identity psi keeps the model") {
    HeatModel sub = subordinate(m, [](double l) { return l; });
    for (double tt : {0.5, 2.0})
      CHECK((sub.kernel_matrix(tt) - m.kernel_matrix(tt)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("psi(l) = l^alpha lands on the direct alpha-model spectrum") {
    double alpha = 0.5;
    HeatModel sub = subordinate(m, [&](double l) { return std::pow(l, alpha); });
    BallTree t2 = BallTree::padic(2, 4, 1);
    HeatModel direct(t2, Sigma::padic_exact(2, 1));  // alpha = 1/2
    EigenSystem a = eigensystem(sub), b = eigensystem(direct);
    auto ma = a.multiplicities(), mb = b.multiplicities();
    REQUIRE(ma.size() == mb.size());
    auto ita = ma.begin();
    auto itb = mb.begin();
    for (; ita != ma.end(); ++ita, ++itb) {
      CHECK(ita->first == doctest::Approx(itb->first).epsilon(1e-12));
      CHECK(ita->second == itb->second);
    }
    // eigenvectors are shared: same tree, same modes
    for (double tt : {0.4, 3.0})
      CHECK((sub.kernel_matrix(tt) - direct.kernel_matrix(tt)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("psi(l) = l^2 still yields a Markov kernel") {
    HeatModel sub = subordinate(m, [](double l) { return l * l; });
    for (double tt : {0.1, 1.0, 5.0}) {
      Eigen::MatrixXd k = sub.kernel_matrix(tt);
      CHECK(k.minCoeff() >= 0.0);
      Eigen::MatrixXd a = sub.transition_matrix(tt);
      for (int i = 0; i < a.rows(); ++i)
        CHECK(a.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("non-monotone psi is rejected") {
    CHECK_THROWS_AS(subordinate(m, [](double l) { return l * (3.0 - l); }), error);
  }
  SUBCASE("psi with psi(0) != 0 is rejected") {
    CHECK_THROWS_AS(subordinate(m, [](double l) { return l + 1.0; }), error);
  }
}

TEST_CASE("liouville fixed space has dimension 1") {
  SUBCASE("two-leaf model") {
    std::vector<NodeSpec> spec(3);
    spec[0].id = 0;
    spec[0].phi = Rational(1);
    spec[1] = {1, 0, Rational(0), Rational(1, 2), ""};
    spec[2] = {2, 0, Rational(0), Rational(1, 2), ""};
    BallTree t = BallTree::build(spec);
    HeatModel m(t, Sigma::standard());
    CHECK(liouville_dimension(m) == 1);
  }
  SUBCASE("depth-5 random trees") {
    Rng rng(59, 0);
    for (int rep = 0; rep < 3; ++rep) {
      BallTree t = testutil::random_balltree(rng, 48);
      HeatModel m(t, Sigma::standard());
      CHECK(liouville_dimension(m) == 1);
    }
  }
  SUBCASE("p-adic model") {
    BallTree t = BallTree::padic(2, 5, 1);
    HeatModel m(t, Sigma::padic_exact(2, 2));
    CHECK(liouville_dimension(m) == 1);
  }
}
