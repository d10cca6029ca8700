#include "doctest.h"

#include "umk/balltree.hpp"
#include "umk/heat.hpp"
#include "umk/sigma.hpp"

#include "test_util.hpp"

#include <cmath>
#include <functional>

using namespace umk;

namespace {

BallTree two_leaf() {
  std::vector<NodeSpec> spec(3);
  spec[0].id = 0;
  spec[0].phi = Rational(1);
  spec[1] = {1, 0, Rational(0), Rational(1, 2), ""};
  spec[2] = {2, 0, Rational(0), Rational(1, 2), ""};
  return BallTree::build(spec);
}

}  // namespace

TEST_CASE("smallest legal tree") {
  BallTree t = two_leaf();
  CHECK(t.size() == 3);
  CHECK(t.leaf_count() == 2);
  CHECK(t.total_mass_q() == 1);
  CHECK(t.node(t.root()).phi == 1.0);
}

TEST_CASE("degree-one internal node is rejected") {
  std::vector<NodeSpec> spec(3);
  spec[0].id = 0;
  spec[0].phi = Rational(1);
  spec[1] = {1, 0, Rational(1, 2), Rational(0), ""};  // internal with one child
  spec[2] = {2, 1, Rational(0), Rational(1), ""};
  try {
    BallTree::build(spec);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::degree_one);
  }
}

TEST_CASE("non-monotone radius is rejected") {
  std::vector<NodeSpec> spec = {
      {0, -1, Rational(1, 2), Rational(0), ""},
      {1, 0, Rational(1), Rational(0), ""},  // child radius above parent
      {2, 1, Rational(0), Rational(1, 4), ""},
      {3, 1, Rational(0), Rational(1, 4), ""},
      {4, 0, Rational(0), Rational(1, 2), ""},
  };
  CHECK_THROWS_AS(BallTree::build(spec), error);
}

TEST_CASE("declared internal mass must match the children sum") {
  std::vector<NodeSpec> spec(3);
  spec[0].id = 0;
  spec[0].phi = Rational(1);
  spec[0].mass = Rational(2);  // wrong: leaves sum to 1
  spec[1] = {1, 0, Rational(0), Rational(1, 2), ""};
  spec[2] = {2, 0, Rational(0), Rational(1, 2), ""};
  try {
    BallTree::build(spec);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::mass_mismatch);
  }
}

TEST_CASE("depth-3 binary tree: masses sum bottom-up to 2^-k") {
  std::vector<NodeSpec> spec;
  int next = 0;
  std::function<void(int, int)> gen = [&](int parent, int depth) {
    NodeSpec n;
    n.id = next++;
    n.parent = parent;
    if (depth < 3) n.phi = rational_pow(Rational(2), -depth);
    else n.mass = Rational(1, 8);
    spec.push_back(n);
    int me = n.id;
    if (depth < 3) {
      gen(me, depth + 1);
      gen(me, depth + 1);
    }
  };
  gen(-1, 0);
  BallTree t = BallTree::build(spec);
  REQUIRE(t.leaf_count() == 8);
  for (int v = 0; v < t.size(); ++v)
    CHECK(t.node(v).mass_q == rational_pow(Rational(2), -t.node(v).depth));
}

TEST_CASE("padic trees") {
  SUBCASE("p=2 depth=3: 8 leaves, level masses 2^-k") {
    BallTree t = BallTree::padic(2, 3, 1);
    CHECK(t.leaf_count() == 8);
    for (int v = 0; v < t.size(); ++v)
      CHECK(t.node(v).mass_q == rational_pow(Rational(2), -t.node(v).depth));
  }
  SUBCASE("p=3 depth=1: root with 3 leaves of mass 1/3") {
    BallTree t = BallTree::padic(3, 1, 1);
    CHECK(t.size() == 4);
    CHECK(t.leaf_count() == 3);
    for (int ell : t.leaves()) CHECK(t.node(ell).mass_q == Rational(1, 3));
  }
  SUBCASE("p=2 depth=2 dim=2: 4 children per node, leaf mass 1/16") {
    BallTree t = BallTree::padic(2, 2, 2);
    CHECK(t.leaf_count() == 16);
    for (int v = 0; v < t.size(); ++v)
      if (!t.node(v).leaf()) CHECK(t.node(v).children.size() == 4);
    for (int ell : t.leaves()) CHECK(t.node(ell).mass_q == Rational(1, 16));
  }
}

TEST_CASE("confluent and the induced metric") {
  BallTree t = BallTree::padic(2, 3, 1);
  SUBCASE("x = y gives the leaf and distance 0") {
    int x = t.leaf_id(0);
    CHECK(t.confluent(x, x) == x);
    CHECK(t.distance(x, x) == 0.0);
  }
  SUBCASE("leaves under distinct root children meet at the root") {
    int x = t.leaf_by_label("000");
    int y = t.leaf_by_label("100");
    CHECK(t.confluent(x, y) == t.root());
    CHECK(t.distance(x, y) == 1.0);
  }
  SUBCASE("digit strings 000 and 010 meet at level 1, d = 1/2") {
    int x = t.leaf_by_label("000");
    int y = t.leaf_by_label("010");
    CHECK(t.node(t.confluent(x, y)).depth == 1);
    CHECK(t.distance_q(x, y) == Rational(1, 2));
  }
  SUBCASE("unknown leaf is rejected") {
    CHECK_THROWS_AS(t.confluent(t.root(), t.leaf_id(0)), error);
  }
}

TEST_CASE("intrinsic radius") {
  SUBCASE("standard sigma is the identity on phi") {
    BallTree t = BallTree::padic(2, 4, 1);
    Sigma s = Sigma::standard();
    for (int v = 0; v < t.size(); ++v)
      if (!t.node(v).leaf()) CHECK(s.intrinsic(t.node(v).phi) == doctest::Approx(t.node(v).phi));
  }
  SUBCASE("p-adic sigma: phi* = p^{-alpha(k+1)} at level k") {
    long p = 3;
    double alpha = 2.0;
    Sigma s = Sigma::padic_exact(p, 4);  // alpha = 2
    BallTree t = BallTree::padic(p, 4, 1);
    for (int v = 0; v < t.size(); ++v) {
      if (t.node(v).leaf()) continue;
      double expected = std::pow(static_cast<double>(p), -alpha * (t.node(v).depth + 1));
      CHECK(s.intrinsic(t.node(v).phi) == doctest::Approx(expected).epsilon(1e-14));
      auto exact = s.intrinsic_exact(t.node(v).phi_q);
      REQUIRE(exact.has_value());
      CHECK(*exact == Quad(rational_pow(Rational(p), -2L * (t.node(v).depth + 1))));
    }
  }
  SUBCASE("log-family table value: r=1, alpha=1 gives log 2") {
    double s1 = std::exp(-1.0 / std::log(2.0));
    Sigma s = Sigma::table({{1.0, s1}});
    CHECK(s.intrinsic(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("sigma outside (0,1) is rejected") {
    CHECK_THROWS_AS(Sigma::table({{1.0, 1.5}}), error);
  }
}

TEST_CASE("spectral distribution function") {
  SUBCASE("whole space below the first jump") {
    BallTree t = BallTree::padic(2, 3, 1);
    HeatModel m(t, Sigma::standard());
    double tau = 0.5 / m.phi_star(t.root());
    CHECK(m.spectral_distribution(t.leaf_id(0), tau) == doctest::Approx(1.0));
  }
  SUBCASE("dyadic staircase lookup: tau = 3 gives 4") {
    BallTree t = BallTree::padic(2, 3, 1);
    HeatModel m(t, Sigma::standard());
    CHECK(m.spectral_distribution(t.leaf_id(0), 3.0) == doctest::Approx(4.0));
  }
  SUBCASE("Taibleson staircase: N(p^{k alpha}) = p^{(k-1)n}") {
    long p = 2;
    int n = 2, depth = 4;
    double alpha = 0.5;
    BallTree t = BallTree::padic(p, depth, n);
    HeatModel m(t, Sigma::padic_exact(p, 1));  // alpha = 1/2
    int x = t.leaf_id(0);
    for (int k = 1; k <= depth; ++k) {
      double tau_k = std::pow(static_cast<double>(p), k * alpha);
      double expect = std::pow(static_cast<double>(p), (k - 1) * n);
      CHECK(m.spectral_distribution(x, tau_k) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  SUBCASE("value set is {1/m(v)} along the root path and N is non-decreasing") {
    Rng rng(7, 0);
    BallTree t = testutil::random_balltree(rng, 40);
    HeatModel m(t, Sigma::standard());
    int x = t.leaf_id(0);
    double prev = 0;
    for (double tau = 0.05; tau < 1e5; tau *= 1.7) {
      double nv = m.spectral_distribution(x, tau);
      CHECK(nv >= prev);
      prev = nv;
      bool in_value_set = false;
      for (int v : t.root_path(x))
        if (std::abs(nv - 1.0 / t.node(v).mass) < 1e-12) in_value_set = true;
      CHECK(in_value_set);
    }
  }
}

TEST_CASE("ultra-metric axioms for d and d* on random trees") {
  Rng rng(11, 0);
  for (int rep = 0; rep < 5; ++rep) {
    BallTree t = testutil::random_balltree(rng, 24);
    HeatModel m(t, Sigma::standard());
    int n = t.leaf_count();
    auto d = [&](int a, int b) { return t.distance(t.leaf_id(a), t.leaf_id(b)); };
    auto ds = [&](int a, int b) {
      if (a == b) return 0.0;
      return m.phi_star(t.confluent(t.leaf_id(a), t.leaf_id(b)));
    };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CHECK(d(a, b) == d(b, a));
        CHECK((d(a, b) == 0.0) == (a == b));
        for (int c = 0; c < n; ++c) {
          CHECK(d(a, b) <= std::max(d(a, c), d(c, b)) + 1e-15);
          CHECK(ds(a, b) <= std::max(ds(a, c), ds(c, b)) + 1e-15);
        }
      }
  }
}

TEST_CASE("equal-radius balls partition the space on level-regular trees") {
  BallTree t = BallTree::padic(3, 3, 1);
  for (int depth = 1; depth <= 2; ++depth) {
    Rational sum(0);
    int count = 0;
    for (int v = 0; v < t.size(); ++v)
      if (t.node(v).depth == depth && !t.node(v).leaf()) {
        sum += t.node(v).mass_q;
        ++count;
      }
    CHECK(sum == 1);
    CHECK(count == static_cast<int>(std::pow(3, depth)));
  }
}
