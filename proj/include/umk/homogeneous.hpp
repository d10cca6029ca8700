// Closed forms for the homogeneous walks attached to the fractional
// derivative: on the rooted p-ary tree (compact side, Z_p) and on the
// two-sided homogeneous tree with a reference end (non-compact side, Q_p).
// All quantities are exact field elements in s = p^{-alpha}.
#pragma once

#include "umk/errors.hpp"
#include "umk/quadratic.hpp"
#include "umk/walk.hpp"

#include <vector>

namespace umk {

class HomogeneousWalk {
 public:
  // alpha = alpha_half_num / 2
  HomogeneousWalk(long p, long alpha_half_num, bool two_sided = false)
      : p_(p), alpha_half_(alpha_half_num), two_sided_(two_sided),
        s_(half_power(p, -alpha_half_num)) {
    if (p < 2 || alpha_half_num <= 0)
      fail(errc::model_error, "homogeneous walk needs p >= 2, alpha > 0");
  }

  long p() const { return p_; }
  double alpha() const { return alpha_half_ / 2.0; }
  bool two_sided() const { return two_sided_; }

  // s = p^{-alpha}
  const Quad& s() const { return s_; }

  // c = (1 + p^{-alpha})^{-1}: upward probability 1-c, downward c/p
  Quad c() const { return Quad(Rational(1)) / (Quad(Rational(1)) + s_); }
  Quad p_up() const { return Quad(Rational(1)) - c(); }
  Quad p_down() const { return c() / Quad(Rational(p_)); }

  // ---- rooted tree T_p^o ----
  Quad hit_root(long level) const { return quad_pow(s_, level); }       // F(v,o)
  Quad green_root(long level) const {                                   // G(v,o)
    return quad_pow(s_, level) / (Quad(Rational(1)) - s_);
  }
  Quad green_oo() const { return Quad(Rational(1)) / (Quad(Rational(1)) - s_); }

  // boundary-process eigenvalue attached to a child of a level-k vertex
  Quad boundary_eigenvalue(long k) const { return Quad(Rational(1)) / green_root(k); }

  // spec D^alpha = (p^alpha / (1 - p^{-alpha})) spec L
  Quad spectrum_ratio() const {
    return Quad(Rational(1)) / (s_ * (Quad(Rational(1)) - s_));
  }

  // linear time change between the boundary process and D^alpha
  Quad time_change() const { return s_ * (Quad(Rational(1)) - s_); }

  // ---- two-sided tree with reference end ----
  Quad f_up() const { return s_; }                          // F(v, v-)
  Quad f_down() const { return Quad(Rational(1), Rational(0), 0) / Quad(Rational(p_)); }
  Quad green_vv() const {                                    // G(v,v)
    return (Quad(Rational(1)) + s_) /
           (Quad(Rational(1)) - s_ / Quad(Rational(p_)));
  }
  Quad nu_own_branch() const {                               // nu_v(dT_v)
    return (Quad(Rational(1)) - s_) /
           (Quad(Rational(1)) - s_ / Quad(Rational(p_)));
  }
  Quad theta() const {                                       // m(o) nu_o(dT_o) / G(o,o)
    return (Quad(Rational(1)) - s_) / (Quad(Rational(1)) + s_);
  }
  Quad martin_kernel(long h) const { return quad_pow(s_, h); }   // K(v,varpi) = p^{-alpha h}
  Quad reversing_measure(long h) const {                          // m(v) = p^{(alpha-1)h}
    return quad_pow(s_, -h) * rational_pow(Rational(p_), -h);
  }
  Quad phi(long h) const { return martin_kernel(h) / theta(); }
  Quad j_kernel(long h) const {
    Quad k = martin_kernel(h);
    return theta() * theta() / (k * k) * green_vv() / reversing_measure(h);
  }
  // J(x,y) = C* J_alpha(x,y)
  Quad time_change_noncompact() const {
    return s_ * (Quad(Rational(1)) - s_) / (Quad(Rational(1)) + s_);
  }

 private:
  long p_;
  long alpha_half_;
  bool two_sided_;
  Quad s_;
};

struct NoncompactBoundary {
  Quad theta;
  Quad c_star;
  std::vector<long> horocycles;
  std::vector<Quad> phi;
  std::vector<Quad> j;
  std::vector<Quad> martin;
  std::vector<Quad> measure;
};

inline NoncompactBoundary noncompact_boundary(const HomogeneousWalk& w, long window) {
  NoncompactBoundary out;
  out.theta = w.theta();
  out.c_star = w.time_change_noncompact();
  for (long h = -window; h <= window; ++h) {
    out.horocycles.push_back(h);
    out.phi.push_back(w.phi(h));
    out.j.push_back(w.j_kernel(h));
    out.martin.push_back(w.martin_kernel(h));
    out.measure.push_back(w.reversing_measure(h));
  }
  return out;
}

// Depth-n truncation of the rooted homogeneous walk, leaves absorbing.
// Exact probabilities require rational c; root splits 1/p per child,
// interior vertices (1-c) upward and c/p per child.
inline Walk<Rational> truncated_rooted_walk(long p, const Rational& c, int depth) {
  if (!(c > 0 && c < 1)) fail(errc::model_error, "need c in (0,1)");
  TreeShape sh;
  struct Item { int parent; int level; };
  std::vector<Item> items{{-1, 0}};
  for (size_t head = 0; head < items.size(); ++head)
    if (items[head].level < depth)
      for (long i = 0; i < p; ++i)
        items.push_back({static_cast<int>(head), items[head].level + 1});
  sh.vtx.resize(items.size());
  for (size_t v = 1; v < items.size(); ++v) {
    sh.vtx[v].parent = items[v].parent;
    sh.vtx[items[v].parent].children.push_back(static_cast<int>(v));
  }
  sh.index();

  Walk<Rational> w;
  w.shape = std::move(sh);
  int n = static_cast<int>(items.size());
  w.up.assign(n, Rational(0));
  w.down.resize(n);
  for (int v = 0; v < n; ++v) {
    if (w.shape.terminal(v)) continue;
    Rational child_prob = v == 0 ? Rational(1, p) : c / p;
    if (v != 0) w.up[v] = Rational(1) - c;
    w.down[v].assign(w.shape.vtx[v].children.size(), child_prob);
  }
  return w;
}

}  // namespace umk
