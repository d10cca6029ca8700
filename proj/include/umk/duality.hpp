// The two directions of the random-walk / boundary-process duality.
//
// Forward: a transient absorbing walk induces the standard process on its
// boundary with ultra-metric element phi = G(.,o) and measure nu_o; its jump
// kernel equals the Naim kernel and the Laplacian eigenvalue attached to a
// child v is 1/G(v-,o).
//
// Backward: from (phi, mu) the walk is reconstructed uniquely up to the
// linear time change C; terminal vertices take phi = 0, which turns the
// hitting recursion into absorption.
#pragma once

#include "umk/balltree.hpp"
#include "umk/heat.hpp"
#include "umk/spectral.hpp"
#include "umk/walk.hpp"

#include <vector>

namespace umk {

struct BoundaryModel {
  BallTree tree;                 // phi(v) = G(v,o) on internal nodes
  std::vector<Rational> nu;      // leaf masses = limit distribution
  std::vector<int> node_of_vertex;  // walk vertex -> tree node id
};

inline BoundaryModel walk_to_boundary(const SolvedWalk<Rational>& s) {
  const TreeShape& sh = s.shape();
  std::vector<NodeSpec> spec;
  spec.reserve(sh.size());
  std::vector<Rational> nu = s.limit_distribution(sh.root());
  for (int v = 0; v < sh.size(); ++v) {
    NodeSpec n;
    n.id = v;
    n.parent = sh.vtx[v].parent;
    if (sh.terminal(v)) {
      n.mass = nu[sh.leaf_ord[v]];
    } else {
      n.phi = s.green(v, sh.root());
      if (v != sh.root()) {
        Rational parent_phi = s.green(sh.vtx[v].parent, sh.root());
        if (!(n.phi < parent_phi))
          fail(errc::degenerate_green, "G(.,o) fails to decrease along a root path");
      }
    }
    spec.push_back(std::move(n));
  }
  BoundaryModel out{BallTree::build(spec), std::move(nu), {}};
  out.node_of_vertex.assign(sh.size(), -1);
  for (int id = 0; id < out.tree.size(); ++id)
    out.node_of_vertex[out.tree.node(id).external_id] = id;
  return out;
}

struct WalkFromBoundary {
  Walk<Rational> walk;
  Rational C{0};
  std::vector<int> vertex_of_node;  // tree node id -> walk vertex (identity here)
};

inline WalkFromBoundary boundary_to_walk(const BallTree& tree) {
  if (tree.total_mass_q() != 1)
    fail(errc::model_error, "boundary measure must be a probability measure");
  int n = tree.size();
  for (int v = 1; v < n; ++v)
    if (!tree.node(v).leaf() && !(tree.node(v).phi_q < tree.node(tree.node(v).parent).phi_q))
      fail(errc::non_decreasing_phi, "phi must strictly decrease");
  for (int ell : tree.leaves())
    if (tree.node(ell).mass_q <= 0) fail(errc::mass_gap, "measure must be fully supported");

  // F~(v, v-) = phi(v)/phi(v-) with phi(terminal) = 0
  std::vector<Rational> f_vu(n, Rational(0)), f_uv(n, Rational(0)), f_o(n, Rational(0));
  for (int v = 1; v < n; ++v)
    if (!tree.node(v).leaf())
      f_vu[v] = tree.node(v).phi_q / tree.node(tree.node(v).parent).phi_q;
  f_o[tree.root()] = 1;
  for (int v = 1; v < n; ++v) {
    const Rational& up = f_o[tree.node(v).parent];
    Rational ratio = tree.node(v).mass_q / up;
    f_uv[v] = ratio / (Rational(1) - f_vu[v] + f_vu[v] * ratio);
    f_o[v] = up * f_uv[v];
  }

  // C from the root equation
  const Rational phi_o = tree.node(tree.root()).phi_q;
  Rational c = Rational(1) / phi_o;
  for (int u : tree.node(tree.root()).children) {
    if (tree.node(u).leaf()) continue;  // phi(terminal) = 0 contributes nothing
    const Rational& phi_u = tree.node(u).phi_q;
    c += (phi_u / phi_o) / (phi_o - phi_u) * tree.node(u).mass_q;
  }

  // G~(u,u) on interior vertices, then transition probabilities
  auto edge_f = [&](int from, int to) -> const Rational& {
    // from ~ to; returns F~(from, to)
    if (tree.node(to).parent == from) return f_uv[to];
    return f_vu[from];
  };

  Walk<Rational> walk;
  walk.shape = TreeShape::of_balltree(tree);
  walk.up.assign(n, Rational(0));
  walk.down.resize(n);
  for (int u = 0; u < n; ++u) {
    if (tree.node(u).leaf()) continue;
    Rational g(1);
    auto add_neighbour = [&](int v) {
      Rational ff = edge_f(u, v) * edge_f(v, u);
      g += ff / (Rational(1) - ff);
    };
    if (u != tree.root()) add_neighbour(tree.node(u).parent);
    for (int v : tree.node(u).children) add_neighbour(v);

    walk.down[u].reserve(tree.node(u).children.size());
    auto prob = [&](int v) {
      Rational ff = edge_f(u, v) * edge_f(v, u);
      return edge_f(u, v) / (g * (Rational(1) - ff));
    };
    if (u != tree.root()) walk.up[u] = prob(tree.node(u).parent);
    for (int v : tree.node(u).children) walk.down[u].push_back(prob(v));
  }
  walk.validate();

  WalkFromBoundary out;
  out.walk = std::move(walk);
  out.C = c;
  out.vertex_of_node.resize(n);
  for (int v = 0; v < n; ++v) out.vertex_of_node[v] = v;
  return out;
}

struct BoundaryEigenReport {
  int modes_checked = 0;
  bool exact = false;
  double max_residual = 0.0;
  std::vector<int> dims;  // dim H(u) per interior vertex
};

// Verifies L f_v = f_v / G(v-, o) on the boundary model of a solved walk.
inline BoundaryEigenReport boundary_eigencheck(const SolvedWalk<Rational>& s) {
  BoundaryModel bm = walk_to_boundary(s);
  const BallTree& t = bm.tree;
  Sigma sigma = Sigma::standard();
  auto phi_star = exact_phi_star(t, sigma);
  if (!phi_star) fail(errc::model_error, "standard sigma always has exact radii");

  BoundaryEigenReport rep;
  rep.exact = true;
  for (int v = 1; v < t.size(); ++v) {
    EigenMode mode{v, t.node(v).parent, 0.0};
    auto f = mode_vector_exact(t, mode);
    auto lf = exact_apply_laplacian(t, *phi_star, f);
    Quad lambda = Quad(Rational(1)) / (*phi_star)[t.node(v).parent];
    for (size_t i = 0; i < f.size(); ++i) {
      Quad res = lf[i] - lambda * f[i];
      double r = std::abs(to_double(res));
      rep.max_residual = std::max(rep.max_residual, r);
      if (!(res == Quad(Rational(0)))) rep.exact = false;
    }
    ++rep.modes_checked;
  }
  for (int u = 0; u < t.size(); ++u)
    if (!t.node(u).leaf()) rep.dims.push_back(static_cast<int>(t.node(u).children.size()) - 1);
  return rep;
}

}  // namespace umk
