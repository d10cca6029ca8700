// Nearest-neighbour random walks on finite rooted trees with absorbing
// terminal vertices: hitting kernels F/U/G, reversing measure, limit
// distributions, the Naim kernel and the boundary Dirichlet form.
//
// The scalar is a template parameter: Rational walks solve everything
// exactly, double walks trade exactness for speed.
#pragma once

#include "umk/balltree.hpp"
#include "umk/errors.hpp"
#include "umk/rational.hpp"

#include <algorithm>
#include <vector>

namespace umk {

struct TreeShape {
  struct Vertex {
    int parent = -1;
    int child_slot = -1;  // index of this vertex in parent's children
    std::vector<int> children;
    int depth = 0;
  };
  std::vector<Vertex> vtx;
  std::vector<int> leaves;
  std::vector<int> leaf_ord;

  int root() const { return 0; }
  int size() const { return static_cast<int>(vtx.size()); }
  bool terminal(int v) const { return vtx[v].children.empty(); }

  static TreeShape of_balltree(const BallTree& t) {
    TreeShape s;
    s.vtx.resize(t.size());
    for (int v = 0; v < t.size(); ++v) {
      s.vtx[v].parent = t.node(v).parent;
      s.vtx[v].children = t.node(v).children;
      s.vtx[v].depth = t.node(v).depth;
    }
    s.index();
    return s;
  }

  void index() {
    leaves.clear();
    leaf_ord.assign(vtx.size(), -1);
    for (size_t v = 0; v < vtx.size(); ++v) {
      for (size_t i = 0; i < vtx[v].children.size(); ++i)
        vtx[vtx[v].children[i]].child_slot = static_cast<int>(i);
      if (vtx[v].children.empty()) {
        leaf_ord[v] = static_cast<int>(leaves.size());
        leaves.push_back(static_cast<int>(v));
      }
    }
    vtx[0].depth = 0;
    for (size_t v = 1; v < vtx.size(); ++v)
      if (vtx[v].parent >= 0 && static_cast<size_t>(vtx[v].parent) < v)
        vtx[v].depth = vtx[vtx[v].parent].depth + 1;
  }

  int confluent(int a, int b) const {
    while (a != b) {
      if (vtx[a].depth >= vtx[b].depth) a = vtx[a].parent;
      else b = vtx[b].parent;
    }
    return a;
  }

  std::vector<int> path(int from, int to) const {
    int w = confluent(from, to);
    std::vector<int> up, down;
    for (int v = from; v != w; v = vtx[v].parent) up.push_back(v);
    for (int v = to; v != w; v = vtx[v].parent) down.push_back(v);
    up.push_back(w);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }
};

template <class S>
struct Walk {
  TreeShape shape;
  std::vector<S> up;                 // p(v, v-); 0 at root and terminals
  std::vector<std::vector<S>> down;  // p(v, children[i]); empty at terminals

  void validate() const {
    for (int v = 0; v < shape.size(); ++v) {
      if (shape.terminal(v)) continue;
      S row = v == shape.root() ? S(0) : up[v];
      if (v != shape.root() && !(up[v] > S(0)))
        fail(errc::sub_stochastic_interior, "interior vertex missing upward probability");
      for (const S& q : down[v]) {
        if (!(q > S(0))) fail(errc::sub_stochastic_interior, "edge probability must be positive");
        row += q;
      }
      if (!sums_to_one(row))
        fail(errc::sub_stochastic_interior, "interior row does not sum to 1");
    }
  }

  S prob(int from, int to) const {
    if (shape.vtx[to].parent == from) return down[from][shape.vtx[to].child_slot];
    if (shape.vtx[from].parent == to) return up[from];
    fail(errc::model_error, "prob() on a non-edge");
  }
};

template <class S>
struct SolvedWalk {
  Walk<S> walk;
  std::vector<S> f_up;                 // F(v, v-)
  std::vector<std::vector<S>> f_down;  // F(u, children[i])
  std::vector<S> u_ret;                // U(v,v), interior
  std::vector<S> g_diag;               // G(v,v), interior
  std::vector<S> m;                    // reversing measure, m(root) = 1 (interior)

  const TreeShape& shape() const { return walk.shape; }

  // F(u,v) along the geodesic (eq of path products)
  S hit(int from, int to) const {
    if (from == to) return S(1);
    auto path = shape().path(from, to);
    S acc(1);
    for (size_t i = 0; i + 1 < path.size(); ++i) acc *= step_hit(path[i], path[i + 1]);
    return acc;
  }

  S green(int from, int to) const {
    if (shape().terminal(to)) fail(errc::model_error, "G(.,terminal) is not defined");
    return hit(from, to) * g_diag[to];
  }

  // nu_u(dT_v): mass the walk started at u leaves in the branch below v
  S harmonic_measure(int start, int v) const {
    if (v == shape().root()) return S(1);
    const S& fv = f_up[v];             // F(v, v-)
    S fdown = f_down[shape().vtx[v].parent][shape().vtx[v].child_slot];  // F(v-, v)
    S denom = S(1) - fdown * fv;
    bool inside = in_branch(start, v);
    if (!inside) return hit(start, v) * (S(1) - fv) / denom;
    return S(1) - hit(start, v) * (fv - fdown * fv) / denom;
  }

  // limit distribution over terminal vertices: nu_u(leaf) = F(u, leaf)
  std::vector<S> limit_distribution(int start) const {
    std::vector<S> nu;
    nu.reserve(shape().leaves.size());
    for (int ell : shape().leaves) nu.push_back(hit(start, ell));
    return nu;
  }

  // Poisson transform h(u) = sum_leaf nu_u(leaf) phi(leaf)
  S poisson(int u, const std::vector<S>& phi_on_leaves) const {
    S acc(0);
    for (size_t i = 0; i < shape().leaves.size(); ++i)
      acc += hit(u, shape().leaves[i]) * phi_on_leaves[i];
    return acc;
  }

  // conductance of the edge [v-, v]
  S conductance(int v) const {
    int par = shape().vtx[v].parent;
    return m[par] * walk.down[par][shape().vtx[v].child_slot];
  }

  // E_T(f,g) over edges
  S energy(const std::vector<S>& f, const std::vector<S>& g) const {
    S acc(0);
    for (int v = 1; v < shape().size(); ++v) {
      int par = shape().vtx[v].parent;
      acc += conductance(v) * (f[v] - f[par]) * (g[v] - g[par]);
    }
    return acc;
  }

  // Naim kernel for distinct leaves x, y w.r.t. the root
  S naim(int leaf_x, int leaf_y) const {
    if (leaf_x == leaf_y) fail(errc::diagonal_query, "Naim kernel diverges on the diagonal");
    int w = shape().confluent(leaf_x, leaf_y);
    int o = shape().root();
    return m[o] / (g_diag[o] * hit(o, w) * hit(w, o));
  }

 private:
  S step_hit(int from, int to) const {
    if (shape().vtx[from].parent == to) return f_up[from];
    return f_down[from][shape().vtx[to].child_slot];
  }

  bool in_branch(int u, int v) const {
    for (int w = u; w >= 0; w = shape().vtx[w].parent)
      if (w == v) return true;
    return false;
  }
};

// Leaf-to-root then root-to-leaf sweeps solving all first-passage kernels.
template <class S>
SolvedWalk<S> solve_walk(Walk<S> walk) {
  walk.validate();
  const TreeShape& sh = walk.shape;
  int n = sh.size();
  SolvedWalk<S> s;
  s.f_up.assign(n, S(0));
  s.f_down.resize(n);
  s.u_ret.assign(n, S(0));
  s.g_diag.assign(n, S(0));
  s.m.assign(n, S(0));

  // upward pass: F(v, v-) bottom-up (vertices are level-ordered)
  for (int v = n - 1; v >= 1; --v) {
    if (sh.terminal(v)) continue;  // absorbed: F(v, v-) = 0
    S ret(0);
    for (size_t i = 0; i < sh.vtx[v].children.size(); ++i)
      ret += walk.down[v][i] * s.f_up[sh.vtx[v].children[i]];
    s.f_up[v] = walk.up[v] / (S(1) - ret);
  }

  // downward pass: F(u, child) top-down
  for (int u = 0; u < n; ++u) {
    if (sh.terminal(u)) continue;
    s.f_down[u].assign(sh.vtx[u].children.size(), S(0));
    S blocked(0);  // sum over detours that must return to u first
    if (u != sh.root())
      blocked += walk.up[u] * s.f_down[sh.vtx[u].parent][sh.vtx[u].child_slot];
    for (size_t j = 0; j < sh.vtx[u].children.size(); ++j)
      blocked += walk.down[u][j] * s.f_up[sh.vtx[u].children[j]];
    for (size_t i = 0; i < sh.vtx[u].children.size(); ++i) {
      S other = blocked - walk.down[u][i] * s.f_up[sh.vtx[u].children[i]];
      s.f_down[u][i] = walk.down[u][i] / (S(1) - other);
    }
  }

  // U and G on interior vertices
  for (int v = 0; v < n; ++v) {
    if (sh.terminal(v)) continue;
    S u_sum(0);
    if (v != sh.root())
      u_sum += walk.up[v] * s.f_down[sh.vtx[v].parent][sh.vtx[v].child_slot];
    for (size_t i = 0; i < sh.vtx[v].children.size(); ++i)
      u_sum += walk.down[v][i] * s.f_up[sh.vtx[v].children[i]];
    s.u_ret[v] = u_sum;
    s.g_diag[v] = S(1) / (S(1) - u_sum);
  }

  // reversing measure on interior vertices, m(root) = 1
  s.m[sh.root()] = S(1);
  for (int v = 1; v < n; ++v) {
    if (sh.terminal(v)) continue;
    int par = sh.vtx[v].parent;
    s.m[v] = s.m[par] * walk.down[par][sh.vtx[v].child_slot] / walk.up[v];
  }

  s.walk = std::move(walk);
  return s;
}

// Re-orient the tree at a new (interior) root, keeping every directed
// transition probability.
template <class S>
Walk<S> re_root(const Walk<S>& w, int new_root) {
  const TreeShape& sh = w.shape;
  if (sh.terminal(new_root)) fail(errc::model_error, "cannot root at a terminal vertex");
  int n = sh.size();
  // adjacency with probabilities
  std::vector<std::vector<std::pair<int, S>>> adj(n);
  for (int v = 1; v < n; ++v) {
    int par = sh.vtx[v].parent;
    adj[par].emplace_back(v, w.down[par][sh.vtx[v].child_slot]);
    if (!sh.terminal(v)) adj[v].emplace_back(par, w.up[v]);
    else adj[v].emplace_back(par, S(0));  // absorbing: no upward move
  }
  // BFS from new root building the re-oriented shape
  Walk<S> out;
  out.shape.vtx.resize(n);
  std::vector<int> remap(n, -1);
  remap[new_root] = 0;
  std::vector<int> bfs{new_root};
  std::vector<bool> seen(n, false);
  seen[new_root] = true;
  for (size_t head = 0; head < bfs.size(); ++head) {
    int u = bfs[head];
    for (auto& [v, q] : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        remap[v] = static_cast<int>(bfs.size());
        bfs.push_back(v);
      }
  }
  out.up.assign(n, S(0));
  out.down.resize(n);
  for (size_t i = 0; i < bfs.size(); ++i) {
    int u = bfs[i];
    for (auto& [v, q] : adj[u]) {
      if (remap[v] > remap[u]) {  // v is a child in the new orientation
        out.shape.vtx[remap[v]].parent = static_cast<int>(i);
        out.shape.vtx[remap[u]].children.push_back(remap[v]);
        out.down[i].push_back(q);
      } else {
        out.up[i] = q;
      }
    }
  }
  out.shape.index();
  return out;
}

struct DoobNaim {
  double lhs = 0, rhs = 0, diff = 0;
};

// Doob-Naim identity: energy of the harmonic extensions against the Naim
// double sum over the boundary.
template <class S>
DoobNaim doob_naim_check(const SolvedWalk<S>& s, const std::vector<S>& phi,
                         const std::vector<S>& psi, S* lhs_exact = nullptr,
                         S* rhs_exact = nullptr) {
  const TreeShape& sh = s.shape();
  int n = sh.size();
  std::vector<S> h_phi(n, S(0)), h_psi(n, S(0));
  for (int v = 0; v < n; ++v) {
    if (sh.terminal(v)) {
      h_phi[v] = phi[sh.leaf_ord[v]];
      h_psi[v] = psi[sh.leaf_ord[v]];
    } else {
      h_phi[v] = s.poisson(v, phi);
      h_psi[v] = s.poisson(v, psi);
    }
  }
  S lhs = s.energy(h_phi, h_psi);

  std::vector<S> nu = s.limit_distribution(sh.root());
  S rhs(0);
  int leaves = static_cast<int>(sh.leaves.size());
  for (int a = 0; a < leaves; ++a)
    for (int b = 0; b < leaves; ++b) {
      if (a == b) continue;
      rhs += (phi[a] - phi[b]) * (psi[a] - psi[b]) * s.naim(sh.leaves[a], sh.leaves[b]) *
             nu[a] * nu[b];
    }
  rhs = rhs / S(2);

  if (lhs_exact) *lhs_exact = lhs;
  if (rhs_exact) *rhs_exact = rhs;
  DoobNaim out;
  out.lhs = to_double(lhs);
  out.rhs = to_double(rhs);
  out.diff = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace umk
