// Seeded random model instances: tree shapes, ultra-metric elements with
// probability measures, conductance walks. Shared by the batch subcommands
// and the verification suites.
#pragma once

#include "umk/balltree.hpp"
#include "umk/simulate.hpp"
#include "umk/walk.hpp"

#include <vector>

namespace umk {

inline Rational random_rational(Rng& rng, long max_num = 16, long max_den = 16) {
  long num = 1 + static_cast<long>(rng.next() % static_cast<uint64_t>(max_num));
  long den = 1 + static_cast<long>(rng.next() % static_cast<uint64_t>(max_den));
  return Rational(num, den);
}

// random tree shape with interior degrees in [2, max_deg], about target_size
// vertices, depth capped
inline TreeShape random_shape(Rng& rng, int target_size, int max_deg = 4, int max_depth = 8) {
  TreeShape sh;
  struct Item { int parent; int depth; };
  std::vector<Item> items{{-1, 0}};
  size_t head = 0;
  while (head < items.size()) {
    Item it = items[head];
    bool must_leaf = it.depth >= max_depth ||
                     static_cast<int>(items.size()) + max_deg > target_size;
    bool leaf = it.depth > 0 && (must_leaf || rng.next() % 100 < 35);
    if (!leaf) {
      int deg = 2 + static_cast<int>(rng.next() % static_cast<uint64_t>(max_deg - 1));
      for (int c = 0; c < deg; ++c) items.push_back({static_cast<int>(head), it.depth + 1});
    }
    ++head;
  }
  sh.vtx.resize(items.size());
  for (size_t v = 1; v < items.size(); ++v) {
    sh.vtx[v].parent = items[v].parent;
    sh.vtx[items[v].parent].children.push_back(static_cast<int>(v));
  }
  sh.index();
  return sh;
}

// random ultra-metric element + measure on a random shape; the measure is
// normalized to a probability measure unless asked otherwise
inline BallTree random_balltree(Rng& rng, int target_size, bool normalize_mass = true,
                                int max_depth = 8) {
  TreeShape sh = random_shape(rng, target_size, 4, max_depth);
  std::vector<NodeSpec> spec(sh.size());
  std::vector<Rational> phi(sh.size());
  std::vector<Rational> weight(sh.size(), Rational(0));
  Rational total(0);
  for (int v = 0; v < sh.size(); ++v) {
    spec[v].id = v;
    spec[v].parent = sh.vtx[v].parent;
    if (!sh.terminal(v)) {
      if (v == sh.root()) phi[v] = Rational(1);
      else {
        Rational f = Rational(1 + static_cast<long>(rng.next() % 6), 8);
        phi[v] = phi[sh.vtx[v].parent] * f;
      }
      spec[v].phi = phi[v];
    } else {
      weight[v] = random_rational(rng);
      total += weight[v];
    }
  }
  for (int v = 0; v < sh.size(); ++v)
    if (sh.terminal(v)) spec[v].mass = normalize_mass ? weight[v] / total : weight[v];
  return BallTree::build(spec);
}

// random conductance walk: p(u,v) = a(u,v)/sum of incident conductances,
// terminal vertices absorbing
inline Walk<Rational> random_conductance_walk(Rng& rng, int target_size) {
  TreeShape sh = random_shape(rng, target_size);
  std::vector<Rational> cond(sh.size(), Rational(0));
  for (int v = 1; v < sh.size(); ++v) cond[v] = random_rational(rng);
  Walk<Rational> w;
  w.shape = sh;
  w.up.assign(sh.size(), Rational(0));
  w.down.resize(sh.size());
  for (int u = 0; u < sh.size(); ++u) {
    if (sh.terminal(u)) continue;
    Rational total = u == sh.root() ? Rational(0) : cond[u];
    for (int c : sh.vtx[u].children) total += cond[c];
    if (u != sh.root()) w.up[u] = cond[u] / total;
    for (int c : sh.vtx[u].children) w.down[u].push_back(cond[c] / total);
  }
  return w;
}

}  // namespace umk
