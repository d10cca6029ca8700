#include "umk/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace umk {

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed, uint64_t key) {
  uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * (key + 1));
  for (auto& s : s_) s = splitmix64(state);
}

uint64_t Rng::next() {
  uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return (next() >> 11) * 0x1.0p-53; }

double Empirical::tv_distance(const std::vector<double>& exact) const {
  double tv = 0;
  for (size_t i = 0; i < probability.size(); ++i) tv += std::abs(probability[i] - exact[i]);
  return tv / 2;
}

namespace {

Empirical from_counts(std::vector<long> counts, long n) {
  Empirical e;
  e.count = std::move(counts);
  e.paths = n;
  e.probability.reserve(e.count.size());
  e.std_error.reserve(e.count.size());
  for (long c : e.count) {
    double p = static_cast<double>(c) / n;
    e.probability.push_back(p);
    e.std_error.push_back(std::sqrt(p * (1 - p) / n));
  }
  return e;
}

// cumulative ball weights along the path of x0 (leaf atom included)
struct OneShot {
  std::vector<int> node;       // path nodes, leaf first
  std::vector<double> cum;     // cumulative c_w(t)

  OneShot(const HeatModel& model, int leaf_x0, double t) {
    const BallTree& tree = model.tree();
    const auto& path = model.path(leaf_x0);
    double acc = 0;
    // leaf atom keeps sigma^t(phi of its parent)
    node.push_back(leaf_x0);
    acc += model.sigma().pow_t(tree.node(path[path.size() - 2]).phi, t);
    cum.push_back(acc);
    for (size_t i = path.size() - 1; i-- > 1;) {
      node.push_back(path[i]);
      acc += model.sigma().pow_t(tree.node(path[i - 1]).phi, t) -
             model.sigma().pow_t(tree.node(path[i]).phi, t);
      cum.push_back(acc);
    }
    node.push_back(path[0]);
    cum.push_back(1.0);
  }

  int pick(double u) const {
    size_t i =
        static_cast<size_t>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    return node[std::min(i, node.size() - 1)];
  }
};

int descend_uniform(const BallTree& tree, int ball, Rng& rng) {
  int v = ball;
  while (!tree.node(v).leaf()) {
    double u = rng.uniform() * tree.node(v).mass;
    double acc = 0;
    int chosen = tree.node(v).children.back();
    for (int c : tree.node(v).children) {
      acc += tree.node(c).mass;
      if (u < acc) { chosen = c; break; }
    }
    v = chosen;
  }
  return v;
}

}  // namespace

std::vector<double> one_shot_law(const HeatModel& model, int leaf_x0, double t) {
  const BallTree& tree = model.tree();
  OneShot shot(model, leaf_x0, t);
  std::vector<double> law(tree.leaf_count(), 0.0);
  double prev = 0;
  for (size_t i = 0; i < shot.node.size(); ++i) {
    double c = shot.cum[i] - prev;
    prev = shot.cum[i];
    int w = shot.node[i];
    if (tree.node(w).leaf()) {
      law[tree.leaf_ordinal(w)] += c;
    } else {
      // mu-uniform over the ball: leaf gets c * mass(leaf)/m(w)
      std::vector<int> stack{w};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (tree.node(v).leaf())
          law[tree.leaf_ordinal(v)] += c * tree.node(v).mass / tree.node(w).mass;
        else
          for (int ch : tree.node(v).children) stack.push_back(ch);
      }
    }
  }
  return law;
}

Empirical sample_jump(const HeatModel& model, int leaf_x0, double t, long n_paths,
                      uint64_t seed) {
  const BallTree& tree = model.tree();
  OneShot shot(model, leaf_x0, t);
  std::vector<long> counts(tree.leaf_count(), 0);
  for (long i = 0; i < n_paths; ++i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    int ball = shot.pick(rng.uniform());
    int leaf = tree.node(ball).leaf() ? ball : descend_uniform(tree, ball, rng);
    ++counts[tree.leaf_ordinal(leaf)];
  }
  return from_counts(std::move(counts), n_paths);
}

Empirical sample_jump_chain(const HeatModel& model, int leaf_x0, double t_step, int steps,
                            long n_paths, uint64_t seed) {
  const BallTree& tree = model.tree();
  std::vector<OneShot> shots;
  shots.reserve(tree.leaf_count());
  for (int i = 0; i < tree.leaf_count(); ++i)
    shots.emplace_back(model, tree.leaf_id(i), t_step);
  std::vector<long> counts(tree.leaf_count(), 0);
  for (long i = 0; i < n_paths; ++i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    int at = leaf_x0;
    for (int s = 0; s < steps; ++s) {
      const OneShot& shot = shots[tree.leaf_ordinal(at)];
      int ball = shot.pick(rng.uniform());
      at = tree.node(ball).leaf() ? ball : descend_uniform(tree, ball, rng);
    }
    ++counts[tree.leaf_ordinal(at)];
  }
  return from_counts(std::move(counts), n_paths);
}

Walk<double> to_double_walk(const Walk<Rational>& w) {
  Walk<double> out;
  out.shape = w.shape;
  out.up.reserve(w.up.size());
  for (const auto& q : w.up) out.up.push_back(to_double(q));
  out.down.resize(w.down.size());
  for (size_t i = 0; i < w.down.size(); ++i)
    for (const auto& q : w.down[i]) out.down[i].push_back(to_double(q));
  return out;
}

WalkSample sample_walk(const Walk<double>& walk, int start, long n_paths, uint64_t seed) {
  const TreeShape& sh = walk.shape;
  if (sh.leaves.empty()) fail(errc::non_absorbing, "walk has no terminal vertices");
  std::vector<long> counts(sh.leaves.size(), 0);
  double steps_total = 0;
  for (long i = 0; i < n_paths; ++i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    int at = start;
    long steps = 0;
    while (!sh.terminal(at)) {
      double u = rng.uniform();
      double acc = 0;
      int next = -1;
      if (at != sh.root()) {
        acc += walk.up[at];
        if (u < acc) next = sh.vtx[at].parent;
      }
      if (next < 0) {
        next = sh.vtx[at].children.back();
        for (size_t c = 0; c < sh.vtx[at].children.size(); ++c) {
          acc += walk.down[at][c];
          if (u < acc) { next = sh.vtx[at].children[c]; break; }
        }
      }
      at = next;
      ++steps;
    }
    ++counts[sh.leaf_ord[at]];
    steps_total += static_cast<double>(steps);
  }
  WalkSample out;
  out.absorption = from_counts(std::move(counts), n_paths);
  out.mean_steps = steps_total / static_cast<double>(n_paths);
  return out;
}

namespace {

// deterministic binomial sampler: geometric waiting-time inversion when the
// mean is small, normal approximation with continuity correction otherwise
long binomial(Rng& rng, long n, double p) {
  if (p <= 0) return 0;
  if (p >= 1) return n;
  if (p > 0.5) return n - binomial(rng, n, 1 - p);
  double np = static_cast<double>(n) * p;
  if (np <= 60.0) {
    long k = 0, sum = 0;
    double lq = std::log1p(-p);
    while (true) {
      double u = std::max(rng.uniform(), 1e-300);
      sum += static_cast<long>(std::floor(std::log(u) / lq)) + 1;
      if (sum > n) break;
      ++k;
    }
    return k;
  }
  // here np > 60 and p <= 1/2, so the variance exceeds 30
  double var = np * (1 - p);
  double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
  double z = std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
  long k = std::lround(np + std::sqrt(var) * z);
  return std::clamp(k, 0L, n);
}

}  // namespace

MomentEstimate empirical_moment(const HeatModel& model, int leaf_x0, double gamma, double t,
                                long n_paths, uint64_t seed, int bootstrap) {
  const BallTree& tree = model.tree();
  if (t == 0) return {0.0, 0.0, 0.0, 0.0, n_paths};
  Empirical emp = sample_jump(model, leaf_x0, t, n_paths, seed);

  // d*(x0, leaf)^gamma per cell
  std::vector<double> value(tree.leaf_count(), 0.0);
  for (int i = 0; i < tree.leaf_count(); ++i) {
    int ell = tree.leaf_id(i);
    if (ell == leaf_x0) continue;
    value[i] = std::pow(model.phi_star(tree.confluent(leaf_x0, ell)), gamma);
  }

  MomentEstimate est;
  est.paths = n_paths;
  double mean = 0, second = 0;
  for (int i = 0; i < tree.leaf_count(); ++i) {
    mean += emp.probability[i] * value[i];
    second += emp.probability[i] * value[i] * value[i];
  }
  est.estimate = mean;
  est.std_error = std::sqrt(std::max(second - mean * mean, 0.0) / n_paths);

  // multinomial bootstrap on the cell histogram (conditional binomials)
  std::vector<double> means;
  means.reserve(bootstrap);
  Rng rng(seed ^ 0xB00757AAull, 0);
  for (int b = 0; b < bootstrap; ++b) {
    long remaining = n_paths;
    double rest_prob = 1.0;
    double acc = 0;
    for (int i = 0; i < tree.leaf_count() && remaining > 0; ++i) {
      double p = emp.probability[i] / rest_prob;
      long k = i + 1 == tree.leaf_count() ? remaining
                                          : binomial(rng, remaining, std::min(p, 1.0));
      acc += static_cast<double>(k) * value[i];
      remaining -= k;
      rest_prob -= emp.probability[i];
      if (rest_prob <= 0) break;
    }
    means.push_back(acc / n_paths);
  }
  std::sort(means.begin(), means.end());
  est.ci_lo = means[static_cast<size_t>(0.025 * (bootstrap - 1))];
  est.ci_hi = means[static_cast<size_t>(0.975 * (bootstrap - 1))];
  return est;
}

double chi2_two_sample(const Empirical& a, const Empirical& b, int* dof) {
  double stat = 0;
  int used = 0;
  for (size_t i = 0; i < a.count.size(); ++i) {
    double ca = static_cast<double>(a.count[i]), cb = static_cast<double>(b.count[i]);
    double tot = ca + cb;
    if (tot < 5) continue;  // merge-free small-cell guard
    double na = static_cast<double>(a.paths), nb = static_cast<double>(b.paths);
    double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    ++used;
  }
  if (dof) *dof = std::max(used - 1, 1);
  return stat;
}

namespace {

// Abramowitz-Stegun 26.2.23 inverse normal (|error| < 4.5e-4, plenty here)
double inverse_normal(double p) {
  bool upper = p > 0.5;
  double r = upper ? 1 - p : p;
  double t = std::sqrt(-2 * std::log(r));
  double z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                     (1 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
  return upper ? z : -z;
}

}  // namespace

double chi2_quantile(int dof, double prob) {
  // Wilson-Hilferty cube approximation
  double z = inverse_normal(prob);
  double k = static_cast<double>(dof);
  double h = 2.0 / (9.0 * k);
  return k * std::pow(1 - h + z * std::sqrt(h), 3);
}

}  // namespace umk
