// Monte Carlo sampling of the isotropic jump process and of tree walks.
//
// One-shot sampling for the jump process: the time-t marginal picks an
// ancestor ball with the exact coefficients c_w(t) and then a mu-uniform
// atom inside it, so there is no time-discretization error. Streams are
// keyed per path index, making runs reproducible independent of scheduling.
#pragma once

#include "umk/heat.hpp"
#include "umk/walk.hpp"

#include <cstdint>
#include <vector>

namespace umk {

// splitmix64-seeded xoshiro256++; one independent stream per (seed, key)
class Rng {
 public:
  Rng(uint64_t seed, uint64_t key);
  uint64_t next();
  double uniform();  // [0,1)

 private:
  uint64_t s_[4];
};

struct Empirical {
  std::vector<double> probability;  // per cell
  std::vector<double> std_error;    // sqrt(p(1-p)/n)
  std::vector<long> count;
  long paths = 0;

  double tv_distance(const std::vector<double>& exact) const;
};

// time-t marginal of the jump process started at leaf x0
Empirical sample_jump(const HeatModel& model, int leaf_x0, double t, long n_paths,
                      uint64_t seed);

// exact one-shot law for the same scheme: P(leaf) = sum_w c_w(t) mass(leaf)/m(w)
std::vector<double> one_shot_law(const HeatModel& model, int leaf_x0, double t);

// chain mode: iterate the exact t-step marginal `steps` times
Empirical sample_jump_chain(const HeatModel& model, int leaf_x0, double t_step, int steps,
                            long n_paths, uint64_t seed);

struct WalkSample {
  Empirical absorption;
  double mean_steps = 0;
};

WalkSample sample_walk(const Walk<double>& walk, int start, long n_paths, uint64_t seed);

Walk<double> to_double_walk(const Walk<Rational>& w);

struct MomentEstimate {
  double estimate = 0;
  double ci_lo = 0, ci_hi = 0;  // bootstrap percentile interval
  double std_error = 0;
  long paths = 0;
};

MomentEstimate empirical_moment(const HeatModel& model, int leaf_x0, double gamma, double t,
                                long n_paths, uint64_t seed, int bootstrap = 500);

// two-sample chi^2 statistic and a Wilson-Hilferty quantile approximation
double chi2_two_sample(const Empirical& a, const Empirical& b, int* dof);
double chi2_quantile(int dof, double prob);

}  // namespace umk
