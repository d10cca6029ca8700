// Non-decreasing pure-jump function on (0, inf), closed-ball convention:
// value(s) = v[i] for s in [x[i], x[i+1]), v[-inf..x[0]) = base.
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace umk {

struct Staircase {
  double base = 0.0;            // value left of the first jump
  std::vector<double> jump_at;  // strictly increasing jump locations
  std::vector<double> value;    // value on [jump_at[i], jump_at[i+1])

  double operator()(double s) const {
    if (jump_at.empty() || s < jump_at.front()) return base;
    size_t i = static_cast<size_t>(std::upper_bound(jump_at.begin(), jump_at.end(), s) -
                                   jump_at.begin());
    return value[i - 1];
  }
};

}  // namespace umk
