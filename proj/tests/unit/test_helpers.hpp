#pragma once

#include <vector>

#include "dyadica/rng.hpp"
#include "dyadica/step_function.hpp"
#include "dyadica/weight.hpp"

namespace dyadica::testing {

inline StepFunction random_step(const Grid& grid, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> values(static_cast<std::size_t>(grid.leaf_count()));
  for (double& v : values) v = rng.uniform(lo, hi);
  return StepFunction(grid, std::move(values));
}

inline Weight random_weight(const Grid& grid, Rng& rng, double lo = 0.1, double hi = 4.0) {
  std::vector<double> values(static_cast<std::size_t>(grid.leaf_count()));
  for (double& v : values) v = rng.uniform(lo, hi);
  return Weight(StepFunction(grid, std::move(values)));
}

}  // namespace dyadica::testing
