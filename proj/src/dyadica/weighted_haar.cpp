#include "dyadica/weighted_haar.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadica {

namespace {

void require_nonleaf(const Weight& v, const DyadicInterval& interval) {
  v.grid().require(interval);
  if (v.grid().is_leaf(interval)) {
    throw std::invalid_argument("weighted haar needs a non-leaf interval, got " +
                                to_string(interval));
  }
}

}  // namespace

WeightedHaarValues weighted_haar_values(const Weight& v, const DyadicInterval& interval) {
  require_nonleaf(v, interval);
  const double total = v.mass(interval);
  const double left = v.mass(interval.left_child());
  const double right = v.mass(interval.right_child());
  if (!(left > 0.0) || !(right > 0.0)) {
    throw std::invalid_argument("weighted haar: degenerate child mass on " + to_string(interval));
  }
  const double scale = 1.0 / std::sqrt(total);
  return {-scale * std::sqrt(right / left), scale * std::sqrt(left / right)};
}

StepFunction weighted_haar(const Weight& v, const DyadicInterval& interval) {
  const WeightedHaarValues h = weighted_haar_values(v, interval);
  const Grid& grid = v.grid();
  std::vector<double> values(static_cast<std::size_t>(grid.leaf_count()), 0.0);
  const std::int64_t first = grid.first_leaf(interval);
  const std::int64_t span = grid.leaf_span(interval);
  for (std::int64_t i = first; i < first + span / 2; ++i) {
    values[static_cast<std::size_t>(i)] = h.on_left;
  }
  for (std::int64_t i = first + span / 2; i < first + span; ++i) {
    values[static_cast<std::size_t>(i)] = h.on_right;
  }
  return StepFunction(grid, std::move(values));
}

WeightedHaarCoeffs haar_split(const Weight& v, const DyadicInterval& interval) {
  require_nonleaf(v, interval);
  const double avg = v.average(interval);
  const double avg_left = v.average(interval.left_child());
  const double avg_right = v.average(interval.right_child());
  return {std::sqrt(avg_left * avg_right / avg), (avg_right - avg_left) / (2.0 * avg)};
}

}  // namespace dyadica
