#include "dyadica/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadica {

HaarExpansion::HaarExpansion(Grid grid_in, double mean_in, std::vector<double> coefficients_in)
    : grid(grid_in), mean(mean_in), coefficients(std::move(coefficients_in)) {
  if (static_cast<std::int64_t>(coefficients.size()) != grid.nonleaf_count()) {
    throw std::invalid_argument("haar expansion: coefficient count does not match grid");
  }
}

double HaarExpansion::coefficient(const DyadicInterval& interval) const {
  grid.require(interval);
  if (grid.is_leaf(interval)) {
    throw std::invalid_argument("haar coefficient requested for leaf interval " +
                                to_string(interval));
  }
  return coefficients[static_cast<std::size_t>(Grid::node_index(interval))];
}

double average(const StepFunction& f, const DyadicInterval& interval) {
  const Grid& grid = f.grid();
  grid.require(interval);
  const std::int64_t first = grid.first_leaf(interval);
  const std::int64_t span = grid.leaf_span(interval);
  return pairwise_sum(f.values().subspan(static_cast<std::size_t>(first),
                                         static_cast<std::size_t>(span))) /
         static_cast<double>(span);
}

double delta(const StepFunction& f, const DyadicInterval& interval) {
  if (f.grid().is_leaf(interval)) {
    throw std::invalid_argument("delta undefined on leaf interval " + to_string(interval));
  }
  f.grid().require(interval);
  return average(f, interval.right_child()) - average(f, interval.left_child());
}

StepFunction haar_function(const Grid& grid, const DyadicInterval& interval) {
  grid.require(interval);
  if (grid.is_leaf(interval)) {
    throw std::invalid_argument("haar function undefined on leaf interval " + to_string(interval));
  }
  std::vector<double> values(static_cast<std::size_t>(grid.leaf_count()), 0.0);
  const double height = 1.0 / std::sqrt(interval.length());
  const std::int64_t first = grid.first_leaf(interval);
  const std::int64_t span = grid.leaf_span(interval);
  for (std::int64_t i = first; i < first + span / 2; ++i) values[static_cast<std::size_t>(i)] = -height;
  for (std::int64_t i = first + span / 2; i < first + span; ++i) values[static_cast<std::size_t>(i)] = height;
  return StepFunction(grid, std::move(values));
}

HaarExpansion haar_transform(const StepFunction& f) {
  const Grid& grid = f.grid();
  const std::vector<double> masses = node_masses(f);
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> coeffs(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    // <f,h_I> = (m(I+) - m(I-)) / sqrt(|I|)
    const double diff = masses[static_cast<std::size_t>(2 * i + 2)] -
                        masses[static_cast<std::size_t>(2 * i + 1)];
    coeffs[static_cast<std::size_t>(i)] = diff / std::sqrt(interval.length());
  }
  return HaarExpansion(grid, masses[0], std::move(coeffs));
}

StepFunction synthesize_zero_mean(const Grid& grid, std::span<const double> coefficients) {
  const std::int64_t nonleaf = grid.nonleaf_count();
  if (static_cast<std::int64_t>(coefficients.size()) != nonleaf) {
    throw std::invalid_argument("synthesize: coefficient count does not match grid");
  }
  std::vector<double> acc(static_cast<std::size_t>(grid.node_count()), 0.0);
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double bump = coefficients[static_cast<std::size_t>(i)] / std::sqrt(interval.length());
    const double base = acc[static_cast<std::size_t>(i)];
    acc[static_cast<std::size_t>(2 * i + 1)] = base - bump;
    acc[static_cast<std::size_t>(2 * i + 2)] = base + bump;
  }
  const std::int64_t leaf_base = grid.leaf_count() - 1;
  std::vector<double> values(acc.begin() + leaf_base, acc.end());
  return StepFunction(grid, std::move(values));
}

StepFunction inverse_haar(const HaarExpansion& expansion) {
  StepFunction detail = synthesize_zero_mean(expansion.grid, expansion.coefficients);
  std::vector<double> values(detail.values().begin(), detail.values().end());
  for (double& v : values) v += expansion.mean;
  return StepFunction(expansion.grid, std::move(values));
}

}  // namespace dyadica
