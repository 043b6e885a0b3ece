#pragma once

#include <vector>

#include "dyadica/weight.hpp"

namespace dyadica {

struct SupResult {
  double value = 0.0;
  DyadicInterval witness;
};

// Nonnegative mass per non-leaf interval (binary-heap order) together with the
// weight measuring its subtree sums.
class CarlesonSequence {
 public:
  CarlesonSequence(Grid grid, std::vector<double> values, Weight measure);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double value(std::int64_t node_index) const { return values_[static_cast<std::size_t>(node_index)]; }
  const Weight& measure() const { return measure_; }

  static CarlesonSequence zero(const Grid& grid, const Weight& measure);

 private:
  Grid grid_;
  std::vector<double> values_;
  Weight measure_;
};

// sup_I (sum_{J subset I, J non-leaf} lambda_J) / measure(I), single
// post-order pass. Witness ties break toward the shallowest, leftmost interval.
SupResult carleson_intensity(const CarlesonSequence& seq);

}  // namespace dyadica
