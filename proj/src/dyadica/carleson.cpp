#include "dyadica/carleson.hpp"

#include <stdexcept>

namespace dyadica {

CarlesonSequence::CarlesonSequence(Grid grid, std::vector<double> values, Weight measure)
    : grid_(grid), values_(std::move(values)), measure_(std::move(measure)) {
  if (static_cast<std::int64_t>(values_.size()) != grid_.nonleaf_count()) {
    throw std::invalid_argument("carleson sequence needs one entry per non-leaf interval");
  }
  if (measure_.grid() != grid_) {
    throw std::invalid_argument("carleson sequence: measure grid mismatch");
  }
  for (double v : values_) {
    if (!(v >= 0.0)) throw std::invalid_argument("carleson sequence entries must be nonnegative");
  }
}

CarlesonSequence CarlesonSequence::zero(const Grid& grid, const Weight& measure) {
  return CarlesonSequence(grid, std::vector<double>(static_cast<std::size_t>(grid.nonleaf_count()), 0.0),
                          measure);
}

SupResult carleson_intensity(const CarlesonSequence& seq) {
  const Grid& grid = seq.grid();
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> subtree(static_cast<std::size_t>(nonleaf), 0.0);
  for (std::int64_t i = nonleaf - 1; i >= 0; --i) {
    double below = 0.0;
    if (2 * i + 2 < nonleaf) {
      below = subtree[static_cast<std::size_t>(2 * i + 1)] +
              subtree[static_cast<std::size_t>(2 * i + 2)];
    }
    subtree[static_cast<std::size_t>(i)] = seq.value(i) + below;
  }
  SupResult best{0.0, Grid::root()};
  const auto masses = seq.measure().masses();
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const double v = subtree[static_cast<std::size_t>(i)] / masses[static_cast<std::size_t>(i)];
    if (v > best.value) {
      best.value = v;
      best.witness = Grid::interval_at(i);
    }
  }
  return best;
}

}  // namespace dyadica
