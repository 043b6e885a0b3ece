#include "dyadica/grid.hpp"

#include <bit>
#include <stdexcept>

namespace dyadica {

std::string to_string(const DyadicInterval& interval) {
  return "(" + std::to_string(interval.level) + "," + std::to_string(interval.pos) + ")";
}

Grid::Grid(int depth) : depth_(depth) {
  if (depth < kMinDepth || depth > kMaxDepth) {
    throw std::invalid_argument("grid depth must be in [" + std::to_string(kMinDepth) + "," +
                                std::to_string(kMaxDepth) + "], got " + std::to_string(depth));
  }
}

bool Grid::contains(const DyadicInterval& interval) const {
  return interval.level >= 0 && interval.level <= depth_ && interval.pos >= 0 &&
         interval.pos < (std::int64_t{1} << interval.level);
}

DyadicInterval Grid::interval_at(std::int64_t node_index) {
  const auto biased = static_cast<std::uint64_t>(node_index + 1);
  const int level = std::bit_width(biased) - 1;
  return {level, node_index + 1 - (std::int64_t{1} << level)};
}

void Grid::require(const DyadicInterval& interval) const {
  if (!contains(interval)) {
    throw std::invalid_argument("interval " + to_string(interval) + " outside grid of depth " +
                                std::to_string(depth_));
  }
}

Grid build_grid(int depth) { return Grid(depth); }

}  // namespace dyadica
