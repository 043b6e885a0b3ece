#pragma once

#include <cstdint>
#include <vector>

#include "dyadica/grid.hpp"

namespace dyadica {

// One sign per non-leaf interval, binary-heap order, values exactly +-1.
class SignPattern {
 public:
  explicit SignPattern(Grid grid, std::vector<std::int8_t> signs);

  static SignPattern all_plus(const Grid& grid);
  static SignPattern random(const Grid& grid, std::uint64_t seed);
  // Signs from the low bits of `bits`, node 0 at bit 0; for exhaustive sweeps.
  static SignPattern from_bits(const Grid& grid, std::uint64_t bits);

  const Grid& grid() const { return grid_; }
  int sign(std::int64_t node_index) const { return signs_[static_cast<std::size_t>(node_index)]; }
  int sign(const DyadicInterval& interval) const { return sign(Grid::node_index(interval)); }
  void set_sign(std::int64_t node_index, int sign);
  std::int64_t size() const { return static_cast<std::int64_t>(signs_.size()); }

  bool operator==(const SignPattern&) const = default;

 private:
  Grid grid_;
  std::vector<std::int8_t> signs_;
};

}  // namespace dyadica
