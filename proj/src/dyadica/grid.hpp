#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace dyadica {

// Dyadic interval [2^-j k, 2^-j (k+1)) inside [0,1).
// Level 0 is the root [0,1); children sit at (level+1, 2k) and (level+1, 2k+1).
struct DyadicInterval {
  int level = 0;
  std::int64_t pos = 0;

  double length() const { return std::ldexp(1.0, -level); }
  double left_endpoint() const { return std::ldexp(static_cast<double>(pos), -level); }
  double right_endpoint() const { return std::ldexp(static_cast<double>(pos + 1), -level); }

  DyadicInterval left_child() const { return {level + 1, 2 * pos}; }
  DyadicInterval right_child() const { return {level + 1, 2 * pos + 1}; }
  DyadicInterval parent() const { return {level - 1, pos / 2}; }

  bool operator==(const DyadicInterval&) const = default;
};

std::string to_string(const DyadicInterval& interval);

// Finite dyadic tree on [0,1) down to generation `depth`.
// Nodes are addressed with binary-heap indices: node_index(I) = 2^level - 1 + pos,
// so children of index i live at 2i+1 and 2i+2 and levels enumerate shallow to
// deep, left to right.
class Grid {
 public:
  static constexpr int kMinDepth = 1;
  static constexpr int kMaxDepth = 24;

  explicit Grid(int depth);

  int depth() const { return depth_; }
  std::int64_t leaf_count() const { return std::int64_t{1} << depth_; }
  double cell_width() const { return std::ldexp(1.0, -depth_); }

  // All intervals, levels 0..depth.
  std::int64_t node_count() const { return (std::int64_t{2} << depth_) - 1; }
  // Intervals with two children in the grid, levels 0..depth-1.
  std::int64_t nonleaf_count() const { return (std::int64_t{1} << depth_) - 1; }

  static DyadicInterval root() { return {0, 0}; }
  bool contains(const DyadicInterval& interval) const;
  bool is_leaf(const DyadicInterval& interval) const { return interval.level == depth_; }

  static std::int64_t node_index(const DyadicInterval& interval) {
    return ((std::int64_t{1} << interval.level) - 1) + interval.pos;
  }
  static DyadicInterval interval_at(std::int64_t node_index);

  // Leaf cells covered by `interval`: [first_leaf, first_leaf + leaf_span).
  std::int64_t first_leaf(const DyadicInterval& interval) const {
    return interval.pos << (depth_ - interval.level);
  }
  std::int64_t leaf_span(const DyadicInterval& interval) const {
    return std::int64_t{1} << (depth_ - interval.level);
  }

  void require(const DyadicInterval& interval) const;

  bool operator==(const Grid&) const = default;

 private:
  int depth_;
};

Grid build_grid(int depth);

}  // namespace dyadica
