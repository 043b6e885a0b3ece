#include "dyadica/sign_pattern.hpp"

#include <stdexcept>

#include "dyadica/rng.hpp"

namespace dyadica {

SignPattern::SignPattern(Grid grid, std::vector<std::int8_t> signs)
    : grid_(grid), signs_(std::move(signs)) {
  if (static_cast<std::int64_t>(signs_.size()) != grid_.nonleaf_count()) {
    throw std::invalid_argument("sign pattern needs one entry per non-leaf interval");
  }
  for (std::int8_t s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign pattern entries must be +-1");
  }
}

SignPattern SignPattern::all_plus(const Grid& grid) {
  return SignPattern(grid, std::vector<std::int8_t>(static_cast<std::size_t>(grid.nonleaf_count()), 1));
}

SignPattern SignPattern::random(const Grid& grid, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int8_t> signs(static_cast<std::size_t>(grid.nonleaf_count()));
  for (auto& s : signs) s = static_cast<std::int8_t>(rng.sign());
  return SignPattern(grid, std::move(signs));
}

SignPattern SignPattern::from_bits(const Grid& grid, std::uint64_t bits) {
  const std::int64_t n = grid.nonleaf_count();
  if (n > 63) throw std::invalid_argument("from_bits supports at most 63 non-leaf intervals");
  std::vector<std::int8_t> signs(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    signs[static_cast<std::size_t>(i)] = (bits >> i) & 1u ? 1 : -1;
  }
  return SignPattern(grid, std::move(signs));
}

void SignPattern::set_sign(std::int64_t node_index, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  signs_[static_cast<std::size_t>(node_index)] = static_cast<std::int8_t>(sign);
}

}  // namespace dyadica
