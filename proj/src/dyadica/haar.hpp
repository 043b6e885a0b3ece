#pragma once

#include <vector>

#include "dyadica/step_function.hpp"

namespace dyadica {

// Haar coefficients of a step function: the global mean plus one coefficient
// <f,h_I> per non-leaf interval (binary-heap order, size nonleaf_count).
// For data at the grid resolution the expansion is exact: finer scales carry
// zero coefficients, so Plancherel holds on the finite tree.
struct HaarExpansion {
  HaarExpansion(Grid grid, double mean, std::vector<double> coefficients);

  Grid grid;
  double mean;
  std::vector<double> coefficients;

  double coefficient(const DyadicInterval& interval) const;
};

// Average of f over a grid interval; exact (mean of covered cells).
double average(const StepFunction& f, const DyadicInterval& interval);

// Delta_I f = <f>_{I+} - <f>_{I-}; defined for non-leaf intervals only.
double delta(const StepFunction& f, const DyadicInterval& interval);

// Haar function h_I sampled on the grid: |I|^{-1/2} on the right half,
// -|I|^{-1/2} on the left half, zero outside.
StepFunction haar_function(const Grid& grid, const DyadicInterval& interval);

HaarExpansion haar_transform(const StepFunction& f);
StepFunction inverse_haar(const HaarExpansion& expansion);

// Synthesis with per-interval coefficients d_I and no mean term:
// sum_I d_I h_I(x). Shared by every multiplier-type operator.
StepFunction synthesize_zero_mean(const Grid& grid, std::span<const double> coefficients);

}  // namespace dyadica
