#pragma once

#include "dyadica/weight.hpp"

namespace dyadica {

// Split of the plain Haar function over a weight v:
//   h_I = alpha h_I^v + beta 1_I / sqrt(|I|)
// with alpha = sqrt(<v>_{I+} <v>_{I-} / <v>_I) and beta = Delta_I v / (2 <v>_I).
struct WeightedHaarCoeffs {
  double alpha = 0.0;
  double beta = 0.0;
};

// Constant values taken by h_I^v on the two halves of I.
struct WeightedHaarValues {
  double on_left = 0.0;
  double on_right = 0.0;
};

WeightedHaarValues weighted_haar_values(const Weight& v, const DyadicInterval& interval);

// h_I^v sampled on the grid; unit L2(v) norm and v-mean zero.
StepFunction weighted_haar(const Weight& v, const DyadicInterval& interval);

WeightedHaarCoeffs haar_split(const Weight& v, const DyadicInterval& interval);

}  // namespace dyadica
