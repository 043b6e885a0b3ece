#pragma once

#include "dyadica/sign_pattern.hpp"
#include "dyadica/weight.hpp"

namespace dyadica {

// Squared L2(m) norm of the constant Haar multiplier at fixed signs,
// ||T_sigma T_{w,t} f||^2_{L2(m)}; m plays the role of v w^{2t}.
double constant_haar_norm_sq(const Weight& m, const Weight& w, double t, const StepFunction& f,
                             const SignPattern& sigma);

// Expectation over independent uniform signs. Cross terms cancel, leaving
//   (1/4) sum_I |I| (Delta_I f)^2 <m>_I / <w>_I^{2t}
// which the grid evaluates exactly.
double khintchine_closed_form(const Weight& m, const Weight& w, double t, const StepFunction& f);

// Exhaustive average over all sign patterns; needs 2^depth - 1 <= 20 signs.
double khintchine_enumerate(const Weight& m, const Weight& w, double t, const StepFunction& f);

// Monte-Carlo average over sampled sign patterns.
double khintchine_monte_carlo(const Weight& m, const Weight& w, double t, const StepFunction& f,
                              int samples, std::uint64_t seed);

}  // namespace dyadica
