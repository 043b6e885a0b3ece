#pragma once

#include "dyadica/normest.hpp"
#include "dyadica/sign_pattern.hpp"

namespace dyadica {

struct SupSigmaOptions {
  int restarts = 16;
  int max_rounds = 64;  // sign-update rounds per restart
  std::uint64_t seed = 1;
  PowerOptions power = {};
  // Greedy single-sign-flip polish runs when the grid has at most this many
  // signs; it escapes the shallow local maxima the plain alternation finds.
  std::int64_t polish_sign_limit = 127;
  int polish_sweeps = 4;
};

struct SupSigmaResult {
  NormEstimate estimate;
  SignPattern sigma;
  // Objective after each alternation round of the best restart; nondecreasing.
  std::vector<double> trace;
};

// Lower bound on sup over sign choices of the two-weight norm of the t-Haar
// multiplier, by alternating between the sign choice that makes every bilinear
// term positive and the top singular pair at fixed signs.
SupSigmaResult sup_sigma_norm(const Weight& u, const Weight& v, const Weight& w, double t,
                              const SupSigmaOptions& options = {});

}  // namespace dyadica
