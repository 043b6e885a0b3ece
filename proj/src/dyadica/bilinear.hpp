#pragma once

#include "dyadica/sign_pattern.hpp"
#include "dyadica/weight.hpp"

namespace dyadica {

// The four pieces of <T^t_{w,sigma}(f u^{-1}), g v> obtained by splitting each
// plain Haar function over the weights u^{-1} and v w^{2t}; their sum equals
// the direct pairing exactly.
struct BilinearDecomposition {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double total() const { return s1 + s2 + s3 + s4; }
};

BilinearDecomposition bilinear_decomposition(const StepFunction& f, const StepFunction& g,
                                             const Weight& u, const Weight& v, const Weight& w,
                                             double t, const SignPattern& sigma);

// sum_I lambda_I <u^{-1/2} f>_I <v^{1/2} w^t g>_I, the bilinear form of the
// positive operator; bounded by C4 ||f|| ||g|| for nonnegative f, g.
double positive_bilinear_form(const StepFunction& f, const StepFunction& g, const Weight& u,
                              const Weight& v, const Weight& w, double t,
                              std::span<const double> lambda);

}  // namespace dyadica
