#pragma once

#include "dyadica/carleson.hpp"
#include "dyadica/sign_pattern.hpp"

namespace dyadica {

struct PairSupResult {
  double value = 0.0;
  DyadicInterval i;
  DyadicInterval j;
};

// Testing constants for T = T_sigma T_{w,t} between L2(u) and L2(v w^{2t}),
// normalized so each constant is at most the squared operator norm:
//   forward_full:  sup_I  int |T(1_I u^{-1})|^2 v w^{2t} / u^{-1}(I)
//   dual_full:     sup_I  int |T(1_I v w^{2t})|^2 u^{-1} / v w^{2t}(I)
//   restricted:    the same two with the integral restricted to I (larger of the two)
//   pairing:       sup over |I|=|J| of <T(1_I u^{-1}), 1_J v w^{2t}>^2
//                  / (u^{-1}(I) v w^{2t}(J))
struct SawyerTesting {
  SupResult forward_full;
  SupResult dual_full;
  SupResult restricted;
  PairSupResult pairing;
};

SawyerTesting sawyer_testing(const Weight& u, const Weight& v, const Weight& w, double t,
                             const SignPattern& sigma);

}  // namespace dyadica
