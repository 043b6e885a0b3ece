#pragma once

#include "dyadica/weight.hpp"

namespace dyadica {

enum class CharKind { ap, rhp, rh1, c2t, packing };

const char* to_string(CharKind kind);

// A supremum-type weight constant together with the interval achieving it.
// Witness ties break toward the shallowest, leftmost interval.
struct WeightCharacteristics {
  double value = 0.0;
  DyadicInterval witness;
  CharKind kind = CharKind::ap;
};

// sup_I <w>_I <w^{-1/(p-1)}>_I^{p-1}, over every grid interval. Requires p > 1.
WeightCharacteristics ap_constant(const Weight& w, double p);

// sup_I <w^p>_I^{1/p} / <w>_I. Requires p > 1.
WeightCharacteristics rhp_constant(const Weight& w, double p);

// sup_I <(w/<w>_I) log(w/<w>_I)>_I, the entropy form of the p -> 1 limit.
WeightCharacteristics rh1_constant(const Weight& w);

// sup_I <w^{2t}>_I / <w>_I^{2t}; equals 1 at t = 0 and is <= 1 for 0 < 2t <= 1.
WeightCharacteristics c2t_constant(const Weight& w, double t);

// sup_I (1 / (|I| <m>_I)) sum_{J subset I, J non-leaf} |J| (Delta_J g)^2 / <base>_J^s,
// one post-order pass. The named forms below instantiate it.
WeightCharacteristics packing_constant(const Weight& g, const Weight& base, double s,
                                       const Weight& m);

WeightCharacteristics buckley_rh1_packing(const Weight& v);
WeightCharacteristics rhp_packing(const Weight& w, double p);
WeightCharacteristics ap_packing(const Weight& w, double p);
WeightCharacteristics dual_carleson_packing(const Weight& w, double p);

}  // namespace dyadica
