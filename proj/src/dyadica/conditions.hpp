#pragma once

#include <optional>
#include <string>

#include "dyadica/carleson.hpp"
#include "dyadica/normest.hpp"

namespace dyadica {

// sup_I <u^{-1}>_I <v w^{2t}>_I / <w>_I^{2t}, over every grid interval.
SupResult condition_c1(const Weight& u, const Weight& v, const Weight& w, double t);

// mu_J = |J| (Delta_J u^{-1})^2 <v w^{2t}>_J / <w>_J^{2t}, measured by u^{-1}.
CarlesonSequence condition_c2_sequence(const Weight& u, const Weight& v, const Weight& w,
                                       double t);
// rho_J = |J| (Delta_J (v w^{2t}))^2 <u^{-1}>_J / <w>_J^{2t}, measured by v w^{2t}.
CarlesonSequence condition_c3_sequence(const Weight& u, const Weight& v, const Weight& w,
                                       double t);

// lambda_I = (|Delta_I(v w^{2t})| / <v w^{2t}>_I) (|Delta_I u^{-1}| / <u^{-1}>_I)
//            (|I| / <w>_I^t), the mass sequence of the positive operator.
CarlesonSequence lambda_sequence(const Weight& u, const Weight& v, const Weight& w, double t);

enum class C4Method { auto_select, exact, power };

struct C4Options {
  C4Method method = C4Method::auto_select;  // exact spectral up to depth 12, iterative beyond
  PowerOptions power = {};
};

// Norm of the positive operator from L2(u) into L2(v).
NormEstimate condition_c4(const Weight& u, const Weight& v, const Weight& w, double t,
                          const C4Options& options = {});

struct ConditionReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  DyadicInterval c1_witness;
  DyadicInterval c2_witness;
  DyadicInterval c3_witness;
  NormEstimate c4_estimate;
  CarlesonSequence lambda;
  double combined = 0.0;  // sqrt(c1) + sqrt(c2) + sqrt(c3) + c4
  bool one_weight = false;   // u and v coincide
  bool unweighted = false;   // u = v = 1

  // Flat key/value JSON with witness intervals as (level, position) pairs.
  std::string to_json() const;
};

ConditionReport compute_report(const Weight& u, const Weight& v, const Weight& w, double t,
                               const C4Options& options = {});

}  // namespace dyadica
