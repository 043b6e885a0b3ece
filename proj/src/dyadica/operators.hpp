#pragma once

#include <memory>

#include "dyadica/carleson.hpp"
#include "dyadica/haar.hpp"
#include "dyadica/sign_pattern.hpp"
#include "dyadica/weight.hpp"

namespace dyadica {

// Linear map on step functions with its unweighted L2 adjoint. Implementations
// are immutable once built and safe to apply concurrently.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual const Grid& grid() const = 0;
  virtual StepFunction apply(const StepFunction& f) const = 0;
  virtual StepFunction apply_adjoint(const StepFunction& g) const = 0;
};

// T f = sum_I sigma_I (w(x)/<w>_I)^t <f,h_I> h_I(x).
// Applied as w^t(x) times a coefficient multiplier; constants are annihilated.
class THaarMultiplier final : public LinearOperator {
 public:
  THaarMultiplier(Weight w, double t, SignPattern sigma);
  const Grid& grid() const override { return w_.grid(); }
  StepFunction apply(const StepFunction& f) const override;
  StepFunction apply_adjoint(const StepFunction& g) const override;

 private:
  Weight w_;
  double t_;
  SignPattern sigma_;
  std::vector<double> avg_pow_;       // <w>_I^{-t} per non-leaf interval
  std::vector<double> symbol_cells_;  // w^t per cell
};

// T f = sum_I sigma_I <w>_I^{-t} <f,h_I> h_I(x); self-adjoint (diagonal in the
// Haar basis, hence a band operator of width zero).
class ConstantHaarMultiplier final : public LinearOperator {
 public:
  ConstantHaarMultiplier(Weight w, double t, SignPattern sigma);
  const Grid& grid() const override { return grid_; }
  StepFunction apply(const StepFunction& f) const override;
  StepFunction apply_adjoint(const StepFunction& g) const override { return apply(g); }
  double coefficient(std::int64_t node_index) const {
    return static_cast<double>(sigma_.sign(node_index)) *
           avg_pow_[static_cast<std::size_t>(node_index)];
  }

 private:
  Grid grid_;
  double t_;
  SignPattern sigma_;
  std::vector<double> avg_pow_;
};

// P f(x) = sum_I (w^t(x)/|I|) lambda_I <f>_I 1_I(x); monotone for lambda >= 0.
class PositiveOperator final : public LinearOperator {
 public:
  PositiveOperator(Weight w, double t, CarlesonSequence lambda);
  const Grid& grid() const override { return w_.grid(); }
  StepFunction apply(const StepFunction& f) const override;
  StepFunction apply_adjoint(const StepFunction& g) const override;

 private:
  Weight w_;
  double t_;
  CarlesonSequence lambda_;
  std::vector<double> symbol_cells_;  // w^t per cell
};

StepFunction apply_t_haar(const StepFunction& f, const Weight& w, double t,
                          const SignPattern& sigma);
StepFunction apply_adjoint_t_haar(const StepFunction& g, const Weight& w, double t,
                                  const SignPattern& sigma);
StepFunction apply_constant_haar(const StepFunction& f, const Weight& w, double t,
                                 const SignPattern& sigma);
StepFunction apply_positive(const StepFunction& f, const Weight& w, double t,
                            const CarlesonSequence& lambda);

// M_u f(x) = max over grid intervals containing x of the u-average of |f|;
// top-down running maximum, O(n). Not linear.
StepFunction maximal(const StepFunction& f, const Weight& u);

}  // namespace dyadica
