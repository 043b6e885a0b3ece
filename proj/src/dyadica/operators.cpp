#include "dyadica/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadica {

namespace {

std::vector<double> average_powers(const Weight& w, double exponent) {
  const std::int64_t nonleaf = w.grid().nonleaf_count();
  std::vector<double> out(static_cast<std::size_t>(nonleaf));
  const auto masses = w.masses();
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const int level = Grid::interval_at(i).level;
    out[static_cast<std::size_t>(i)] =
        std::pow(masses[static_cast<std::size_t>(i)] * std::ldexp(1.0, level), exponent);
  }
  return out;
}

std::vector<double> cell_powers(const Weight& w, double exponent) {
  std::vector<double> out(w.values().begin(), w.values().end());
  for (double& v : out) v = std::pow(v, exponent);
  return out;
}

void require_grid(const Grid& expected, const StepFunction& f, const char* what) {
  if (f.grid() != expected) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
  }
}

// Coefficient multiplier d_I = sign_I * scale_I * <f,h_I>, synthesized with no
// mean term.
StepFunction multiplier_apply(const StepFunction& f, const SignPattern& sigma,
                              std::span<const double> scale) {
  const HaarExpansion e = haar_transform(f);
  std::vector<double> d(e.coefficients.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<double>(sigma.sign(static_cast<std::int64_t>(i))) * scale[i] *
           e.coefficients[i];
  }
  return synthesize_zero_mean(f.grid(), d);
}

}  // namespace

THaarMultiplier::THaarMultiplier(Weight w, double t, SignPattern sigma)
    : w_(std::move(w)), t_(t), sigma_(std::move(sigma)) {
  if (sigma_.grid() != w_.grid()) throw std::invalid_argument("t-haar: sigma grid mismatch");
  avg_pow_ = average_powers(w_, -t_);
  symbol_cells_ = cell_powers(w_, t_);
}

StepFunction THaarMultiplier::apply(const StepFunction& f) const {
  require_grid(w_.grid(), f, "t-haar apply");
  StepFunction base = multiplier_apply(f, sigma_, avg_pow_);
  std::vector<double> out(base.values().begin(), base.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= symbol_cells_[i];
  return StepFunction(w_.grid(), std::move(out));
}

StepFunction THaarMultiplier::apply_adjoint(const StepFunction& g) const {
  require_grid(w_.grid(), g, "t-haar adjoint");
  std::vector<double> scaled(g.values().begin(), g.values().end());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= symbol_cells_[i];
  return multiplier_apply(StepFunction(w_.grid(), std::move(scaled)), sigma_, avg_pow_);
}

ConstantHaarMultiplier::ConstantHaarMultiplier(Weight w, double t, SignPattern sigma)
    : grid_(w.grid()), t_(t), sigma_(std::move(sigma)) {
  if (sigma_.grid() != grid_) throw std::invalid_argument("constant-haar: sigma grid mismatch");
  avg_pow_ = average_powers(w, -t_);
}

StepFunction ConstantHaarMultiplier::apply(const StepFunction& f) const {
  require_grid(grid_, f, "constant-haar apply");
  return multiplier_apply(f, sigma_, avg_pow_);
}

PositiveOperator::PositiveOperator(Weight w, double t, CarlesonSequence lambda)
    : w_(std::move(w)), t_(t), lambda_(std::move(lambda)) {
  if (lambda_.grid() != w_.grid()) throw std::invalid_argument("positive: lambda grid mismatch");
  symbol_cells_ = cell_powers(w_, t_);
}

StepFunction PositiveOperator::apply(const StepFunction& f) const {
  require_grid(w_.grid(), f, "positive apply");
  const Grid& grid = w_.grid();
  const std::vector<double> masses = node_masses(f);
  const std::int64_t nonleaf = grid.nonleaf_count();
  // acc_I = sum over non-leaf J containing I of lambda_J <f>_J / |J|
  std::vector<double> acc(static_cast<std::size_t>(grid.node_count()), 0.0);
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double inv_len = std::ldexp(1.0, interval.level);
    const double avg = masses[static_cast<std::size_t>(i)] * inv_len;
    const double here = acc[static_cast<std::size_t>(i)] + lambda_.value(i) * avg * inv_len;
    acc[static_cast<std::size_t>(i)] = here;
    acc[static_cast<std::size_t>(2 * i + 1)] = here;
    acc[static_cast<std::size_t>(2 * i + 2)] = here;
  }
  const std::int64_t leaf_base = grid.leaf_count() - 1;
  std::vector<double> out(static_cast<std::size_t>(grid.leaf_count()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = symbol_cells_[i] * acc[static_cast<std::size_t>(leaf_base) + i];
  }
  return StepFunction(grid, std::move(out));
}

StepFunction PositiveOperator::apply_adjoint(const StepFunction& g) const {
  require_grid(w_.grid(), g, "positive adjoint");
  // <P f, g> = sum_I lambda_I <f>_I <w^t g>_I, so P* g = sum_I (lambda_I/|I|) <w^t g>_I 1_I.
  const Grid& grid = w_.grid();
  std::vector<double> scaled(g.values().begin(), g.values().end());
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= symbol_cells_[i];
  const std::vector<double> masses = node_masses(grid, scaled);
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> acc(static_cast<std::size_t>(grid.node_count()), 0.0);
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double inv_len = std::ldexp(1.0, interval.level);
    const double avg = masses[static_cast<std::size_t>(i)] * inv_len;
    const double here = acc[static_cast<std::size_t>(i)] + lambda_.value(i) * avg * inv_len;
    acc[static_cast<std::size_t>(i)] = here;
    acc[static_cast<std::size_t>(2 * i + 1)] = here;
    acc[static_cast<std::size_t>(2 * i + 2)] = here;
  }
  const std::int64_t leaf_base = grid.leaf_count() - 1;
  std::vector<double> out(acc.begin() + leaf_base, acc.end());
  return StepFunction(grid, std::move(out));
}

StepFunction apply_t_haar(const StepFunction& f, const Weight& w, double t,
                          const SignPattern& sigma) {
  return THaarMultiplier(w, t, sigma).apply(f);
}

StepFunction apply_adjoint_t_haar(const StepFunction& g, const Weight& w, double t,
                                  const SignPattern& sigma) {
  return THaarMultiplier(w, t, sigma).apply_adjoint(g);
}

StepFunction apply_constant_haar(const StepFunction& f, const Weight& w, double t,
                                 const SignPattern& sigma) {
  return ConstantHaarMultiplier(w, t, sigma).apply(f);
}

StepFunction apply_positive(const StepFunction& f, const Weight& w, double t,
                            const CarlesonSequence& lambda) {
  return PositiveOperator(w, t, lambda).apply(f);
}

StepFunction maximal(const StepFunction& f, const Weight& u) {
  if (f.grid() != u.grid()) throw std::invalid_argument("maximal: grid mismatch");
  const Grid& grid = f.grid();
  std::vector<double> weighted_abs(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < weighted_abs.size(); ++i) {
    weighted_abs[i] = std::abs(weighted_abs[i]) * u.values()[i];
  }
  const std::vector<double> fm = node_masses(grid, weighted_abs);
  const auto um = u.masses();
  std::vector<double> best(static_cast<std::size_t>(grid.node_count()), 0.0);
  best[0] = fm[0] / um[0];
  const std::int64_t nonleaf = grid.nonleaf_count();
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const double here = best[static_cast<std::size_t>(i)];
    for (std::int64_t c = 2 * i + 1; c <= 2 * i + 2; ++c) {
      best[static_cast<std::size_t>(c)] =
          std::max(here, fm[static_cast<std::size_t>(c)] / um[static_cast<std::size_t>(c)]);
    }
  }
  const std::int64_t leaf_base = grid.leaf_count() - 1;
  std::vector<double> out(best.begin() + leaf_base, best.end());
  return StepFunction(grid, std::move(out));
}

}  // namespace dyadica
