#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "dyadica/step_function.hpp"

namespace dyadica {

// Strictly positive step function with a positivity floor, so reciprocals and
// arbitrary real powers stay finite. Node masses are cached at construction;
// a Weight is immutable and cheap to copy.
class Weight {
 public:
  static constexpr double kFloor = 1e-12;

  explicit Weight(StepFunction values, double floor = kFloor);

  const StepFunction& fn() const { return fn_; }
  const Grid& grid() const { return fn_.grid(); }
  std::span<const double> values() const { return fn_.values(); }
  double value(std::int64_t cell) const { return fn_.value(cell); }
  double floor() const { return floor_; }

  std::span<const double> masses() const { return *masses_; }
  double mass(const DyadicInterval& interval) const {
    return (*masses_)[static_cast<std::size_t>(Grid::node_index(interval))];
  }
  double average(const DyadicInterval& interval) const {
    return mass(interval) * std::ldexp(1.0, interval.level);
  }
  double total_mass() const { return (*masses_)[0]; }

  Weight pointwise_pow(double exponent) const;
  Weight reciprocal() const { return pointwise_pow(-1.0); }

  bool same_values(const Weight& other) const;
  bool is_unit() const;

 private:
  StepFunction fn_;
  double floor_;
  std::shared_ptr<const std::vector<double>> masses_;
};

Weight pointwise_product(const Weight& a, const Weight& b);
StepFunction pointwise_product(const StepFunction& f, const Weight& w);

double weighted_inner(const StepFunction& f, const StepFunction& g, const Weight& m);
double weighted_norm_sq(const StepFunction& f, const Weight& m);

Weight unit_weight(const Grid& grid);

// Cell values are exact integral averages of x^alpha, so Reverse Hölder and
// Muckenhoupt membership thresholds show up without quadrature noise.
// Requires alpha > -1.
Weight power_weight(double alpha, const Grid& grid);

// Multiplicative dyadic cascade: the root average is 1 and each split scales
// the children by (1 + delta*xi_I, 1 - delta*xi_I), xi_I uniform on [-1,1]
// drawn from a per-interval stream keyed on (seed, level, pos).
// Requires 0 <= volatility < 1.
Weight cascade_weight(const Grid& grid, double volatility, std::uint64_t seed);

// Text format: "depth=D" and "floor=eps" header lines, then cell values.
void save_weight(const Weight& w, const std::string& path);
Weight load_weight(const std::string& path);

}  // namespace dyadica
