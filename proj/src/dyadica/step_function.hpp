#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dyadica/grid.hpp"

namespace dyadica {

// Piecewise-constant function on the leaf cells of a grid, one value per cell,
// cells ordered left to right. Values are immutable after construction.
class StepFunction {
 public:
  StepFunction(Grid grid, std::vector<double> values);

  static StepFunction zero(const Grid& grid);
  static StepFunction constant(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double value(std::int64_t cell) const { return values_[static_cast<std::size_t>(cell)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Numerically careful block sum (pairwise); used for all integrals.
double pairwise_sum(std::span<const double> xs);

double integral(const StepFunction& f);                            // ∫₀¹ f
double inner(const StepFunction& f, const StepFunction& g);        // ∫₀¹ f g
double l2_norm_sq(const StepFunction& f);                          // ∫₀¹ f²

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g);
StepFunction pointwise_scale(const StepFunction& f, double c);
StepFunction pointwise_add(const StepFunction& f, const StepFunction& g, double cf = 1.0,
                           double cg = 1.0);
StepFunction pointwise_abs(const StepFunction& f);

// Integral of f over every grid interval, binary-heap order (size node_count).
std::vector<double> node_masses(const StepFunction& f);
std::vector<double> node_masses(const Grid& grid, std::span<const double> leaf_values);
// Minimum of f over every grid interval, binary-heap order.
std::vector<double> node_minima(const StepFunction& f);

inline double node_average(const Grid&, std::span<const double> masses,
                           const DyadicInterval& interval) {
  return masses[static_cast<std::size_t>(Grid::node_index(interval))] *
         std::ldexp(1.0, interval.level);
}

// Text format: header line "depth=D", then one value per line, leaf order.
void write_step_function(std::ostream& out, const StepFunction& f);
StepFunction read_step_function(std::istream& in);
void save_step_function(const StepFunction& f, const std::string& path);
StepFunction load_step_function(const std::string& path);

}  // namespace dyadica
