#include "dyadica/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dyadica {

StepFunction::StepFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != grid_.leaf_count()) {
    throw std::invalid_argument("step function needs " + std::to_string(grid_.leaf_count()) +
                                " cell values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("step function values must be finite");
  }
}

StepFunction StepFunction::zero(const Grid& grid) { return constant(grid, 0.0); }

StepFunction StepFunction::constant(const Grid& grid, double value) {
  return StepFunction(grid, std::vector<double>(static_cast<std::size_t>(grid.leaf_count()), value));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double integral(const StepFunction& f) {
  return pairwise_sum(f.values()) * f.grid().cell_width();
}

double inner(const StepFunction& f, const StepFunction& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("inner: grid mismatch");
  std::vector<double> prod(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= g.values()[i];
  return pairwise_sum(prod) * f.grid().cell_width();
}

double l2_norm_sq(const StepFunction& f) { return inner(f, f); }

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("pointwise_product: grid mismatch");
  std::vector<double> out(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= g.values()[i];
  return StepFunction(f.grid(), std::move(out));
}

StepFunction pointwise_scale(const StepFunction& f, double c) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& x : out) x *= c;
  return StepFunction(f.grid(), std::move(out));
}

StepFunction pointwise_add(const StepFunction& f, const StepFunction& g, double cf, double cg) {
  if (f.grid() != g.grid()) throw std::invalid_argument("pointwise_add: grid mismatch");
  std::vector<double> out(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cf * out[i] + cg * g.values()[i];
  return StepFunction(f.grid(), std::move(out));
}

StepFunction pointwise_abs(const StepFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& x : out) x = std::abs(x);
  return StepFunction(f.grid(), std::move(out));
}

std::vector<double> node_masses(const Grid& grid, std::span<const double> leaf_values) {
  const std::int64_t leaves = grid.leaf_count();
  const double width = grid.cell_width();
  std::vector<double> masses(static_cast<std::size_t>(grid.node_count()));
  const std::int64_t leaf_base = leaves - 1;
  for (std::int64_t i = 0; i < leaves; ++i) {
    masses[static_cast<std::size_t>(leaf_base + i)] = leaf_values[static_cast<std::size_t>(i)] * width;
  }
  for (std::int64_t i = leaf_base - 1; i >= 0; --i) {
    masses[static_cast<std::size_t>(i)] = masses[static_cast<std::size_t>(2 * i + 1)] +
                                          masses[static_cast<std::size_t>(2 * i + 2)];
  }
  return masses;
}

std::vector<double> node_masses(const StepFunction& f) { return node_masses(f.grid(), f.values()); }

std::vector<double> node_minima(const StepFunction& f) {
  const Grid& grid = f.grid();
  const std::int64_t leaves = grid.leaf_count();
  std::vector<double> mins(static_cast<std::size_t>(grid.node_count()));
  const std::int64_t leaf_base = leaves - 1;
  for (std::int64_t i = 0; i < leaves; ++i) {
    mins[static_cast<std::size_t>(leaf_base + i)] = f.value(i);
  }
  for (std::int64_t i = leaf_base - 1; i >= 0; --i) {
    mins[static_cast<std::size_t>(i)] = std::min(mins[static_cast<std::size_t>(2 * i + 1)],
                                                 mins[static_cast<std::size_t>(2 * i + 2)]);
  }
  return mins;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_step_function(std::ostream& out, const StepFunction& f) {
  out << "depth=" << f.grid().depth() << "\n";
  for (double v : f.values()) out << format_value(v) << "\n";
}

StepFunction read_step_function(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("depth=", 0) != 0) {
    throw std::runtime_error("step function file: missing depth= header");
  }
  const int depth = std::stoi(header.substr(6));
  Grid grid(depth);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.leaf_count()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  return StepFunction(grid, std::move(values));
}

void save_step_function(const StepFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_step_function(out, f);
}

StepFunction load_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_step_function(in);
}

}  // namespace dyadica
