#include "dyadica/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dyadica/rng.hpp"

namespace dyadica {

namespace {

std::vector<double> clamped(std::span<const double> values, double floor) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v = std::max(v, floor);
  return out;
}

}  // namespace

Weight::Weight(StepFunction values, double floor)
    : fn_(values.grid(), clamped(values.values(), floor)), floor_(floor) {
  if (!(floor > 0.0)) throw std::invalid_argument("weight floor must be positive");
  masses_ = std::make_shared<const std::vector<double>>(node_masses(fn_));
}

Weight Weight::pointwise_pow(double exponent) const {
  std::vector<double> out(fn_.values().begin(), fn_.values().end());
  for (double& v : out) v = std::pow(v, exponent);
  return Weight(StepFunction(grid(), std::move(out)), floor_);
}

bool Weight::same_values(const Weight& other) const {
  return grid() == other.grid() &&
         std::equal(values().begin(), values().end(), other.values().begin());
}

bool Weight::is_unit() const {
  return std::all_of(values().begin(), values().end(), [](double v) { return v == 1.0; });
}

Weight pointwise_product(const Weight& a, const Weight& b) {
  return Weight(pointwise_product(a.fn(), b.fn()), std::min(a.floor(), b.floor()));
}

StepFunction pointwise_product(const StepFunction& f, const Weight& w) {
  return pointwise_product(f, w.fn());
}

double weighted_inner(const StepFunction& f, const StepFunction& g, const Weight& m) {
  if (f.grid() != g.grid() || f.grid() != m.grid()) {
    throw std::invalid_argument("weighted_inner: grid mismatch");
  }
  std::vector<double> prod(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= g.values()[i] * m.values()[i];
  return pairwise_sum(prod) * f.grid().cell_width();
}

double weighted_norm_sq(const StepFunction& f, const Weight& m) {
  return weighted_inner(f, f, m);
}

Weight unit_weight(const Grid& grid) { return Weight(StepFunction::constant(grid, 1.0)); }

Weight power_weight(double alpha, const Grid& grid) {
  if (!(alpha > -1.0)) {
    throw std::invalid_argument("power weight needs alpha > -1 for integrability on [0,1)");
  }
  const std::int64_t leaves = grid.leaf_count();
  const double width = grid.cell_width();
  std::vector<double> values(static_cast<std::size_t>(leaves));
  const double e = alpha + 1.0;
  for (std::int64_t i = 0; i < leaves; ++i) {
    const double a = static_cast<double>(i) * width;
    const double b = static_cast<double>(i + 1) * width;
    values[static_cast<std::size_t>(i)] = (std::pow(b, e) - std::pow(a, e)) / (e * width);
  }
  return Weight(StepFunction(grid, std::move(values)));
}

Weight cascade_weight(const Grid& grid, double volatility, std::uint64_t seed) {
  if (!(volatility >= 0.0 && volatility < 1.0)) {
    throw std::invalid_argument("cascade volatility must lie in [0,1)");
  }
  std::vector<double> node_values(static_cast<std::size_t>(grid.node_count()), 0.0);
  node_values[0] = 1.0;
  const std::int64_t nonleaf = grid.nonleaf_count();
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    Rng stream = derive_stream(seed, static_cast<std::uint64_t>(interval.level),
                               static_cast<std::uint64_t>(interval.pos));
    const double xi = stream.uniform(-1.0, 1.0);
    const double parent = node_values[static_cast<std::size_t>(i)];
    node_values[static_cast<std::size_t>(2 * i + 1)] = parent * (1.0 + volatility * xi);
    node_values[static_cast<std::size_t>(2 * i + 2)] = parent * (1.0 - volatility * xi);
  }
  const std::int64_t leaf_base = grid.leaf_count() - 1;
  std::vector<double> values(node_values.begin() + leaf_base, node_values.end());
  return Weight(StepFunction(grid, std::move(values)));
}

void save_weight(const Weight& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "depth=" << w.grid().depth() << "\n";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w.floor());
  out << "floor=" << buf << "\n";
  for (double v : w.values()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  }
}

Weight load_weight(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("depth=", 0) != 0) {
    throw std::runtime_error("weight file: missing depth= header");
  }
  const int depth = std::stoi(line.substr(6));
  if (!std::getline(in, line) || line.rfind("floor=", 0) != 0) {
    throw std::runtime_error("weight file: missing floor= header");
  }
  const double floor = std::stod(line.substr(6));
  Grid grid(depth);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.leaf_count()));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  return Weight(StepFunction(grid, std::move(values)), floor);
}

}  // namespace dyadica
