#include "dyadica/characteristics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dyadica {

const char* to_string(CharKind kind) {
  switch (kind) {
    case CharKind::ap: return "ap";
    case CharKind::rhp: return "rhp";
    case CharKind::rh1: return "rh1";
    case CharKind::c2t: return "c2t";
    case CharKind::packing: return "packing";
  }
  return "unknown";
}

namespace {

// Max over all grid intervals in heap order; strict > keeps the shallowest,
// leftmost witness on ties.
WeightCharacteristics scan_max(const Grid& grid, CharKind kind,
                               const std::function<double(std::int64_t, const DyadicInterval&)>& f) {
  WeightCharacteristics best{-std::numeric_limits<double>::infinity(), Grid::root(), kind};
  const std::int64_t nodes = grid.node_count();
  for (std::int64_t i = 0; i < nodes; ++i) {
    const double v = f(i, Grid::interval_at(i));
    if (v > best.value) {
      best.value = v;
      best.witness = Grid::interval_at(i);
    }
  }
  return best;
}

double scaled_avg(std::span<const double> masses, std::int64_t node, int level) {
  return masses[static_cast<std::size_t>(node)] * std::ldexp(1.0, level);
}

}  // namespace

WeightCharacteristics ap_constant(const Weight& w, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ap_constant needs p > 1");
  const Weight dual = w.pointwise_pow(-1.0 / (p - 1.0));
  const auto wm = w.masses();
  const auto dm = dual.masses();
  return scan_max(w.grid(), CharKind::ap, [&](std::int64_t i, const DyadicInterval& interval) {
    return scaled_avg(wm, i, interval.level) *
           std::pow(scaled_avg(dm, i, interval.level), p - 1.0);
  });
}

WeightCharacteristics rhp_constant(const Weight& w, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("rhp_constant needs p > 1");
  const Weight wp = w.pointwise_pow(p);
  const auto wm = w.masses();
  const auto pm = wp.masses();
  return scan_max(w.grid(), CharKind::rhp, [&](std::int64_t i, const DyadicInterval& interval) {
    return std::pow(scaled_avg(pm, i, interval.level), 1.0 / p) /
           scaled_avg(wm, i, interval.level);
  });
}

WeightCharacteristics rh1_constant(const Weight& w) {
  // <(w/a) log(w/a)>_I = <w log w>_I / a - log a with a = <w>_I.
  std::vector<double> wlogw(w.values().begin(), w.values().end());
  for (double& v : wlogw) v = v * std::log(v);
  const std::vector<double> lm = node_masses(w.grid(), wlogw);
  const auto wm = w.masses();
  return scan_max(w.grid(), CharKind::rh1, [&](std::int64_t i, const DyadicInterval& interval) {
    const double a = scaled_avg(wm, i, interval.level);
    return scaled_avg(lm, i, interval.level) / a - std::log(a);
  });
}

WeightCharacteristics c2t_constant(const Weight& w, double t) {
  const Weight w2t = w.pointwise_pow(2.0 * t);
  const auto wm = w.masses();
  const auto sm = w2t.masses();
  return scan_max(w.grid(), CharKind::c2t, [&](std::int64_t i, const DyadicInterval& interval) {
    return scaled_avg(sm, i, interval.level) /
           std::pow(scaled_avg(wm, i, interval.level), 2.0 * t);
  });
}

WeightCharacteristics packing_constant(const Weight& g, const Weight& base, double s,
                                       const Weight& m) {
  const Grid& grid = g.grid();
  if (base.grid() != grid || m.grid() != grid) {
    throw std::invalid_argument("packing_constant: grid mismatch");
  }
  const auto gm = g.masses();
  const auto bm = base.masses();
  const std::int64_t nonleaf = grid.nonleaf_count();
  // subtree[i] = sum over non-leaf J inside interval i of |J| (Delta_J g)^2 / <base>_J^s
  std::vector<double> subtree(static_cast<std::size_t>(nonleaf), 0.0);
  for (std::int64_t i = nonleaf - 1; i >= 0; --i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const int child_level = interval.level + 1;
    const double dg = scaled_avg(gm, 2 * i + 2, child_level) - scaled_avg(gm, 2 * i + 1, child_level);
    const double term =
        interval.length() * dg * dg / std::pow(scaled_avg(bm, i, interval.level), s);
    double below = 0.0;
    if (2 * i + 2 < nonleaf) {
      below = subtree[static_cast<std::size_t>(2 * i + 1)] +
              subtree[static_cast<std::size_t>(2 * i + 2)];
    }
    subtree[static_cast<std::size_t>(i)] = term + below;
  }
  const auto mm = m.masses();
  return scan_max(grid, CharKind::packing, [&](std::int64_t i, const DyadicInterval&) {
    if (i >= nonleaf) return 0.0;  // no non-leaf subintervals below a leaf
    return subtree[static_cast<std::size_t>(i)] / mm[static_cast<std::size_t>(i)];
  });
}

WeightCharacteristics buckley_rh1_packing(const Weight& v) {
  return packing_constant(v, v, 1.0, v);
}

WeightCharacteristics rhp_packing(const Weight& w, double p) {
  const Weight wp = w.pointwise_pow(p);
  return packing_constant(wp, w, p, wp);
}

WeightCharacteristics ap_packing(const Weight& w, double p) {
  const double e = -1.0 / (p - 1.0);
  const Weight dual = w.pointwise_pow(e);
  return packing_constant(dual, w, e, dual);
}

WeightCharacteristics dual_carleson_packing(const Weight& w, double p) {
  const Weight dual = w.pointwise_pow(-1.0 / (p - 1.0));
  return packing_constant(w, dual, -(p - 1.0), w);
}

}  // namespace dyadica
