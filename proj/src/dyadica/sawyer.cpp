#include "dyadica/sawyer.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadica/operators.hpp"

namespace dyadica {

namespace {

struct Integrals {
  double full = 0.0;
  double over_interval = 0.0;
};

// int |h|^2 m over [0,1) and over `interval`.
Integrals squared_integrals(const StepFunction& h, const Weight& m,
                            const DyadicInterval& interval) {
  const Grid& grid = h.grid();
  std::vector<double> cells(h.values().begin(), h.values().end());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] *= cells[i] * m.values()[i];
  const double width = grid.cell_width();
  Integrals out;
  out.full = pairwise_sum(cells) * width;
  const std::int64_t first = grid.first_leaf(interval);
  const std::int64_t span = grid.leaf_span(interval);
  out.over_interval = pairwise_sum(std::span<const double>(cells).subspan(
                          static_cast<std::size_t>(first), static_cast<std::size_t>(span))) *
                      width;
  return out;
}

}  // namespace

SawyerTesting sawyer_testing(const Weight& u, const Weight& v, const Weight& w, double t,
                             const SignPattern& sigma) {
  const Grid& grid = w.grid();
  if (u.grid() != grid || v.grid() != grid || sigma.grid() != grid) {
    throw std::invalid_argument("sawyer_testing: grid mismatch");
  }
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  const ConstantHaarMultiplier op(w, t, sigma);

  SawyerTesting out;
  out.forward_full = {0.0, Grid::root()};
  out.dual_full = {0.0, Grid::root()};
  out.restricted = {0.0, Grid::root()};
  out.pairing = {0.0, Grid::root(), Grid::root()};

  const std::int64_t n = grid.leaf_count();
  std::vector<double> cells(static_cast<std::size_t>(n), 0.0);
  const std::int64_t nodes = grid.node_count();
  for (std::int64_t node = 0; node < nodes; ++node) {
    const DyadicInterval interval = Grid::interval_at(node);
    const std::int64_t first = grid.first_leaf(interval);
    const std::int64_t span = grid.leaf_span(interval);
    const double mass_u_inv = u_inv.mass(interval);
    const double mass_vw2t = vw2t.mass(interval);

    // Forward: T applied to 1_I u^{-1}, measured against v w^{2t}.
    for (std::int64_t i = first; i < first + span; ++i) {
      cells[static_cast<std::size_t>(i)] = u_inv.value(i);
    }
    const StepFunction forward = op.apply(StepFunction(grid, cells));
    const Integrals fw = squared_integrals(forward, vw2t, interval);
    if (fw.full / mass_u_inv > out.forward_full.value) {
      out.forward_full = {fw.full / mass_u_inv, interval};
    }
    if (fw.over_interval / mass_u_inv > out.restricted.value) {
      out.restricted = {fw.over_interval / mass_u_inv, interval};
    }

    // Pairing against same-length intervals: <T(1_I u^{-1}), 1_J v w^{2t}>.
    {
      std::vector<double> paired(forward.values().begin(), forward.values().end());
      for (std::size_t i = 0; i < paired.size(); ++i) paired[i] *= vw2t.values()[i];
      const std::vector<double> masses = node_masses(grid, paired);
      const std::int64_t level_base = (std::int64_t{1} << interval.level) - 1;
      const std::int64_t level_count = std::int64_t{1} << interval.level;
      for (std::int64_t k = 0; k < level_count; ++k) {
        const DyadicInterval other{interval.level, k};
        const double pairing = masses[static_cast<std::size_t>(level_base + k)];
        const double value = pairing * pairing / (mass_u_inv * vw2t.mass(other));
        if (value > out.pairing.value) out.pairing = {value, interval, other};
      }
    }

    // Dual: T applied to 1_I v w^{2t}, measured against u^{-1}.
    for (std::int64_t i = first; i < first + span; ++i) {
      cells[static_cast<std::size_t>(i)] = vw2t.value(i);
    }
    const StepFunction dual = op.apply(StepFunction(grid, cells));
    const Integrals dw = squared_integrals(dual, u_inv, interval);
    if (dw.full / mass_vw2t > out.dual_full.value) {
      out.dual_full = {dw.full / mass_vw2t, interval};
    }
    if (dw.over_interval / mass_vw2t > out.restricted.value) {
      out.restricted = {dw.over_interval / mass_vw2t, interval};
    }

    for (std::int64_t i = first; i < first + span; ++i) {
      cells[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  return out;
}

}  // namespace dyadica
