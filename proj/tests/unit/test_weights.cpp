#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "dyadica/characteristics.hpp"
#include "dyadica/weight.hpp"
#include "test_helpers.hpp"

using namespace dyadica;
using dyadica::testing::random_weight;

namespace {

Weight two_cell(double a, double b) {
  return Weight(StepFunction(build_grid(1), {a, b}));
}

}  // namespace

TEST_CASE("power weights carry exact cell integrals") {
  const Grid g1 = build_grid(1);
  const Weight flat = power_weight(0.0, g1);
  CHECK(flat.value(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat.value(1) == doctest::Approx(1.0).epsilon(1e-15));

  const Weight linear = power_weight(1.0, g1);
  CHECK(linear.value(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(linear.value(1) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(power_weight(-1.0, g1), std::invalid_argument);

  // Total mass is exact: int_0^1 x^a = 1/(a+1).
  const Grid g8 = build_grid(8);
  for (double alpha : {-0.6, -0.4, 0.5, 2.0}) {
    CHECK(power_weight(alpha, g8).total_mass() ==
          doctest::Approx(1.0 / (alpha + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("cascade weights: determinism, positivity, martingale averages") {
  const Grid g = build_grid(8);
  const Weight trivial = cascade_weight(g, 0.0, 12345);
  for (std::int64_t i = 0; i < g.leaf_count(); ++i) CHECK(trivial.value(i) == 1.0);

  const Weight a = cascade_weight(g, 0.5, 42);
  const Weight b = cascade_weight(g, 0.5, 42);
  CHECK(a.same_values(b));
  CHECK(!a.same_values(cascade_weight(g, 0.5, 43)));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Weight w = cascade_weight(g, 0.5, seed);
    double low = w.value(0);
    for (std::int64_t i = 0; i < g.leaf_count(); ++i) low = std::min(low, w.value(i));
    CHECK(low > 0.0);
    const double a2 = ap_constant(w, 2.0).value;
    CHECK(std::isfinite(a2));
    CHECK(a2 >= 1.0);
  }

  // Each split preserves the parent average, so every cascade has mass 1.
  CHECK(a.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(cascade_weight(g, 1.0, 1), std::invalid_argument);
}

TEST_CASE("ap constant") {
  const Grid g3 = build_grid(3);
  const Weight one = unit_weight(g3);
  CHECK(ap_constant(one, 2.0).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ap_constant(one, 3.5).value == doctest::Approx(1.0).epsilon(1e-14));

  const Weight w = two_cell(1.0, 3.0);
  const WeightCharacteristics c = ap_constant(w, 2.0);
  CHECK(c.value == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(c.witness == DyadicInterval{0, 0});
  CHECK(c.kind == CharKind::ap);

  // Duality: [w]_{Ap}^{1/(p-1)} equals the A_{p'} constant of the dual weight.
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Weight r = random_weight(build_grid(6), rng);
    for (double p : {1.5, 2.0, 3.0}) {
      const double pp = p / (p - 1.0);
      const double lhs = ap_constant(r, p).value;
      const double rhs = std::pow(ap_constant(r.pointwise_pow(-1.0 / (p - 1.0)), pp).value, p - 1.0);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("rhp constant") {
  const Grid g3 = build_grid(3);
  CHECK(rhp_constant(Weight(StepFunction::constant(g3, 3.7)), 2.0).value ==
        doctest::Approx(1.0).epsilon(1e-14));

  const WeightCharacteristics c = rhp_constant(two_cell(1.0, 3.0), 2.0);
  CHECK(c.value == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
  CHECK(c.witness == DyadicInterval{0, 0});

  // Katz-Pereyra co-growth: across a depth sweep [w]_{RHp} and [w^p]_{RH1}
  // blow up together for the power family.
  for (double alpha : {-0.55, -0.35}) {
    double prev_rhp = 0.0;
    double prev_rh1 = 0.0;
    for (int depth : {6, 8, 10}) {
      const Weight w = power_weight(alpha, build_grid(depth));
      const double rhp = rhp_constant(w, 2.0).value;
      const double rh1 = rh1_constant(w.pointwise_pow(2.0)).value;
      CHECK(rhp >= prev_rhp);
      CHECK(rh1 >= prev_rh1);
      prev_rhp = rhp;
      prev_rh1 = rh1;
    }
    // alpha*p < -1 escapes RH_2, alpha*p > -1 stays; both constants agree on which.
    const bool escapes = alpha * 2.0 < -1.0;
    const double rhp12 = rhp_constant(power_weight(alpha, build_grid(12)), 2.0).value;
    const double rhp8 = rhp_constant(power_weight(alpha, build_grid(8)), 2.0).value;
    if (escapes) {
      CHECK(rhp12 / rhp8 > 1.05);
    } else {
      CHECK(rhp12 / rhp8 < 1.05);
    }
  }
}

TEST_CASE("rh1 constant") {
  const Grid g3 = build_grid(3);
  CHECK(rh1_constant(unit_weight(g3)).value == doctest::Approx(0.0));

  // Direct entropy oracle for the two-cell weight (1,3).
  const double expected = 0.5 * (0.5 * std::log(0.5) + 1.5 * std::log(1.5));
  const WeightCharacteristics c = rh1_constant(two_cell(1.0, 3.0));
  CHECK(c.value == doctest::Approx(expected).epsilon(1e-14));
  CHECK(c.witness == DyadicInterval{0, 0});

  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(rh1_constant(random_weight(build_grid(5), rng)).value >= 0.0);
  }
}

TEST_CASE("c2t constant") {
  const Weight w = two_cell(1.0, 3.0);
  CHECK(c2t_constant(w, 0.0).value == 1.0);
  CHECK(c2t_constant(w, 1.0).value == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(c2t_constant(w, 0.25).value <= 1.0);

  // Hölder direction pointwise: <w^{2t}>_I <= <w>_I^{2t} for 0 < 2t <= 1.
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Weight r = random_weight(build_grid(6), rng);
    for (double t : {0.1, 0.25, 0.5}) {
      const Weight r2t = r.pointwise_pow(2.0 * t);
      for (std::int64_t i = 0; i < r.grid().node_count(); ++i) {
        const DyadicInterval interval = Grid::interval_at(i);
        CHECK(r2t.average(interval) <=
              std::pow(r.average(interval), 2.0 * t) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("jensen lower bounds with equality only for constants") {
  Rng rng(31);
  const Grid g = build_grid(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Weight r = random_weight(g, rng);
    CHECK(ap_constant(r, 2.0).value > 1.0);
    CHECK(rhp_constant(r, 2.0).value > 1.0);
    CHECK(rh1_constant(r).value > 0.0);
  }
  const Weight c = Weight(StepFunction::constant(g, 2.5));
  CHECK(ap_constant(c, 2.0).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rhp_constant(c, 2.0).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rh1_constant(c).value == doctest::Approx(0.0));
}

TEST_CASE("packing constants") {
  const Grid g3 = build_grid(3);
  const Weight base = two_cell(1.0, 3.0);
  const Weight flat = Weight(StepFunction::constant(g3, 2.0));
  CHECK(packing_constant(flat, flat, 1.0, flat).value == doctest::Approx(0.0));

  // Buckley form for v = (1,3) at depth 1: single term (1*2^2)/2 over mass 2.
  const WeightCharacteristics buck = buckley_rh1_packing(base);
  CHECK(buck.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(buck.witness == DyadicInterval{0, 0});

  // Depth sweep of the RH_2 packing constant. Outside RH_2 (alpha*p < -1) the
  // constant grows by a factor bounded away from 1 at every step; inside, the
  // per-step growth factors shrink toward 1 (convergent tail).
  double prev_out = 0.0;
  for (int depth = 6; depth <= 12; ++depth) {
    const double value = rhp_packing(power_weight(-0.6, build_grid(depth)), 2.0).value;
    if (prev_out > 0.0) CHECK(value / prev_out > 1.15);
    prev_out = value;
  }
  double prev_in = 0.0;
  double prev_factor = std::numeric_limits<double>::infinity();
  for (int depth = 6; depth <= 12; ++depth) {
    const double value = rhp_packing(power_weight(-0.4, build_grid(depth)), 2.0).value;
    if (prev_in > 0.0) {
      const double factor = value / prev_in;
      CHECK(factor < prev_factor);
      prev_factor = factor;
    }
    prev_in = value;
  }
  CHECK(prev_factor < 1.1);
}

TEST_CASE("ap packing ratio is bounded and depth-stable") {
  // Forward direction: packing <= C [w]_{Ap}^{1/(p-1)} [w^{-1/(p-1)}]_{RH1};
  // the empirical C stays within a factor 2 across depths.
  const double p = 2.0;
  for (double alpha : {-0.45, 0.8}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int depth : {6, 8, 10}) {
      const Weight w = power_weight(alpha, build_grid(depth));
      const double packing = ap_packing(w, p).value;
      const double bound = std::pow(ap_constant(w, p).value, 1.0 / (p - 1.0)) *
                           rh1_constant(w.pointwise_pow(-1.0 / (p - 1.0))).value;
      const double ratio = packing / bound;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 2.0);
    CHECK(hi < 16.0);
  }

  // Dual Carleson form evaluates the same scan on the dual weight.
  Rng rng(37);
  const Weight r = random_weight(build_grid(5), rng);
  CHECK(dual_carleson_packing(r, 2.0).value > 0.0);
}

TEST_CASE("weight file round trip") {
  const Grid g = build_grid(4);
  Rng rng(41);
  const Weight w = random_weight(g, rng);
  const std::string path = "test_weight_roundtrip.txt";
  save_weight(w, path);
  const Weight back = load_weight(path);
  CHECK(back.grid().depth() == 4);
  CHECK(back.floor() == w.floor());
  CHECK(back.same_values(w));
  std::remove(path.c_str());
}
