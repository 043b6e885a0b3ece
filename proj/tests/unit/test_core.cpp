#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dyadica/haar.hpp"
#include "dyadica/step_function.hpp"
#include "test_helpers.hpp"

using namespace dyadica;
using dyadica::testing::random_step;

TEST_CASE("grid construction and interval arithmetic") {
  CHECK_THROWS_AS(build_grid(0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(25), std::invalid_argument);

  const Grid g1 = build_grid(1);
  CHECK(g1.node_count() == 3);
  CHECK(build_grid(2).node_count() == 7);
  CHECK(g1.leaf_count() == 2);

  const Grid g3 = build_grid(3);
  for (std::int64_t i = 0; i < g3.node_count(); ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    CHECK(Grid::node_index(interval) == i);
    if (i > 0) CHECK(Grid::node_index(interval.parent()) == (i - 1) / 2);
    if (!g3.is_leaf(interval)) {
      CHECK(Grid::node_index(interval.left_child()) == 2 * i + 1);
      CHECK(Grid::node_index(interval.right_child()) == 2 * i + 2);
    }
  }
  CHECK(!g3.contains({4, 0}));
  CHECK(!g3.contains({2, 4}));
}

TEST_CASE("averages are exact cell means") {
  const Grid g1 = build_grid(1);
  const StepFunction f(g1, {1.0, 3.0});
  CHECK(average(f, {0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(average(f, {1, 1}) == doctest::Approx(3.0).epsilon(1e-15));

  // Cells of the x^1 power weight carry exact integrals: <x>_{[0,1/2)} = 1/4.
  const StepFunction x_cells(g1, {0.25, 0.75});
  CHECK(average(x_cells, {1, 0}) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(average(f, DyadicInterval{2, 0}), std::invalid_argument);
}

TEST_CASE("delta on non-leaf intervals") {
  const Grid g1 = build_grid(1);
  const StepFunction f(g1, {1.0, 3.0});
  CHECK(delta(f, {0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(delta(f, DyadicInterval{1, 0}), std::invalid_argument);

  const Grid g3 = build_grid(3);
  const StepFunction c = StepFunction::constant(g3, 7.5);
  for (std::int64_t i = 0; i < g3.nonleaf_count(); ++i) {
    CHECK(delta(c, Grid::interval_at(i)) == doctest::Approx(0.0));
  }

  // <f,h_I> = sqrt(|I|) Delta_I f / 2 for every non-leaf interval.
  Rng rng(7);
  const StepFunction r = random_step(g3, rng);
  const HaarExpansion e = haar_transform(r);
  for (std::int64_t i = 0; i < g3.nonleaf_count(); ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double expected = std::sqrt(interval.length()) * delta(r, interval) / 2.0;
    CHECK(e.coefficient(interval) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("haar transform matches hand values") {
  const Grid g1 = build_grid(1);
  const HaarExpansion e = haar_transform(StepFunction(g1, {1.0, 3.0}));
  CHECK(e.mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.coefficients[0] == doctest::Approx(1.0).epsilon(1e-15));

  const Grid g3 = build_grid(3);
  const HaarExpansion c = haar_transform(StepFunction::constant(g3, 5.0));
  CHECK(c.mean == doctest::Approx(5.0));
  for (double coeff : c.coefficients) CHECK(coeff == doctest::Approx(0.0));

  // A sampled Haar function is its own expansion.
  const StepFunction h = haar_function(g3, {0, 0});
  const HaarExpansion he = haar_transform(h);
  CHECK(he.mean == doctest::Approx(0.0));
  CHECK(he.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < he.coefficients.size(); ++i) {
    CHECK(he.coefficients[i] == doctest::Approx(0.0));
  }
}

TEST_CASE("inverse haar round trip") {
  const Grid g1 = build_grid(1);
  const StepFunction f = inverse_haar(HaarExpansion(g1, 2.0, {1.0}));
  CHECK(f.value(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.value(1) == doctest::Approx(3.0).epsilon(1e-15));

  const Grid g12 = build_grid(12);
  const StepFunction z = inverse_haar(
      HaarExpansion(g12, 0.0, std::vector<double>(static_cast<std::size_t>(g12.nonleaf_count()), 0.0)));
  for (std::int64_t i = 0; i < z.size(); ++i) CHECK(z.value(i) == 0.0);

  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const StepFunction r = random_step(g12, rng, -5.0, 5.0);
    const StepFunction back = inverse_haar(haar_transform(r));
    for (std::int64_t i = 0; i < r.size(); ++i) {
      worst = std::max(worst, std::abs(back.value(i) - r.value(i)));
    }
  }
  CHECK(worst < 1e-10);

  CHECK_THROWS_AS(HaarExpansion(g1, 0.0, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("orthonormality against the quadrature oracle") {
  // Gram entries computed by direct quadrature, independent of the transform.
  const Grid g = build_grid(5);
  const std::int64_t nonleaf = g.nonleaf_count();
  double worst = 0.0;
  for (std::int64_t a = 0; a < nonleaf; ++a) {
    const StepFunction ha = haar_function(g, Grid::interval_at(a));
    for (std::int64_t b = a; b < nonleaf; ++b) {
      const StepFunction hb = haar_function(g, Grid::interval_at(b));
      const double expected = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(ha, hb) - expected));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("plancherel and linearity") {
  const Grid g = build_grid(9);
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const StepFunction f = random_step(g, rng, -3.0, 3.0);
    const HaarExpansion e = haar_transform(f);
    std::vector<double> sq(e.coefficients.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = e.coefficients[i] * e.coefficients[i];
    const double sum = e.mean * e.mean + pairwise_sum(sq);
    CHECK(std::abs(sum - l2_norm_sq(f)) < 1e-10);
  }

  const StepFunction f = random_step(g, rng);
  const StepFunction h = random_step(g, rng);
  const HaarExpansion combined = haar_transform(pointwise_add(f, h, 2.5, -1.25));
  const HaarExpansion ef = haar_transform(f);
  const HaarExpansion eh = haar_transform(h);
  CHECK(combined.mean == doctest::Approx(2.5 * ef.mean - 1.25 * eh.mean).epsilon(1e-12));
  for (std::size_t i = 0; i < combined.coefficients.size(); ++i) {
    CHECK(combined.coefficients[i] ==
          doctest::Approx(2.5 * ef.coefficients[i] - 1.25 * eh.coefficients[i]).epsilon(1e-11));
  }
}

TEST_CASE("step function text round trip") {
  const Grid g = build_grid(3);
  Rng rng(17);
  const StepFunction f = random_step(g, rng, -2.0, 9.0);
  std::stringstream buffer;
  write_step_function(buffer, f);
  const StepFunction back = read_step_function(buffer);
  CHECK(back.grid().depth() == 3);
  for (std::int64_t i = 0; i < f.size(); ++i) CHECK(back.value(i) == f.value(i));
}
