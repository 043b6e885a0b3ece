#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "dyadica/bilinear.hpp"
#include "dyadica/conditions.hpp"
#include "dyadica/khintchine.hpp"
#include "dyadica/normest.hpp"
#include "dyadica/operators.hpp"
#include "dyadica/sup_sigma.hpp"
#include "test_helpers.hpp"

using namespace dyadica;
using dyadica::testing::random_step;
using dyadica::testing::random_weight;

namespace {

// Independent oracle: dense singular values via Jacobi SVD of the weighted
// matrix assembled column by column from the streaming application.
double svd_norm_oracle(const Grid& grid,
                       const std::function<StepFunction(const StepFunction&)>& apply,
                       const Weight& u, const Weight& v) {
  const std::int64_t n = grid.leaf_count();
  Eigen::MatrixXd scaled(n, n);
  std::vector<double> cells(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t j = 0; j < n; ++j) {
    cells[static_cast<std::size_t>(j)] = 1.0;
    const StepFunction col = apply(StepFunction(grid, cells));
    cells[static_cast<std::size_t>(j)] = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      scaled(i, j) = std::sqrt(v.value(i)) * col.value(i) / std::sqrt(u.value(j));
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("weighted operator norm on dense matrices") {
  const Grid g3 = build_grid(3);
  const double n = static_cast<double>(g3.leaf_count());
  const Weight one = unit_weight(g3);

  // Identity operator: unit-mass columns are scaled indicators.
  Eigen::MatrixXd ident = n * Eigen::MatrixXd::Identity(g3.leaf_count(), g3.leaf_count());
  const OperatorMatrix id_matrix(g3, ident, "u", "u");
  CHECK(weighted_operator_norm(id_matrix, one, one).value == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(81);
  const Weight shared = random_weight(g3, rng);
  CHECK(weighted_operator_norm(id_matrix, shared, shared).value ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Diagonal multiplier: norm is the largest |d_i| when u = v = 1.
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(g3.leaf_count(), g3.leaf_count());
  double biggest = 0.0;
  for (std::int64_t i = 0; i < g3.leaf_count(); ++i) {
    const double d = rng.uniform(-3.0, 3.0);
    diag(i, i) = n * d;
    biggest = std::max(biggest, std::abs(d));
  }
  CHECK(weighted_operator_norm(OperatorMatrix(g3, diag, "u", "v"), one, one).value ==
        doctest::Approx(biggest).epsilon(1e-12));

  // Depth-1 t-Haar multiplier: sqrt(5)/2, cross-checked against the SVD oracle.
  const Grid g1 = build_grid(1);
  const Weight w13(StepFunction(g1, {1.0, 3.0}));
  const SignPattern plus1 = SignPattern::all_plus(g1);
  const OperatorMatrix m = assemble_matrix(THaarDescriptor{w13, 1.0, plus1}, g1);
  const NormEstimate exact = weighted_operator_norm(m, unit_weight(g1), unit_weight(g1));
  CHECK(exact.value == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  const double oracle = svd_norm_oracle(
      g1, [&](const StepFunction& f) { return apply_t_haar(f, w13, 1.0, plus1); },
      unit_weight(g1), unit_weight(g1));
  CHECK(exact.value == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(exact.bound == BoundKind::exact);
}

TEST_CASE("exact spectral agrees with the svd oracle on random instances") {
  const Grid g5 = build_grid(5);
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const Weight u = random_weight(g5, rng);
    const Weight v = random_weight(g5, rng);
    const Weight w = random_weight(g5, rng);
    const SignPattern sigma = SignPattern::random(g5, rng.next_u64());
    const double t = rng.uniform(-1.5, 1.5);
    const OperatorMatrix m = assemble_matrix(THaarDescriptor{w, t, sigma}, g5);
    const NormEstimate exact = weighted_operator_norm(m, u, v);
    const double oracle = svd_norm_oracle(
        g5, [&](const StepFunction& f) { return apply_t_haar(f, w, t, sigma); }, u, v);
    CHECK(exact.value == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("power iteration: certified lower bound near the exact norm") {
  const Grid g5 = build_grid(5);
  Rng rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const Weight u = random_weight(g5, rng);
    const Weight v = random_weight(g5, rng);
    const Weight w = random_weight(g5, rng);
    const SignPattern sigma = SignPattern::random(g5, rng.next_u64());
    const double t = rng.uniform(-1.2, 1.2);
    const THaarMultiplier op(w, t, sigma);
    PowerOptions options;
    options.tolerance = 1e-12;
    options.seed = trial + 1;
    const NormEstimate power = weighted_norm_power(op, u, v, options);
    const OperatorMatrix m = assemble_matrix(THaarDescriptor{w, t, sigma}, g5);
    const NormEstimate exact = weighted_operator_norm(m, u, v);
    CHECK(power.bound == BoundKind::lower_bound);
    CHECK(power.value <= exact.value * (1.0 + 1e-10));
    CHECK(power.value >= exact.value * (1.0 - 1e-6));
    CHECK(power.method == NormMethod::power_iteration);
  }
}

TEST_CASE("norm transfer between the weighted realizations") {
  // ||T^t_{w,sigma}||_{L2(u)->L2(v)} = ||T_sigma T_{w,t}||_{L2(u)->L2(v w^{2t})}.
  const Grid g5 = build_grid(5);
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const Weight u = random_weight(g5, rng);
    const Weight v = random_weight(g5, rng);
    const Weight w = random_weight(g5, rng);
    const SignPattern sigma = SignPattern::random(g5, rng.next_u64());
    const double t = rng.uniform(-1.5, 1.5);
    const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
    const NormEstimate lhs =
        weighted_operator_norm(assemble_matrix(THaarDescriptor{w, t, sigma}, g5), u, v);
    const NormEstimate rhs = weighted_operator_norm(
        assemble_matrix(ConstantHaarDescriptor{w, t, sigma}, g5), u, vw2t);
    CHECK(std::abs(lhs.value - rhs.value) <= 1e-8 * std::max(1.0, lhs.value));
  }
}

TEST_CASE("condition c4 matches the svd oracle at depth 6") {
  const Grid g6 = build_grid(6);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Weight u = cascade_weight(g6, 0.5, seed);
    const Weight v = cascade_weight(g6, 0.5, seed + 100);
    const Weight w = cascade_weight(g6, 0.5, seed + 200);
    const double t = seed == 1 ? 1.0 : (seed == 2 ? -0.5 : 0.5);
    const NormEstimate c4 = condition_c4(u, v, w, t);
    const CarlesonSequence lambda = lambda_sequence(u, v, w, t);
    const double oracle = svd_norm_oracle(
        g6, [&](const StepFunction& f) { return apply_positive(f, w, t, lambda); }, u, v);
    CHECK(c4.value == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("sup over signs: trivial cases") {
  const Grid g4 = build_grid(4);
  const Weight one = unit_weight(g4);
  SupSigmaOptions options;
  options.restarts = 4;
  const SupSigmaResult flat = sup_sigma_norm(one, one, one, 0.9, options);
  CHECK(flat.estimate.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(flat.estimate.bound == BoundKind::lower_bound);
  CHECK(flat.estimate.method == NormMethod::sigma_alternation);

  // Depth 1 has a single sign, so the sup equals the fixed-sign norm.
  const Grid g1 = build_grid(1);
  const Weight w13(StepFunction(g1, {1.0, 3.0}));
  const SupSigmaResult single = sup_sigma_norm(unit_weight(g1), unit_weight(g1), w13, 1.0, options);
  CHECK(single.estimate.value == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("sup over signs matches exhaustive enumeration at depth 3") {
  const Grid g3 = build_grid(3);
  SupSigmaOptions options;
  options.restarts = 8;
  options.seed = 7;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Weight u = cascade_weight(g3, 0.5, seed);
    const Weight v = cascade_weight(g3, 0.5, seed + 10);
    const Weight w = cascade_weight(g3, 0.5, seed + 20);
    const double t = (seed % 2 == 0) ? 1.0 : -0.5;

    double exhaustive = 0.0;
    for (std::uint64_t bits = 0; bits < 128; ++bits) {
      const SignPattern sigma = SignPattern::from_bits(g3, bits);
      exhaustive = std::max(
          exhaustive, svd_norm_oracle(
                          g3, [&](const StepFunction& f) { return apply_t_haar(f, w, t, sigma); },
                          u, v));
    }
    const SupSigmaResult found = sup_sigma_norm(u, v, w, t, options);
    CHECK(found.estimate.value == doctest::Approx(exhaustive).epsilon(1e-8));
    CHECK(found.estimate.value <= exhaustive * (1.0 + 1e-10));
  }
}

TEST_CASE("alternation trace never decreases") {
  const Grid g5 = build_grid(5);
  SupSigmaOptions options;
  options.restarts = 3;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SupSigmaResult r =
        sup_sigma_norm(cascade_weight(g5, 0.6, seed), cascade_weight(g5, 0.6, seed + 1),
                       cascade_weight(g5, 0.6, seed + 2), 1.0, options);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i] >= r.trace[i - 1] * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("khintchine expectation identity") {
  // Depth-1 hand case: v = 1, w = (1,3), t = 1, <f,h> = 1 gives 5/4 for both signs.
  const Grid g1 = build_grid(1);
  const Weight w13(StepFunction(g1, {1.0, 3.0}));
  const Weight m1 = pointwise_product(unit_weight(g1), w13.pointwise_pow(2.0));
  const StepFunction h1(g1, {-1.0, 1.0});
  CHECK(khintchine_closed_form(m1, w13, 1.0, h1) == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(constant_haar_norm_sq(m1, w13, 1.0, h1, SignPattern::all_plus(g1)) ==
        doctest::Approx(1.25).epsilon(1e-13));
  CHECK(constant_haar_norm_sq(m1, w13, 1.0, h1, SignPattern::from_bits(g1, 0)) ==
        doctest::Approx(1.25).epsilon(1e-13));

  const Grid g3 = build_grid(3);
  Rng rng(101);
  CHECK(khintchine_closed_form(random_weight(g3, rng), random_weight(g3, rng), 0.7,
                               StepFunction::constant(g3, 3.0)) == doctest::Approx(0.0));

  // Exhaustive enumeration over 128 sign patterns equals the closed form.
  for (int trial = 0; trial < 50; ++trial) {
    const Weight v = random_weight(g3, rng);
    const Weight w = random_weight(g3, rng);
    const double t = rng.uniform(-1.5, 1.5);
    const StepFunction f = random_step(g3, rng, -2.0, 2.0);
    const Weight m = pointwise_product(v, w.pointwise_pow(2.0 * t));
    const double closed = khintchine_closed_form(m, w, t, f);
    const double enumerated = khintchine_enumerate(m, w, t, f);
    CHECK(std::abs(closed - enumerated) < 1e-10 * std::max(1.0, closed));
  }

  // Monte Carlo lands near the closed form.
  const Weight v = random_weight(g3, rng);
  const Weight w = random_weight(g3, rng);
  const StepFunction f = random_step(g3, rng);
  const Weight m = pointwise_product(v, w.pointwise_pow(1.6));
  const double closed = khintchine_closed_form(m, w, 0.8, f);
  const double mc = khintchine_monte_carlo(m, w, 0.8, f, 4096, 11);
  CHECK(std::abs(mc - closed) < 0.2 * std::max(closed, 1e-12));
}

TEST_CASE("bilinear decomposition") {
  const Grid g6 = build_grid(6);
  Rng rng(103);

  // u = v = 1: the indicator-paired sums vanish.
  {
    const Weight w = random_weight(g6, rng);
    const SignPattern sigma = SignPattern::random(g6, 3);
    const StepFunction f = random_step(g6, rng);
    const StepFunction g = random_step(g6, rng);
    const BilinearDecomposition d =
        bilinear_decomposition(f, g, unit_weight(g6), unit_weight(g6), w, 0.0, sigma);
    CHECK(d.s2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.s4 == doctest::Approx(0.0).epsilon(1e-12));
    const double pairing = inner(apply_t_haar(f, w, 0.0, sigma), g);
    CHECK(std::abs(d.total() - pairing) < 1e-10);
  }

  // Sum identity against the direct pairing oracle, 100 random instances.
  for (int trial = 0; trial < 100; ++trial) {
    const Weight u = random_weight(g6, rng);
    const Weight v = random_weight(g6, rng);
    const Weight w = random_weight(g6, rng);
    const SignPattern sigma = SignPattern::random(g6, rng.next_u64());
    const double t = rng.uniform(-1.5, 1.5);
    const StepFunction f = random_step(g6, rng);
    const StepFunction g = random_step(g6, rng);
    const BilinearDecomposition d = bilinear_decomposition(f, g, u, v, w, t, sigma);
    const StepFunction fu = pointwise_product(f, u.reciprocal());
    const StepFunction gv = pointwise_product(g, v);
    const double pairing = inner(apply_t_haar(fu, w, t, sigma), gv);
    CHECK(std::abs(d.total() - pairing) < 1e-10 * std::max(1.0, std::abs(pairing)));
  }
}

TEST_CASE("bilinear pieces obey their condition bounds") {
  const Grid g5 = build_grid(5);
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const Weight u = cascade_weight(g5, 0.5, 300 + trial);
    const Weight v = cascade_weight(g5, 0.5, 400 + trial);
    const Weight w = cascade_weight(g5, 0.5, 500 + trial);
    const double t = rng.uniform(-1.0, 1.5);
    const SignPattern sigma = SignPattern::random(g5, rng.next_u64());
    const ConditionReport report = compute_report(u, v, w, t);

    const StepFunction f = random_step(g5, rng);
    const StepFunction g = random_step(g5, rng);
    const BilinearDecomposition d = bilinear_decomposition(f, g, u, v, w, t, sigma);
    const double fn = std::sqrt(weighted_norm_sq(f, u.reciprocal()));
    const double gn = std::sqrt(weighted_norm_sq(g, v));
    const double budget = fn * gn * (1.0 + 1e-9);
    CHECK(std::abs(d.s1) <= std::sqrt(report.c1) * budget);
    CHECK(std::abs(d.s2) <= 2.0 * std::sqrt(report.c2) * budget);
    CHECK(std::abs(d.s3) <= 2.0 * std::sqrt(report.c3) * budget);
    CHECK(std::abs(d.s4) <= report.c4 * budget);

    // Positive bilinear form bounded by C4 for nonnegative inputs.
    const StepFunction fp = random_step(g5, rng, 0.0, 2.0);
    const StepFunction gp = random_step(g5, rng, 0.0, 2.0);
    const double form = positive_bilinear_form(fp, gp, u, v, w, t, report.lambda.values());
    CHECK(form <= report.c4 * std::sqrt(l2_norm_sq(fp) * l2_norm_sq(gp)) * (1.0 + 1e-9));
  }
}
