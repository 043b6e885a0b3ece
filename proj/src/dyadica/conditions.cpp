#include "dyadica/conditions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace dyadica {

namespace {

void require_triple(const Weight& u, const Weight& v, const Weight& w) {
  if (u.grid() != w.grid() || v.grid() != w.grid()) {
    throw std::invalid_argument("condition: weight grids mismatch");
  }
}

}  // namespace

SupResult condition_c1(const Weight& u, const Weight& v, const Weight& w, double t) {
  require_triple(u, v, w);
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  const Grid& grid = w.grid();
  SupResult best{-std::numeric_limits<double>::infinity(), Grid::root()};
  const std::int64_t nodes = grid.node_count();
  for (std::int64_t i = 0; i < nodes; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double value = u_inv.average(interval) * vw2t.average(interval) /
                         std::pow(w.average(interval), 2.0 * t);
    if (value > best.value) best = {value, interval};
  }
  return best;
}

namespace {

CarlesonSequence packing_sequence(const Weight& numerator, const Weight& factor, const Weight& w,
                                  double t, const Weight& measure) {
  // |J| (Delta_J numerator)^2 <factor>_J / <w>_J^{2t}
  const Grid& grid = w.grid();
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> values(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double d = numerator.average(interval.right_child()) -
                     numerator.average(interval.left_child());
    values[static_cast<std::size_t>(i)] = interval.length() * d * d * factor.average(interval) /
                                          std::pow(w.average(interval), 2.0 * t);
  }
  return CarlesonSequence(grid, std::move(values), measure);
}

}  // namespace

CarlesonSequence condition_c2_sequence(const Weight& u, const Weight& v, const Weight& w,
                                       double t) {
  require_triple(u, v, w);
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  return packing_sequence(u_inv, vw2t, w, t, u_inv);
}

CarlesonSequence condition_c3_sequence(const Weight& u, const Weight& v, const Weight& w,
                                       double t) {
  require_triple(u, v, w);
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  return packing_sequence(vw2t, u_inv, w, t, vw2t);
}

CarlesonSequence lambda_sequence(const Weight& u, const Weight& v, const Weight& w, double t) {
  require_triple(u, v, w);
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  const Grid& grid = w.grid();
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> values(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double du = std::abs(u_inv.average(interval.right_child()) -
                               u_inv.average(interval.left_child()));
    const double dv = std::abs(vw2t.average(interval.right_child()) -
                               vw2t.average(interval.left_child()));
    values[static_cast<std::size_t>(i)] = (dv / vw2t.average(interval)) *
                                          (du / u_inv.average(interval)) * interval.length() /
                                          std::pow(w.average(interval), t);
  }
  return CarlesonSequence(grid, std::move(values), u_inv);
}

NormEstimate condition_c4(const Weight& u, const Weight& v, const Weight& w, double t,
                          const C4Options& options) {
  require_triple(u, v, w);
  const Grid& grid = w.grid();
  CarlesonSequence lambda = lambda_sequence(u, v, w, t);
  bool all_zero = true;
  for (double x : lambda.values()) {
    if (x != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    return NormEstimate{0.0, NormMethod::exact_spectral, 0, 0.0, BoundKind::exact};
  }
  const bool use_exact = options.method == C4Method::exact ||
                         (options.method == C4Method::auto_select && grid.depth() <= 12);
  if (use_exact) {
    const OperatorMatrix m =
        assemble_matrix(PositiveDescriptor{w, t, lambda}, grid, "u", "v");
    return weighted_operator_norm(m, u, v);
  }
  const PositiveOperator op(w, t, std::move(lambda));
  return weighted_norm_power(op, u, v, options.power);
}

ConditionReport compute_report(const Weight& u, const Weight& v, const Weight& w, double t,
                               const C4Options& options) {
  require_triple(u, v, w);
  ConditionReport report{.c1 = 0,
                         .c2 = 0,
                         .c3 = 0,
                         .c4 = 0,
                         .c1_witness = Grid::root(),
                         .c2_witness = Grid::root(),
                         .c3_witness = Grid::root(),
                         .c4_estimate = {},
                         .lambda = lambda_sequence(u, v, w, t),
                         .combined = 0,
                         .one_weight = u.same_values(v),
                         .unweighted = false};
  report.unweighted = report.one_weight && u.is_unit();
  const SupResult c1 = condition_c1(u, v, w, t);
  report.c1 = c1.value;
  report.c1_witness = c1.witness;
  const SupResult c2 = carleson_intensity(condition_c2_sequence(u, v, w, t));
  report.c2 = c2.value;
  report.c2_witness = c2.witness;
  const SupResult c3 = carleson_intensity(condition_c3_sequence(u, v, w, t));
  report.c3 = c3.value;
  report.c3_witness = c3.witness;
  report.c4_estimate = condition_c4(u, v, w, t, options);
  report.c4 = report.c4_estimate.value;
  report.combined = std::sqrt(report.c1) + std::sqrt(report.c2) + std::sqrt(report.c3) + report.c4;
  return report;
}

std::string ConditionReport::to_json() const {
  nlohmann::json j;
  j["c1"] = c1;
  j["c1_witness"] = {c1_witness.level, c1_witness.pos};
  j["c2"] = c2;
  j["c2_witness"] = {c2_witness.level, c2_witness.pos};
  j["c3"] = c3;
  j["c3_witness"] = {c3_witness.level, c3_witness.pos};
  j["c4"] = c4;
  j["c4_method"] = to_string(c4_estimate.method);
  j["c4_bound"] = to_string(c4_estimate.bound);
  j["c4_iterations"] = c4_estimate.iterations;
  j["c4_residual"] = c4_estimate.residual;
  j["combined"] = combined;
  j["one_weight"] = one_weight;
  j["unweighted"] = unweighted;
  double lambda_max = 0.0;
  std::int64_t lambda_arg = 0;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(lambda.values().size()); ++i) {
    if (lambda.value(i) > lambda_max) {
      lambda_max = lambda.value(i);
      lambda_arg = i;
    }
  }
  const DyadicInterval peak = Grid::interval_at(lambda_arg);
  j["lambda_max"] = lambda_max;
  j["lambda_max_witness"] = {peak.level, peak.pos};
  j["lambda_sum"] = pairwise_sum(lambda.values());
  return j.dump();
}

}  // namespace dyadica
