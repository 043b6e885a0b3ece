#include "dyadica/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dyadica/bilinear.hpp"
#include "dyadica/characteristics.hpp"
#include "dyadica/conditions.hpp"
#include "dyadica/haar.hpp"
#include "dyadica/khintchine.hpp"
#include "dyadica/operators.hpp"
#include "dyadica/rng.hpp"
#include "dyadica/sawyer.hpp"
#include "dyadica/sup_sigma.hpp"

namespace dyadica {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

using Row = std::vector<std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::json sidecar = nlohmann::json::array();

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << columns[i] << (i + 1 == columns.size() ? "" : ",");
    }
    out << "\n";
    for (const Row& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << row[i] << (i + 1 == row.size() ? "" : ",");
      }
      out << "\n";
    }
  }
};

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

C4Options c4_options_for(const SuiteConfig& suite) {
  C4Options options;
  if (suite.c4_method == "exact") {
    options.method = C4Method::exact;
  } else if (suite.c4_method == "power") {
    options.method = C4Method::power;
  } else {
    options.method = C4Method::auto_select;
  }
  return options;
}

nlohmann::json interval_json(const DyadicInterval& interval) {
  return {interval.level, interval.pos};
}

// Work items run out of order; rows land in slot order.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_lock;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> guard(error_lock);
          if (!failed.exchange(true)) first_error = e.what();
        }
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (failed.load()) throw std::runtime_error(first_error);
}

// Max relative gap of the pointwise identity T^t_{w,sigma} f = w^t (T_sigma T_{w,t} f)
// over a handful of random functions.
double transfer_gap(const Weight& w, double t, const SignPattern& sigma, Rng& rng) {
  const Grid& grid = w.grid();
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> cells(static_cast<std::size_t>(grid.leaf_count()));
    for (double& c : cells) c = rng.uniform(-1.0, 1.0);
    const StepFunction f(grid, std::move(cells));
    const StepFunction lhs = apply_t_haar(f, w, t, sigma);
    const StepFunction rhs = apply_constant_haar(f, w, t, sigma);
    double scale = 1e-300;
    for (std::int64_t i = 0; i < lhs.size(); ++i) scale = std::max(scale, std::abs(lhs.value(i)));
    for (std::int64_t i = 0; i < lhs.size(); ++i) {
      const double gap = std::abs(lhs.value(i) - std::pow(w.value(i), t) * rhs.value(i));
      worst = std::max(worst, gap / std::max(scale, 1.0));
    }
  }
  return worst;
}

// Max relative gap of lambda_I against sqrt(mu_I rho_I) <w>_I^t <u^{-1}>_I^{-3/2} <vw^{2t}>_I^{-3/2}.
double lambda_identity_gap(const Weight& u, const Weight& v, const Weight& w, double t,
                           const CarlesonSequence& lambda) {
  const CarlesonSequence mu = condition_c2_sequence(u, v, w, t);
  const CarlesonSequence rho = condition_c3_sequence(u, v, w, t);
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
  double worst = 0.0;
  for (std::int64_t i = 0; i < w.grid().nonleaf_count(); ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double expected = std::sqrt(mu.value(i) * rho.value(i)) *
                            std::pow(w.average(interval), t) *
                            std::pow(u_inv.average(interval), -1.5) *
                            std::pow(vw2t.average(interval), -1.5);
    worst = std::max(worst, std::abs(lambda.value(i) - expected) / std::max(1.0, expected));
  }
  return worst;
}

struct InstanceRow {
  Row row;
  nlohmann::json witness;
  bool pass = true;
};

Table run_two_or_one_weight(const SuiteConfig& suite, int threads, bool one_weight) {
  const Grid grid(suite.depth);
  Table table;
  table.columns = {"suite",     "id",        "seed",    "depth",    "t",
                   "delta",     "c1",        "c2",      "c3",       "c4",
                   "c4_method", "combined",  "sup_sigma", "ratio_upper", "ratio_c1",
                   "ratio_c2",  "ratio_c3",  "transfer_gap", "lambda_gap", "pass"};
  if (one_weight) {
    table.columns.insert(table.columns.end() - 1,
                         {"combined_one_weight", "reverse_step_margin", "lambda_bound_margin"});
  }
  if (suite.timings) table.columns.push_back("wall_ms");

  const std::int64_t total = static_cast<std::int64_t>(suite.instances) *
                             static_cast<std::int64_t>(suite.t_values.size());
  std::vector<InstanceRow> rows(static_cast<std::size_t>(total));

  parallel_for(total, threads, [&](std::int64_t slot) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t instance = slot / static_cast<std::int64_t>(suite.t_values.size());
    const double t = suite.t_values[static_cast<std::size_t>(
        slot % static_cast<std::int64_t>(suite.t_values.size()))];
    const std::uint64_t instance_seed = hash_mix(suite.seed, static_cast<std::uint64_t>(instance));
    const Weight u = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 0));
    const Weight v =
        one_weight ? u : cascade_weight(grid, suite.delta, hash_mix(instance_seed, 1));
    const Weight w = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 2));

    const ConditionReport report = compute_report(u, v, w, t, c4_options_for(suite));

    SupSigmaOptions sup_options;
    sup_options.restarts = suite.restarts;
    sup_options.seed = hash_mix(instance_seed, 3);
    const SupSigmaResult sup = sup_sigma_norm(u, v, w, t, sup_options);

    Rng check_rng = derive_stream(instance_seed, 4);
    const SignPattern sigma = SignPattern::random(grid, hash_mix(instance_seed, 5));
    const double transfer = transfer_gap(w, t, sigma, check_rng);
    const double lambda_gap = lambda_identity_gap(u, v, w, t, report.lambda);

    const double ratio_upper = sup.estimate.value / std::max(report.combined, 1e-300);
    const double ratio_c1 = std::sqrt(report.c1) / std::max(sup.estimate.value, 1e-300);
    const double ratio_c2 = std::sqrt(report.c2) / std::max(sup.estimate.value, 1e-300);
    const double ratio_c3 = std::sqrt(report.c3) / std::max(sup.estimate.value, 1e-300);

    bool pass = transfer <= suite.tol_transfer && lambda_gap <= suite.tol_identity &&
                ratio_upper <= suite.k_upper &&
                std::max({ratio_c1, ratio_c2, ratio_c3}) <= suite.k_lower;

    Row row = {suite.suite,
               fmt_int(slot),
               fmt_int(static_cast<std::int64_t>(instance_seed)),
               fmt_int(suite.depth),
               fmt(t),
               fmt(suite.delta),
               fmt(report.c1),
               fmt(report.c2),
               fmt(report.c3),
               fmt(report.c4),
               to_string(report.c4_estimate.method),
               fmt(report.combined),
               fmt(sup.estimate.value),
               fmt(ratio_upper),
               fmt(ratio_c1),
               fmt(ratio_c2),
               fmt(ratio_c3),
               fmt(transfer),
               fmt(lambda_gap)};
    if (one_weight) {
      const double combined_ow = std::sqrt(report.c1) + std::sqrt(report.c2) +
                                 std::sqrt(report.c3) + std::sqrt(report.c2 * report.c3);
      // Reverse of the joint condition: <w>_I^{2t} <= <u^{-1}>_I <u w^{2t}>_I,
      // exact pointwise for t <= 0 or t >= 1; margin is the worst violation.
      const Weight u_inv = u.reciprocal();
      const Weight uw2t = pointwise_product(u, w.pointwise_pow(2.0 * t));
      double reverse_margin = 0.0;
      for (std::int64_t i = 0; i < grid.node_count(); ++i) {
        const DyadicInterval interval = Grid::interval_at(i);
        const double lhs = std::pow(w.average(interval), 2.0 * t);
        const double rhs = u_inv.average(interval) * uw2t.average(interval);
        reverse_margin = std::max(reverse_margin, lhs / rhs - 1.0);
      }
      // lambda_I <= sqrt(mu_I rho_I) / (<u^{-1}>_I <u w^{2t}>_I) for these t.
      const CarlesonSequence mu = condition_c2_sequence(u, u, w, t);
      const CarlesonSequence rho = condition_c3_sequence(u, u, w, t);
      double lambda_bound_margin = 0.0;
      for (std::int64_t i = 0; i < grid.nonleaf_count(); ++i) {
        const DyadicInterval interval = Grid::interval_at(i);
        const double bound = std::sqrt(mu.value(i) * rho.value(i)) /
                             (u_inv.average(interval) * uw2t.average(interval));
        if (bound > 0.0) {
          lambda_bound_margin =
              std::max(lambda_bound_margin, report.lambda.value(i) / bound - 1.0);
        }
      }
      pass = pass && reverse_margin <= suite.tol_necessity &&
             lambda_bound_margin <= suite.tol_necessity;
      row.push_back(fmt(combined_ow));
      row.push_back(fmt(reverse_margin));
      row.push_back(fmt(lambda_bound_margin));
    }
    row.push_back(pass ? "1" : "0");
    if (suite.timings) row.push_back(fmt(elapsed_ms(started)));

    nlohmann::json witness;
    witness["id"] = slot;
    witness["c1_witness"] = interval_json(report.c1_witness);
    witness["c2_witness"] = interval_json(report.c2_witness);
    witness["c3_witness"] = interval_json(report.c3_witness);
    witness["c4_iterations"] = report.c4_estimate.iterations;
    witness["c4_residual"] = report.c4_estimate.residual;
    witness["sup_sigma_bound"] = to_string(sup.estimate.bound);
    rows[static_cast<std::size_t>(slot)] = InstanceRow{std::move(row), std::move(witness), pass};
  });

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.row));
    table.sidecar.push_back(std::move(r.witness));
  }
  return table;
}

Table run_unweighted(const SuiteConfig& suite, int threads) {
  const Grid grid(suite.depth);
  Table table;
  table.columns = {"suite", "id",   "seed",        "depth",          "t",
                   "delta", "c2t",  "norm",        "norm_method",    "norm_sq_over_c2t",
                   "testing_margin", "pass"};
  if (suite.timings) table.columns.push_back("wall_ms");
  const std::int64_t total = static_cast<std::int64_t>(suite.instances) *
                             static_cast<std::int64_t>(suite.t_values.size());
  std::vector<InstanceRow> rows(static_cast<std::size_t>(total));

  parallel_for(total, threads, [&](std::int64_t slot) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t instance = slot / static_cast<std::int64_t>(suite.t_values.size());
    const double t = suite.t_values[static_cast<std::size_t>(
        slot % static_cast<std::int64_t>(suite.t_values.size()))];
    const std::uint64_t instance_seed = hash_mix(suite.seed, static_cast<std::uint64_t>(instance));
    const Weight w = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 2));
    const Weight one = unit_weight(grid);
    const WeightCharacteristics c2t = c2t_constant(w, t);
    const SignPattern plus = SignPattern::all_plus(grid);

    NormEstimate norm;
    if (suite.c4_method == "power") {
      norm = weighted_norm_power(THaarMultiplier(w, t, plus), one, one);
    } else {
      norm = weighted_operator_norm(assemble_matrix(THaarDescriptor{w, t, plus}, grid), one, one);
    }
    const double norm_sq = norm.value * norm.value;
    const double testing_margin = c2t.value / norm_sq - 1.0;
    const bool pass = testing_margin <= suite.tol_necessity;

    Row row = {suite.suite,
               fmt_int(slot),
               fmt_int(static_cast<std::int64_t>(instance_seed)),
               fmt_int(suite.depth),
               fmt(t),
               fmt(suite.delta),
               fmt(c2t.value),
               fmt(norm.value),
               to_string(norm.method),
               fmt(norm_sq / std::max(c2t.value, 1e-300)),
               fmt(testing_margin)};
    row.push_back(pass ? "1" : "0");
    if (suite.timings) row.push_back(fmt(elapsed_ms(started)));
    nlohmann::json witness;
    witness["id"] = slot;
    witness["c2t_witness"] = interval_json(c2t.witness);
    rows[static_cast<std::size_t>(slot)] = InstanceRow{std::move(row), std::move(witness), pass};
  });

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.row));
    table.sidecar.push_back(std::move(r.witness));
  }
  return table;
}

Table run_packing(const SuiteConfig& suite, int threads) {
  Table table;
  table.columns = {"suite",      "id",        "family", "alpha",      "seed",    "p",
                   "depth",      "rhp_packing", "rhp_bound", "rhp_ratio", "buckley_wp",
                   "ap_packing", "ap_bound",  "ap_ratio", "pass"};
  if (suite.timings) table.columns.push_back("wall_ms");

  struct Item {
    bool cascade;
    double alpha;
    std::uint64_t seed;
    int depth;
  };
  std::vector<Item> items;
  for (int depth : suite.depth_list()) {
    for (double alpha : suite.alphas) items.push_back({false, alpha, 0, depth});
    for (int i = 0; i < suite.instances; ++i) {
      items.push_back({true, 0.0, hash_mix(suite.seed, static_cast<std::uint64_t>(i)), depth});
    }
  }
  std::vector<InstanceRow> rows(items.size());

  parallel_for(static_cast<std::int64_t>(items.size()), threads, [&](std::int64_t slot) {
    const auto started = std::chrono::steady_clock::now();
    const Item& item = items[static_cast<std::size_t>(slot)];
    const Grid grid(item.depth);
    const Weight w = item.cascade ? cascade_weight(grid, suite.delta, item.seed)
                                  : power_weight(item.alpha, grid);
    const double p = suite.p;
    const double rhp_pack = rhp_packing(w, p).value;
    const Weight wp = w.pointwise_pow(p);
    const double buckley_wp = buckley_rh1_packing(wp).value;
    const double rhp_bound = std::pow(rhp_constant(w, p).value, p) * rh1_constant(wp).value;
    const double ap_pack = ap_packing(w, p).value;
    const Weight dual = w.pointwise_pow(-1.0 / (p - 1.0));
    const double ap_bound =
        std::pow(ap_constant(w, p).value, 1.0 / (p - 1.0)) * rh1_constant(dual).value;
    const bool pass = std::isfinite(rhp_pack) && std::isfinite(ap_pack);
    Row row = {suite.suite,
               fmt_int(slot),
               item.cascade ? "cascade" : "power",
               fmt(item.alpha),
               fmt_int(static_cast<std::int64_t>(item.seed)),
               fmt(p),
               fmt_int(item.depth),
               fmt(rhp_pack),
               fmt(rhp_bound),
               fmt(rhp_pack / std::max(rhp_bound, 1e-300)),
               fmt(buckley_wp),
               fmt(ap_pack),
               fmt(ap_bound),
               fmt(ap_pack / std::max(ap_bound, 1e-300))};
    row.push_back(pass ? "1" : "0");
    if (suite.timings) row.push_back(fmt(elapsed_ms(started)));
    nlohmann::json witness;
    witness["id"] = slot;
    rows[static_cast<std::size_t>(slot)] = InstanceRow{std::move(row), std::move(witness), pass};
  });

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.row));
    table.sidecar.push_back(std::move(r.witness));
  }
  return table;
}

Table run_sawyer(const SuiteConfig& suite, int threads) {
  const Grid grid(suite.depth);
  Table table;
  table.columns = {"suite",        "id",           "seed",
                   "depth",        "t",            "delta",
                   "forward_full", "dual_full",    "restricted",
                   "pairing",      "norm_sq",      "margin_forward",
                   "margin_dual",  "margin_restricted", "margin_pairing",
                   "haar_testing_gap", "pass"};
  if (suite.timings) table.columns.push_back("wall_ms");
  const std::int64_t total = static_cast<std::int64_t>(suite.instances) *
                             static_cast<std::int64_t>(suite.t_values.size());
  std::vector<InstanceRow> rows(static_cast<std::size_t>(total));

  parallel_for(total, threads, [&](std::int64_t slot) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t instance = slot / static_cast<std::int64_t>(suite.t_values.size());
    const double t = suite.t_values[static_cast<std::size_t>(
        slot % static_cast<std::int64_t>(suite.t_values.size()))];
    const std::uint64_t instance_seed = hash_mix(suite.seed, static_cast<std::uint64_t>(instance));
    const Weight u = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 0));
    const Weight v = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 1));
    const Weight w = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 2));
    const SignPattern sigma = SignPattern::random(grid, hash_mix(instance_seed, 3));

    const SawyerTesting testing = sawyer_testing(u, v, w, t, sigma);
    const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));
    const NormEstimate norm = weighted_operator_norm(
        assemble_matrix(ConstantHaarDescriptor{w, t, sigma}, grid), u, vw2t);
    const double norm_sq = norm.value * norm.value;

    const double mf = testing.forward_full.value / norm_sq - 1.0;
    const double md = testing.dual_full.value / norm_sq - 1.0;
    const double mr = testing.restricted.value / norm_sq - 1.0;
    const double mp = testing.pairing.value / norm_sq - 1.0;

    // Haar testing identity for the companion multiplier T^t_{w,sigma}.
    double haar_gap = 0.0;
    for (std::int64_t i = 0; i < grid.nonleaf_count(); ++i) {
      const DyadicInterval interval = Grid::interval_at(i);
      const StepFunction th = apply_t_haar(haar_function(grid, interval), w, t, sigma);
      const double expected = vw2t.average(interval) / std::pow(w.average(interval), 2.0 * t);
      haar_gap = std::max(haar_gap, std::abs(weighted_norm_sq(th, v) - expected) /
                                        std::max(1.0, expected));
    }

    const bool pass = std::max({mf, md, mr, mp}) <= suite.tol_necessity &&
                      haar_gap <= suite.tol_identity;
    Row row = {suite.suite,
               fmt_int(slot),
               fmt_int(static_cast<std::int64_t>(instance_seed)),
               fmt_int(suite.depth),
               fmt(t),
               fmt(suite.delta),
               fmt(testing.forward_full.value),
               fmt(testing.dual_full.value),
               fmt(testing.restricted.value),
               fmt(testing.pairing.value),
               fmt(norm_sq),
               fmt(mf),
               fmt(md),
               fmt(mr),
               fmt(mp),
               fmt(haar_gap)};
    row.push_back(pass ? "1" : "0");
    if (suite.timings) row.push_back(fmt(elapsed_ms(started)));
    nlohmann::json witness;
    witness["id"] = slot;
    witness["forward_witness"] = interval_json(testing.forward_full.witness);
    witness["dual_witness"] = interval_json(testing.dual_full.witness);
    witness["restricted_witness"] = interval_json(testing.restricted.witness);
    witness["pairing_witness_i"] = interval_json(testing.pairing.i);
    witness["pairing_witness_j"] = interval_json(testing.pairing.j);
    rows[static_cast<std::size_t>(slot)] = InstanceRow{std::move(row), std::move(witness), pass};
  });

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.row));
    table.sidecar.push_back(std::move(r.witness));
  }
  return table;
}

Table run_khintchine(const SuiteConfig& suite, int threads) {
  const Grid grid(suite.depth);
  Table table;
  table.columns = {"suite", "id",      "seed",        "depth",  "t",
                   "closed_form", "average", "average_kind", "samples", "gap", "pass"};
  if (suite.timings) table.columns.push_back("wall_ms");
  const std::int64_t total = static_cast<std::int64_t>(suite.instances) *
                             static_cast<std::int64_t>(suite.t_values.size());
  std::vector<InstanceRow> rows(static_cast<std::size_t>(total));
  const bool enumerable = grid.nonleaf_count() <= 20;

  parallel_for(total, threads, [&](std::int64_t slot) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t instance = slot / static_cast<std::int64_t>(suite.t_values.size());
    const double t = suite.t_values[static_cast<std::size_t>(
        slot % static_cast<std::int64_t>(suite.t_values.size()))];
    const std::uint64_t instance_seed = hash_mix(suite.seed, static_cast<std::uint64_t>(instance));
    const Weight v = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 1));
    const Weight w = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 2));
    Rng frng = derive_stream(instance_seed, 3);
    std::vector<double> cells(static_cast<std::size_t>(grid.leaf_count()));
    for (double& c : cells) c = frng.uniform(-2.0, 2.0);
    const StepFunction f(grid, std::move(cells));
    const Weight m = pointwise_product(v, w.pointwise_pow(2.0 * t));

    const double closed = khintchine_closed_form(m, w, t, f);
    double averaged = 0.0;
    std::int64_t samples = 0;
    std::string kind;
    if (enumerable) {
      averaged = khintchine_enumerate(m, w, t, f);
      samples = std::int64_t{1} << grid.nonleaf_count();
      kind = "enumeration";
    } else {
      samples = suite.mc_samples;
      averaged =
          khintchine_monte_carlo(m, w, t, f, suite.mc_samples, hash_mix(instance_seed, 4));
      kind = "monte-carlo";
    }
    const double gap = std::abs(closed - averaged) / std::max(1.0, closed);
    const bool pass = enumerable ? gap <= suite.tol_identity : true;
    Row row = {suite.suite,
               fmt_int(slot),
               fmt_int(static_cast<std::int64_t>(instance_seed)),
               fmt_int(suite.depth),
               fmt(t),
               fmt(closed),
               fmt(averaged),
               kind,
               fmt_int(samples),
               fmt(gap)};
    row.push_back(pass ? "1" : "0");
    if (suite.timings) row.push_back(fmt(elapsed_ms(started)));
    nlohmann::json witness;
    witness["id"] = slot;
    rows[static_cast<std::size_t>(slot)] = InstanceRow{std::move(row), std::move(witness), pass};
  });

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.row));
    table.sidecar.push_back(std::move(r.witness));
  }
  return table;
}

Table run_perf(const SuiteConfig& suite) {
  Table table;
  table.columns = {"suite",        "id",        "depth",       "leaves",
                   "transform_ms", "report_ms", "transform_ns_per_leaf",
                   "report_ns_per_leaf", "pass"};
  std::vector<int> depths = suite.depth_list();
  if (depths.size() == 1 && depths[0] == 6) depths = {12, 13, 14, 15, 16};

  std::vector<double> transform_per_leaf(depths.size(), 0.0);
  double last_total_ms = 0.0;
  for (std::size_t d = 0; d < depths.size(); ++d) {
    const Grid grid(depths[d]);
    const std::uint64_t instance_seed = hash_mix(suite.seed, static_cast<std::uint64_t>(d));
    const Weight u = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 0));
    const Weight v = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 1));
    const Weight w = cascade_weight(grid, suite.delta, hash_mix(instance_seed, 2));
    Rng frng = derive_stream(instance_seed, 3);
    std::vector<double> cells(static_cast<std::size_t>(grid.leaf_count()));
    for (double& c : cells) c = frng.uniform(-2.0, 2.0);
    const StepFunction f(grid, std::move(cells));

    // Minimum over repetitions; the transform is repeated enough times to get
    // off the clock floor at shallow depths.
    const int reps = std::max(5, static_cast<int>((std::int64_t{1} << 22) / grid.leaf_count()));
    double transform_ms = std::numeric_limits<double>::infinity();
    volatile double sink = 0.0;
    for (int r = 0; r < reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const HaarExpansion e = haar_transform(f);
      sink = sink + e.mean;
      transform_ms = std::min(transform_ms, elapsed_ms(start));
    }

    C4Options c4;
    c4.method = C4Method::power;
    double report_ms = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 3; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const ConditionReport report = compute_report(u, v, w, 1.0, c4);
      sink = sink + report.combined;
      report_ms = std::min(report_ms, elapsed_ms(start));
    }

    const double leaves = static_cast<double>(grid.leaf_count());
    transform_per_leaf[d] = transform_ms * 1e6 / leaves;
    last_total_ms = transform_ms + report_ms;
    const bool within_budget =
        depths[d] != depths.back() || last_total_ms < suite.perf_report_budget_ms;
    Row row = {suite.suite,
               fmt_int(static_cast<std::int64_t>(d)),
               fmt_int(depths[d]),
               fmt_int(grid.leaf_count()),
               fmt(transform_ms),
               fmt(report_ms),
               fmt(transform_per_leaf[d]),
               fmt(report_ms * 1e6 / leaves),
               within_budget ? "1" : "0"};
    table.rows.push_back(std::move(row));
    nlohmann::json witness;
    witness["id"] = d;
    table.sidecar.push_back(witness);
  }

  // Scaling row: per-leaf transform cost from the first to the last depth.
  const double scaling = transform_per_leaf.back() / transform_per_leaf.front();
  const bool scaling_ok = scaling <= suite.perf_scaling_max;
  Row row = {suite.suite,
             fmt_int(static_cast<std::int64_t>(depths.size())),
             fmt_int(-1),
             fmt_int(0),
             fmt(0.0),
             fmt(0.0),
             fmt(scaling),
             fmt(0.0),
             scaling_ok ? "1" : "0"};
  table.rows.push_back(std::move(row));
  table.sidecar.push_back(nlohmann::json{{"id", depths.size()}, {"scaling", scaling}});
  return table;
}

}  // namespace

int effective_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap = std::getenv("DYADICA_THREADS")) {
    try {
      const int limit = std::stoi(cap);
      if (limit >= 1) threads = std::min(threads, limit);
    } catch (const std::exception&) {
      // ignore malformed cap
    }
  }
  return threads;
}

RunResult run_suites(const ExperimentConfig& config) {
  const int threads = effective_threads(config.threads);
  RunResult result;
  for (const SuiteConfig& suite : config.suites) {
    Table table;
    if (suite.suite == "two-weight") {
      table = run_two_or_one_weight(suite, threads, false);
    } else if (suite.suite == "one-weight") {
      table = run_two_or_one_weight(suite, threads, true);
    } else if (suite.suite == "unweighted") {
      table = run_unweighted(suite, threads);
    } else if (suite.suite == "packing") {
      table = run_packing(suite, threads);
    } else if (suite.suite == "sawyer") {
      table = run_sawyer(suite, threads);
    } else if (suite.suite == "khintchine") {
      table = run_khintchine(suite, threads);
    } else if (suite.suite == "perf") {
      table = run_perf(suite);
    } else {
      throw std::runtime_error("unknown suite: " + suite.suite);
    }
    table.write_csv(suite.out);
    if (!suite.sidecar.empty()) {
      std::ofstream side(suite.sidecar);
      if (!side) throw std::runtime_error("cannot open for writing: " + suite.sidecar);
      side << table.sidecar.dump(2) << "\n";
    }
    SuiteOutcome outcome;
    outcome.suite = suite.suite;
    outcome.out_path = suite.out;
    outcome.rows = static_cast<std::int64_t>(table.rows.size());
    const std::size_t pass_col = [&]() {
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] == "pass") return i;
      }
      throw std::runtime_error("internal: missing pass column");
    }();
    for (const Row& row : table.rows) {
      if (row[pass_col] == "0") ++outcome.failed_rows;
    }
    result.outcomes.push_back(outcome);
  }
  return result;
}

RunResult run_config_file(const std::string& path) { return run_suites(load_config(path)); }

}  // namespace dyadica
