#include "dyadica/sup_sigma.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadica/haar.hpp"
#include "dyadica/rng.hpp"

namespace dyadica {

namespace {

// A_sigma x = sqrt(v) T^t_{w,sigma}(x / sqrt(u)), the L2-normalized realization
// whose spectral norm is the two-weight norm. Signs are mutable so alternation
// does not rebuild the prepared arrays.
struct ScaledTHaar {
  Grid grid;
  std::vector<double> avg_pow;      // <w>_I^{-t}
  std::vector<double> symbol;       // w^t per cell
  std::vector<double> inv_sqrt_u;   // 1/sqrt(u) per cell
  std::vector<double> sqrt_v;       // sqrt(v) per cell
  std::vector<std::int8_t> sigma;

  ScaledTHaar(const Weight& u, const Weight& v, const Weight& w, double t)
      : grid(w.grid()), sigma(static_cast<std::size_t>(w.grid().nonleaf_count()), 1) {
    const std::int64_t nonleaf = grid.nonleaf_count();
    avg_pow.resize(static_cast<std::size_t>(nonleaf));
    for (std::int64_t i = 0; i < nonleaf; ++i) {
      avg_pow[static_cast<std::size_t>(i)] =
          std::pow(w.average(Grid::interval_at(i)), -t);
    }
    const std::int64_t n = grid.leaf_count();
    symbol.resize(static_cast<std::size_t>(n));
    inv_sqrt_u.resize(static_cast<std::size_t>(n));
    sqrt_v.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      symbol[static_cast<std::size_t>(i)] = std::pow(w.value(i), t);
      inv_sqrt_u[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(u.value(i));
      sqrt_v[static_cast<std::size_t>(i)] = std::sqrt(v.value(i));
    }
  }

  std::vector<double> multiplier(std::span<const double> cells, bool pre_scale_u,
                                 bool post_scale_v) const {
    std::vector<double> in(cells.begin(), cells.end());
    if (pre_scale_u) {
      for (std::size_t i = 0; i < in.size(); ++i) in[i] *= inv_sqrt_u[i];
    } else {
      for (std::size_t i = 0; i < in.size(); ++i) in[i] *= symbol[i] * sqrt_v[i];
    }
    const HaarExpansion e = haar_transform(StepFunction(grid, std::move(in)));
    std::vector<double> d(e.coefficients.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = static_cast<double>(sigma[i]) * avg_pow[i] * e.coefficients[i];
    }
    StepFunction synth = synthesize_zero_mean(grid, d);
    std::vector<double> out(synth.values().begin(), synth.values().end());
    if (post_scale_v) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] *= symbol[i] * sqrt_v[i];
    } else {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] *= inv_sqrt_u[i];
    }
    return out;
  }

  std::vector<double> apply(std::span<const double> x) const { return multiplier(x, true, true); }
  std::vector<double> apply_adjoint(std::span<const double> y) const {
    return multiplier(y, false, false);
  }

  // Haar coefficients of x/sqrt(u) and of w^t sqrt(v) y; their products decide
  // the sign choice that makes every bilinear term positive.
  void update_sigma(std::span<const double> x, std::span<const double> y, bool* changed) {
    std::vector<double> a(x.begin(), x.end());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= inv_sqrt_u[i];
    std::vector<double> b(y.begin(), y.end());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] *= symbol[i] * sqrt_v[i];
    const HaarExpansion ea = haar_transform(StepFunction(grid, std::move(a)));
    const HaarExpansion eb = haar_transform(StepFunction(grid, std::move(b)));
    *changed = false;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const double prod = ea.coefficients[i] * eb.coefficients[i];
      if (prod == 0.0) continue;
      const std::int8_t s = prod > 0.0 ? 1 : -1;
      if (s != sigma[i]) {
        sigma[i] = s;
        *changed = true;
      }
    }
  }
};

double vec_norm(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

void normalize(std::vector<double>& x) {
  const double n = vec_norm(x);
  for (double& c : x) c /= n;
}

}  // namespace

SupSigmaResult sup_sigma_norm(const Weight& u, const Weight& v, const Weight& w, double t,
                              const SupSigmaOptions& options) {
  if (u.grid() != w.grid() || v.grid() != w.grid()) {
    throw std::invalid_argument("sup_sigma_norm: grid mismatch");
  }
  if (options.restarts < 1) throw std::invalid_argument("sup_sigma_norm: restarts must be >= 1");
  const Grid& grid = w.grid();
  const std::int64_t n = grid.leaf_count();

  ScaledTHaar op(u, v, w, t);
  double best_value = 0.0;
  std::vector<std::int8_t> best_sigma = op.sigma;
  std::vector<double> best_trace;
  int total_iterations = 0;
  double last_residual = 0.0;

  for (int restart = 0; restart < options.restarts; ++restart) {
    Rng rng = derive_stream(options.seed, static_cast<std::uint64_t>(restart), 0x73757073ULL);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.normal();
    normalize(x);
    std::vector<double> y = op.apply(x);
    if (vec_norm(y) == 0.0) continue;
    normalize(y);
    std::fill(op.sigma.begin(), op.sigma.end(), static_cast<std::int8_t>(1));

    double value = 0.0;
    std::vector<double> trace;
    const auto forward = [&op](std::span<const double> in) { return op.apply(in); };
    const auto backward = [&op](std::span<const double> in) { return op.apply_adjoint(in); };
    for (int round = 0; round < options.max_rounds; ++round) {
      bool changed = false;
      op.update_sigma(x, y, &changed);

      // Top singular pair of the fixed-sign operator, warm-started at x.
      const detail::TopSingular top = detail::top_singular_lanczos(
          n, forward, backward, x, options.power.tolerance, options.power.max_iterations);
      total_iterations += top.iterations;
      last_residual = top.residual;
      const double round_value = top.value;
      trace.push_back(round_value);
      if (!(round_value > 0.0)) break;
      x = top.right;
      y = op.apply(x);
      normalize(y);
      const bool converged =
          !changed && round > 0 &&
          round_value - value <= options.power.tolerance * std::max(1.0, round_value);
      value = std::max(value, round_value);
      if (converged) break;
    }

    // Greedy sign flips around the fixed point; each accepted flip re-solves
    // the singular pair and restores the all-terms-positive sign rule.
    if (static_cast<std::int64_t>(op.sigma.size()) <= options.polish_sign_limit && value > 0.0) {
      for (int sweep = 0; sweep < options.polish_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i < op.sigma.size(); ++i) {
          op.sigma[i] = static_cast<std::int8_t>(-op.sigma[i]);
          const detail::TopSingular cand = detail::top_singular_lanczos(
              n, forward, backward, x, options.power.tolerance, options.power.max_iterations);
          total_iterations += cand.iterations;
          if (cand.value > value * (1.0 + 1e-12)) {
            value = cand.value;
            x = cand.right;
            y = op.apply(x);
            normalize(y);
            bool changed = false;
            op.update_sigma(x, y, &changed);
            if (changed) {
              const detail::TopSingular settle = detail::top_singular_lanczos(
                  n, forward, backward, x, options.power.tolerance,
                  options.power.max_iterations);
              total_iterations += settle.iterations;
              if (settle.value > value) {
                value = settle.value;
                x = settle.right;
                y = op.apply(x);
                normalize(y);
              }
            }
            trace.push_back(value);
            last_residual = cand.residual;
            improved = true;
          } else {
            op.sigma[i] = static_cast<std::int8_t>(-op.sigma[i]);
          }
        }
        if (!improved) break;
      }
    }

    if (value > best_value) {
      best_value = value;
      best_sigma = op.sigma;
      best_trace = trace;
    }
  }

  NormEstimate est;
  est.value = best_value;
  est.method = NormMethod::sigma_alternation;
  est.iterations = total_iterations;
  est.residual = last_residual;
  est.bound = BoundKind::lower_bound;
  return SupSigmaResult{est, SignPattern(grid, std::move(best_sigma)), std::move(best_trace)};
}

}  // namespace dyadica
