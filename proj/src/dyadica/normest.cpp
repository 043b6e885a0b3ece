#include "dyadica/normest.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "dyadica/rng.hpp"

namespace dyadica {

const char* to_string(NormMethod method) {
  switch (method) {
    case NormMethod::exact_spectral: return "exact-spectral";
    case NormMethod::power_iteration: return "power-iteration";
    case NormMethod::sigma_alternation: return "sigma-alternation";
  }
  return "unknown";
}

const char* to_string(BoundKind bound) {
  switch (bound) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower_bound: return "lower-bound";
    case BoundKind::upper_bound: return "upper-bound";
  }
  return "unknown";
}

NormEstimate weighted_operator_norm(const OperatorMatrix& matrix, const Weight& u,
                                    const Weight& v) {
  const Grid& grid = matrix.grid();
  if (u.grid() != grid || v.grid() != grid) {
    throw std::invalid_argument("weighted_operator_norm: dimension mismatch");
  }
  const std::int64_t n = grid.leaf_count();
  // Cell-value map: columns of the matrix hold unit-mass responses.
  Eigen::MatrixXd scaled = grid.cell_width() * matrix.entries();
  for (std::int64_t i = 0; i < n; ++i) {
    scaled.row(i) *= std::sqrt(v.value(i));
  }
  for (std::int64_t j = 0; j < n; ++j) {
    scaled.col(j) /= std::sqrt(u.value(j));
  }
  const Eigen::MatrixXd normal = scaled.transpose() * scaled;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normal);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("weighted_operator_norm: eigensolver failed");
  }
  const Eigen::Index top = n - 1;
  const double lambda = solver.eigenvalues()(top);
  const Eigen::VectorXd q = solver.eigenvectors().col(top);
  const double residual = (normal * q - lambda * q).norm();
  NormEstimate est;
  est.value = std::sqrt(std::max(lambda, 0.0));
  est.method = NormMethod::exact_spectral;
  est.iterations = 0;
  est.residual = residual;
  est.bound = BoundKind::exact;
  return est;
}

NormEstimate weighted_norm_power(const LinearOperator& op, const Weight& u, const Weight& v,
                                 const PowerOptions& options) {
  const Grid& grid = op.grid();
  if (u.grid() != grid || v.grid() != grid) {
    throw std::invalid_argument("weighted_norm_power: grid mismatch");
  }
  const std::int64_t n = grid.leaf_count();
  Rng rng(hash_mix(options.seed, 0x706f776572ULL));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& c : x) c = rng.normal();

  NormEstimate est;
  est.method = NormMethod::power_iteration;
  est.bound = BoundKind::lower_bound;

  auto u_norm = [&](const StepFunction& f) { return std::sqrt(weighted_norm_sq(f, u)); };

  StepFunction xf(grid, x);
  {
    const double nx = u_norm(xf);
    if (!(nx > 0.0)) throw std::runtime_error("weighted_norm_power: degenerate start");
    xf = pointwise_scale(xf, 1.0 / nx);
  }

  double lambda = 0.0;
  double prev = -1.0;
  int iter = 0;
  StepFunction z = StepFunction::zero(grid);
  for (; iter < options.max_iterations; ++iter) {
    const StepFunction y = op.apply(xf);
    lambda = weighted_norm_sq(y, v);  // Rayleigh quotient of the normal operator at xf
    if (lambda == 0.0) {
      est.value = 0.0;
      est.iterations = iter + 1;
      est.residual = 0.0;
      return est;
    }
    // z = B xf with B the weighted normal operator: (1/u) T*(v (T xf)).
    std::vector<double> zz(static_cast<std::size_t>(n));
    {
      const StepFunction back = op.apply_adjoint(pointwise_product(y, v));
      for (std::int64_t i = 0; i < n; ++i) {
        zz[static_cast<std::size_t>(i)] = back.value(i) / u.value(i);
      }
    }
    z = StepFunction(grid, std::move(zz));
    if (prev >= 0.0 && std::abs(lambda - prev) <= options.tolerance * std::max(1.0, lambda)) {
      ++iter;
      break;
    }
    prev = lambda;
    const double nz = u_norm(z);
    if (!(nz > 0.0)) break;
    xf = pointwise_scale(z, 1.0 / nz);
  }

  est.value = std::sqrt(lambda);
  est.iterations = iter;
  est.residual = std::sqrt(std::max(weighted_norm_sq(pointwise_add(z, xf, 1.0, -lambda), u), 0.0));
  return est;
}

namespace detail {

TopSingular top_singular_lanczos(
    std::int64_t n, const std::function<std::vector<double>(std::span<const double>)>& apply,
    const std::function<std::vector<double>(std::span<const double>)>& apply_adjoint,
    std::vector<double> start, double tolerance, int max_iterations) {
  auto dot = [](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  auto norm = [&](std::span<const double> a) { return std::sqrt(dot(a, a)); };

  TopSingular out;
  out.right.assign(static_cast<std::size_t>(n), 0.0);
  {
    const double ns = norm(start);
    if (!(ns > 0.0)) return out;
    for (double& c : start) c /= ns;
  }

  const int max_basis = static_cast<int>(std::min<std::int64_t>(n, 96));
  std::vector<double> current = start;
  int used = 0;
  // Outer restarts keep the memory bounded while reusing the best Ritz vector.
  while (used < max_iterations) {
    std::vector<std::vector<double>> basis;
    std::vector<double> alphas;
    std::vector<double> betas;  // betas[k] links v_k and v_{k+1}
    basis.push_back(current);
    double best_lambda = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (int k = 0; k < max_basis && used < max_iterations; ++k, ++used) {
      std::vector<double> w = apply_adjoint(apply(basis[static_cast<std::size_t>(k)]));
      const double alpha = dot(w, basis[static_cast<std::size_t>(k)]);
      alphas.push_back(alpha);
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const double c = dot(w, b);
          for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
        }
      }
      const double beta = norm(w);

      // Ritz values of the current tridiagonal section.
      const int m = static_cast<int>(alphas.size());
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        tri(i, i) = alphas[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
          tri(i, i + 1) = betas[static_cast<std::size_t>(i)];
          tri(i + 1, i) = betas[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
      const Eigen::VectorXd ritz = solver.eigenvectors().col(m - 1);
      best_lambda = solver.eigenvalues()(m - 1);
      best_residual = beta * std::abs(ritz(m - 1));

      std::vector<double> combined(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < m; ++i) {
        const double c = ritz(i);
        const auto& b = basis[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < combined.size(); ++j) combined[j] += c * b[j];
      }
      current = combined;

      if (best_residual <= tolerance * std::max(1.0, best_lambda)) {
        converged = true;
        break;
      }
      if (!(beta > 1e-300)) {
        converged = true;  // invariant subspace exhausted
        break;
      }
      betas.push_back(beta);
      for (double& c : w) c /= beta;
      basis.push_back(std::move(w));
    }

    {
      const double nc = norm(current);
      if (nc > 0.0) {
        for (double& c : current) c /= nc;
      }
    }
    out.residual = best_residual;
    if (converged) break;
  }

  out.right = current;
  out.iterations = used;
  out.value = norm(apply(out.right));  // certified: ||A x|| for unit x
  return out;
}

}  // namespace detail

}  // namespace dyadica
