#pragma once

#include <cstdint>
#include <functional>

#include "dyadica/operator_matrix.hpp"

namespace dyadica {

enum class NormMethod { exact_spectral, power_iteration, sigma_alternation };
enum class BoundKind { exact, lower_bound, upper_bound };

const char* to_string(NormMethod method);
const char* to_string(BoundKind bound);

struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::exact_spectral;
  int iterations = 0;
  double residual = 0.0;
  BoundKind bound = BoundKind::exact;
};

// sup ||T f||_{L2(v)} / ||f||_{L2(u)} for the dense matrix: the spectral norm
// of diag(sqrt(v_i dx)) A diag(1/sqrt(u_j dx)) with A the cell-value map,
// computed from the top eigenvalue of the normal matrix.
NormEstimate weighted_operator_norm(const OperatorMatrix& matrix, const Weight& u,
                                    const Weight& v);

struct PowerOptions {
  double tolerance = 1e-10;  // on the Rayleigh-quotient increment
  int max_iterations = 10000;
  std::uint64_t seed = 1;
};

// Matrix-free power iteration on the weighted normal operator. The returned
// value is ||T x||_v / ||x||_u for the final iterate, hence a certified lower
// bound; the residual reports the eigen-equation gap.
NormEstimate weighted_norm_power(const LinearOperator& op, const Weight& u, const Weight& v,
                                 const PowerOptions& options = {});

namespace detail {

struct TopSingular {
  double value = 0.0;           // ||A x|| for the returned unit x: a lower bound
  std::vector<double> right;    // unit right singular vector estimate
  int iterations = 0;           // normal-operator applications
  double residual = 0.0;        // Lanczos residual bound on the top eigenvalue
};

// Top singular value of A via Lanczos on A^T A with full reorthogonalization;
// robust when the leading singular values cluster. `start` seeds the basis.
TopSingular top_singular_lanczos(
    std::int64_t n, const std::function<std::vector<double>(std::span<const double>)>& apply,
    const std::function<std::vector<double>(std::span<const double>)>& apply_adjoint,
    std::vector<double> start, double tolerance, int max_iterations);

}  // namespace detail

}  // namespace dyadica
