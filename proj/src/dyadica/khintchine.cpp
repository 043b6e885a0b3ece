#include "dyadica/khintchine.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadica/haar.hpp"
#include "dyadica/operators.hpp"
#include "dyadica/rng.hpp"

namespace dyadica {

double constant_haar_norm_sq(const Weight& m, const Weight& w, double t, const StepFunction& f,
                             const SignPattern& sigma) {
  return weighted_norm_sq(apply_constant_haar(f, w, t, sigma), m);
}

double khintchine_closed_form(const Weight& m, const Weight& w, double t, const StepFunction& f) {
  if (m.grid() != w.grid() || f.grid() != w.grid()) {
    throw std::invalid_argument("khintchine_closed_form: grid mismatch");
  }
  const HaarExpansion e = haar_transform(f);
  const std::int64_t nonleaf = w.grid().nonleaf_count();
  std::vector<double> terms(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const double c = e.coefficients[static_cast<std::size_t>(i)];  // = sqrt|I| Delta_I f / 2
    terms[static_cast<std::size_t>(i)] =
        c * c * m.average(interval) / std::pow(w.average(interval), 2.0 * t);
  }
  return pairwise_sum(terms);
}

double khintchine_enumerate(const Weight& m, const Weight& w, double t, const StepFunction& f) {
  const Grid& grid = w.grid();
  const std::int64_t signs = grid.nonleaf_count();
  if (signs > 20) {
    throw std::invalid_argument("khintchine_enumerate: too many sign patterns to enumerate");
  }
  const std::uint64_t count = std::uint64_t{1} << signs;
  std::vector<double> values(static_cast<std::size_t>(count));
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    values[static_cast<std::size_t>(bits)] =
        constant_haar_norm_sq(m, w, t, f, SignPattern::from_bits(grid, bits));
  }
  return pairwise_sum(values) / static_cast<double>(count);
}

double khintchine_monte_carlo(const Weight& m, const Weight& w, double t, const StepFunction& f,
                              int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("khintchine_monte_carlo: samples must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const SignPattern sigma =
        SignPattern::random(w.grid(), hash_mix(seed, static_cast<std::uint64_t>(s)));
    values[static_cast<std::size_t>(s)] = constant_haar_norm_sq(m, w, t, f, sigma);
  }
  return pairwise_sum(values) / static_cast<double>(samples);
}

}  // namespace dyadica
