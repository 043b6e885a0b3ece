#include "dyadica/bilinear.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadica/weighted_haar.hpp"

namespace dyadica {

BilinearDecomposition bilinear_decomposition(const StepFunction& f, const StepFunction& g,
                                             const Weight& u, const Weight& v, const Weight& w,
                                             double t, const SignPattern& sigma) {
  const Grid& grid = w.grid();
  if (f.grid() != grid || g.grid() != grid || u.grid() != grid || v.grid() != grid) {
    throw std::invalid_argument("bilinear_decomposition: grid mismatch");
  }
  const Weight u_inv = u.reciprocal();
  const Weight vw2t = pointwise_product(v, w.pointwise_pow(2.0 * t));

  // Left factor pairs against u^{-1} f, right factor against g v w^t.
  std::vector<double> left_cells(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < left_cells.size(); ++i) left_cells[i] *= u_inv.values()[i];
  std::vector<double> right_cells(g.values().begin(), g.values().end());
  for (std::size_t i = 0; i < right_cells.size(); ++i) {
    right_cells[i] *= v.values()[i] * std::pow(w.value(i), t);
  }
  const std::vector<double> lm = node_masses(grid, left_cells);
  const std::vector<double> rm = node_masses(grid, right_cells);

  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> t1(static_cast<std::size_t>(nonleaf));
  std::vector<double> t2(static_cast<std::size_t>(nonleaf));
  std::vector<double> t3(static_cast<std::size_t>(nonleaf));
  std::vector<double> t4(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const DyadicInterval interval = Grid::interval_at(i);
    const auto li = static_cast<std::size_t>(2 * i + 1);
    const auto ri = static_cast<std::size_t>(2 * i + 2);
    const auto ii = static_cast<std::size_t>(i);

    const WeightedHaarValues hu = weighted_haar_values(u_inv, interval);
    const WeightedHaarValues hv = weighted_haar_values(vw2t, interval);
    const double cf = hu.on_left * lm[li] + hu.on_right * lm[ri];  // <u^{-1}f, h_I^{u^{-1}}>
    const double cg = hv.on_left * rm[li] + hv.on_right * rm[ri];  // <h_I^{vw2t}, g v w^t>
    const double root_len = std::sqrt(interval.length());
    const double sf = lm[ii] / root_len;  // <u^{-1}f, 1_I/sqrt|I|>
    const double sg = rm[ii] / root_len;

    const WeightedHaarCoeffs au = haar_split(u_inv, interval);
    const WeightedHaarCoeffs av = haar_split(vw2t, interval);
    const double k = static_cast<double>(sigma.sign(i)) * std::pow(w.average(interval), -t);

    t1[ii] = k * au.alpha * cf * av.alpha * cg;
    t2[ii] = k * au.beta * sf * av.alpha * cg;
    t3[ii] = k * au.alpha * cf * av.beta * sg;
    t4[ii] = k * au.beta * sf * av.beta * sg;
  }
  return {pairwise_sum(t1), pairwise_sum(t2), pairwise_sum(t3), pairwise_sum(t4)};
}

double positive_bilinear_form(const StepFunction& f, const StepFunction& g, const Weight& u,
                              const Weight& v, const Weight& w, double t,
                              std::span<const double> lambda) {
  const Grid& grid = w.grid();
  if (static_cast<std::int64_t>(lambda.size()) != grid.nonleaf_count()) {
    throw std::invalid_argument("positive_bilinear_form: lambda size mismatch");
  }
  std::vector<double> left_cells(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < left_cells.size(); ++i) {
    left_cells[i] /= std::sqrt(u.values()[i]);
  }
  std::vector<double> right_cells(g.values().begin(), g.values().end());
  for (std::size_t i = 0; i < right_cells.size(); ++i) {
    right_cells[i] *= std::sqrt(v.values()[i]) * std::pow(w.value(i), t);
  }
  const std::vector<double> lm = node_masses(grid, left_cells);
  const std::vector<double> rm = node_masses(grid, right_cells);
  const std::int64_t nonleaf = grid.nonleaf_count();
  std::vector<double> terms(static_cast<std::size_t>(nonleaf));
  for (std::int64_t i = 0; i < nonleaf; ++i) {
    const double inv_len = std::ldexp(1.0, Grid::interval_at(i).level);
    terms[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] *
                                         (lm[static_cast<std::size_t>(i)] * inv_len) *
                                         (rm[static_cast<std::size_t>(i)] * inv_len);
  }
  return pairwise_sum(terms);
}

}  // namespace dyadica
