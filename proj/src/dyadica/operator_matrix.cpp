#include "dyadica/operator_matrix.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace dyadica {

const Grid& descriptor_grid(const OperatorDescriptor& descriptor) {
  return std::visit(
      [](const auto& d) -> const Grid& {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, MaximalDescriptor>) {
          return d.u.grid();
        } else {
          return d.w.grid();
        }
      },
      descriptor);
}

namespace {

class AdjointView final : public LinearOperator {
 public:
  explicit AdjointView(std::unique_ptr<LinearOperator> base) : base_(std::move(base)) {}
  const Grid& grid() const override { return base_->grid(); }
  StepFunction apply(const StepFunction& f) const override { return base_->apply_adjoint(f); }
  StepFunction apply_adjoint(const StepFunction& g) const override { return base_->apply(g); }

 private:
  std::unique_ptr<LinearOperator> base_;
};

}  // namespace

std::unique_ptr<LinearOperator> make_operator(const OperatorDescriptor& descriptor) {
  return std::visit(
      [](const auto& d) -> std::unique_ptr<LinearOperator> {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, THaarDescriptor>) {
          return std::make_unique<THaarMultiplier>(d.w, d.t, d.sigma);
        } else if constexpr (std::is_same_v<D, AdjointTHaarDescriptor>) {
          return std::make_unique<AdjointView>(std::make_unique<THaarMultiplier>(d.w, d.t, d.sigma));
        } else if constexpr (std::is_same_v<D, ConstantHaarDescriptor>) {
          return std::make_unique<ConstantHaarMultiplier>(d.w, d.t, d.sigma);
        } else if constexpr (std::is_same_v<D, PositiveDescriptor>) {
          return std::make_unique<PositiveOperator>(d.w, d.t, d.lambda);
        } else {
          throw std::invalid_argument(
              "unsupported descriptor: the maximal function is not linear");
        }
      },
      descriptor);
}

OperatorMatrix::OperatorMatrix(Grid grid, Eigen::MatrixXd entries, std::string source_weight_id,
                               std::string target_weight_id)
    : grid_(grid),
      entries_(std::move(entries)),
      source_id_(std::move(source_weight_id)),
      target_id_(std::move(target_weight_id)) {
  if (entries_.rows() != grid_.leaf_count() || entries_.cols() != grid_.leaf_count()) {
    throw std::invalid_argument("operator matrix: dimension mismatch with grid");
  }
}

StepFunction OperatorMatrix::apply(const StepFunction& f) const {
  if (f.grid() != grid_) throw std::invalid_argument("operator matrix apply: grid mismatch");
  Eigen::Map<const Eigen::VectorXd> x(f.values().data(), f.size());
  const Eigen::VectorXd y = entries_ * (grid_.cell_width() * x);
  return StepFunction(grid_, std::vector<double>(y.data(), y.data() + y.size()));
}

void OperatorMatrix::dump(std::ostream& out) const {
  out << entries_.rows() << " " << entries_.cols() << " " << source_id_ << " " << target_id_
      << "\n";
  char buf[40];
  for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
    for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", entries_(r, c));
      out << buf << (c + 1 == entries_.cols() ? "" : " ");
    }
    out << "\n";
  }
}

OperatorMatrix assemble_matrix(const OperatorDescriptor& descriptor, const Grid& grid,
                               const std::string& source_weight_id,
                               const std::string& target_weight_id) {
  if (descriptor_grid(descriptor) != grid) {
    throw std::invalid_argument("assemble_matrix: descriptor grid mismatch");
  }
  if (grid.depth() > 12) {
    throw std::invalid_argument("assemble_matrix: dense path is reserved for depth <= 12");
  }
  const std::unique_ptr<LinearOperator> op = make_operator(descriptor);
  const std::int64_t n = grid.leaf_count();
  const double unit_mass_height = static_cast<double>(n);  // 1/cell_width
  Eigen::MatrixXd m(n, n);
  std::vector<double> cells(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t j = 0; j < n; ++j) {
    cells[static_cast<std::size_t>(j)] = unit_mass_height;
    const StepFunction column = op->apply(StepFunction(grid, cells));
    for (std::int64_t i = 0; i < n; ++i) m(i, j) = column.value(i);
    cells[static_cast<std::size_t>(j)] = 0.0;
  }
  return OperatorMatrix(grid, std::move(m), source_weight_id, target_weight_id);
}

}  // namespace dyadica
