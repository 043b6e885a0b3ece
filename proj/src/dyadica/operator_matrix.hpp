#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>

#include "dyadica/operators.hpp"

namespace dyadica {

// Closed enumeration of the operators the laboratory knows how to dispatch.
struct THaarDescriptor {
  Weight w;
  double t;
  SignPattern sigma;
};
struct AdjointTHaarDescriptor {
  Weight w;
  double t;
  SignPattern sigma;
};
struct ConstantHaarDescriptor {
  Weight w;
  double t;
  SignPattern sigma;
};
struct PositiveDescriptor {
  Weight w;
  double t;
  CarlesonSequence lambda;
};
struct MaximalDescriptor {
  Weight u;
};

using OperatorDescriptor = std::variant<THaarDescriptor, AdjointTHaarDescriptor,
                                        ConstantHaarDescriptor, PositiveDescriptor,
                                        MaximalDescriptor>;

const Grid& descriptor_grid(const OperatorDescriptor& descriptor);

// Linear realization of a descriptor; rejects the maximal function (not linear).
std::unique_ptr<LinearOperator> make_operator(const OperatorDescriptor& descriptor);

// Dense representation: column j holds the operator applied to the unit-mass
// indicator of leaf cell j. To evaluate on cell values, scale the input by the
// cell width (see apply).
class OperatorMatrix {
 public:
  OperatorMatrix(Grid grid, Eigen::MatrixXd entries, std::string source_weight_id,
                 std::string target_weight_id);

  const Grid& grid() const { return grid_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const std::string& source_weight_id() const { return source_id_; }
  const std::string& target_weight_id() const { return target_id_; }

  StepFunction apply(const StepFunction& f) const;

  // Plain text, header "rows cols source-weight-id target-weight-id",
  // one matrix row per line.
  void dump(std::ostream& out) const;

 private:
  Grid grid_;
  Eigen::MatrixXd entries_;
  std::string source_id_;
  std::string target_id_;
};

// Dense assembly is reserved for depth <= 12.
OperatorMatrix assemble_matrix(const OperatorDescriptor& descriptor, const Grid& grid,
                               const std::string& source_weight_id = "lebesgue",
                               const std::string& target_weight_id = "lebesgue");

}  // namespace dyadica
