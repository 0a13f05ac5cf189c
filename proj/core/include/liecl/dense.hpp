#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "liecl/pauli.hpp"

namespace liecl {

/// Square complex matrix operator; the backend required by the rank-based
/// reference independence check.
class DenseOperator {
public:
  DenseOperator() = default;
  explicit DenseOperator(Eigen::MatrixXcd m);

  static DenseOperator zero(Eigen::Index dim) {
    return DenseOperator(Eigen::MatrixXcd::Zero(dim, dim));
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  DenseOperator operator+(const DenseOperator& other) const;
  DenseOperator operator-(const DenseOperator& other) const;
  DenseOperator operator*(Complex scalar) const;
  friend DenseOperator operator*(Complex scalar, const DenseOperator& a) {
    return a * scalar;
  }

private:
  Eigen::MatrixXcd matrix_;
};

/// (1/d) tr(a^dagger b).
Complex dense_inner_product(const DenseOperator& a, const DenseOperator& b);

/// sqrt of the inner product with self.
double dense_norm(const DenseOperator& a);

/// ab - ba.
DenseOperator dense_commutator(const DenseOperator& a, const DenseOperator& b);

/// Default cap on Kronecker expansion size (2^12 x 2^12 matrices).
inline constexpr std::uint32_t kDefaultExpansionLimit = 12;

/// Expands a Pauli sum into its 2^n x 2^n matrix. Qubit 0 maps to the most
/// significant index bit, matching the leftmost letter of the text format.
/// Throws CapacityError when the qubit count exceeds `max_qubits`.
DenseOperator from_pauli(const PauliSum& sum,
                         std::uint32_t max_qubits = kDefaultExpansionLimit);

/// d^2 x N matrix whose columns are column-major vectorized operators.
class StackedBasisMatrix {
public:
  explicit StackedBasisMatrix(Eigen::Index operator_dim);

  Eigen::Index operator_dim() const { return operator_dim_; }
  Eigen::Index columns() const { return columns_; }

  /// Appends vec(op) as the next column.
  void append(const DenseOperator& op);

  /// View of the occupied d^2 x N block.
  Eigen::Ref<const Eigen::MatrixXcd> block() const {
    return storage_.leftCols(columns_);
  }

private:
  Eigen::Index operator_dim_ = 0;
  Eigen::Index columns_ = 0;
  Eigen::MatrixXcd storage_; // capacity grows geometrically
};

/// Reference linear-independence test: true iff rank([basis | vec(h)]) is
/// columns+1, with the rank read off a singular value decomposition as the
/// number of singular values above tol * sigma_max. A non-positive tol
/// selects the conventional numerical-rank threshold
/// eps * max(rows, cols) * sigma_max.
bool rank_independence_check(const StackedBasisMatrix& basis,
                             const DenseOperator& h, double tol);

/// d x k isometry onto an invariant subspace; columns orthonormal.
class SubspaceProjector {
public:
  explicit SubspaceProjector(Eigen::MatrixXcd basis);

  Eigen::Index full_dim() const { return basis_.rows(); }
  Eigen::Index subspace_dim() const { return basis_.cols(); }
  const Eigen::MatrixXcd& basis() const { return basis_; }

private:
  Eigen::MatrixXcd basis_;
};

/// Isometry onto the span of computational basis states with exactly n/2
/// ones, columns in lexicographic bitstring order. Requires even n.
SubspaceProjector zero_magnetization_projector(std::uint32_t qubits);

/// proj^dagger * op * proj, a k x k operator.
DenseOperator restrict_to_subspace(const DenseOperator& op,
                                   const SubspaceProjector& proj);

} // namespace liecl
