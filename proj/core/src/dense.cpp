#include "liecl/dense.hpp"

#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <limits>

#include "liecl/errors.hpp"

namespace liecl {

namespace {

void require_same_dim(const DenseOperator& a, const DenseOperator& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidInputError(std::string(op) + ": dimension mismatch (" +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
  }
}

std::uint64_t reverse_low_bits(std::uint64_t v, std::uint32_t n) {
  std::uint64_t r = 0;
  for (std::uint32_t j = 0; j < n; ++j) {
    r |= ((v >> j) & 1ull) << (n - 1 - j);
  }
  return r;
}

} // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw InvalidInputError("DenseOperator: matrix must be square");
  }
}

DenseOperator DenseOperator::operator+(const DenseOperator& other) const {
  require_same_dim(*this, other, "DenseOperator::operator+");
  return DenseOperator(matrix_ + other.matrix_);
}

DenseOperator DenseOperator::operator-(const DenseOperator& other) const {
  require_same_dim(*this, other, "DenseOperator::operator-");
  return DenseOperator(matrix_ - other.matrix_);
}

DenseOperator DenseOperator::operator*(Complex scalar) const {
  return DenseOperator(matrix_ * scalar);
}

Complex dense_inner_product(const DenseOperator& a, const DenseOperator& b) {
  require_same_dim(a, b, "dense_inner_product");
  const Eigen::Index d = a.dim();
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  const Complex t = (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
  return t / static_cast<double>(d);
}

double dense_norm(const DenseOperator& a) {
  return a.matrix().norm() / std::sqrt(static_cast<double>(a.dim()));
}

DenseOperator dense_commutator(const DenseOperator& a, const DenseOperator& b) {
  require_same_dim(a, b, "dense_commutator");
  return DenseOperator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

DenseOperator from_pauli(const PauliSum& sum, std::uint32_t max_qubits) {
  const std::uint32_t n = sum.qubits();
  if (n > max_qubits) {
    throw CapacityError("from_pauli: " + std::to_string(n) +
                        " qubits exceeds the expansion limit of " +
                        std::to_string(max_qubits));
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& term : sum.terms()) {
    // word|s> = i^{|x&z|} (-1)^{popcount(z_idx & s)} |s XOR x_idx>, with the
    // masks reversed into index-bit order (qubit 0 = most significant bit).
    const std::uint64_t xidx = reverse_low_bits(term.string.x, n);
    const std::uint64_t zidx = reverse_low_bits(term.string.z, n);
    Complex c = term.coefficient;
    switch (term.string.y_count() & 3) {
    case 1: c = Complex{-c.imag(), c.real()}; break;
    case 2: c = -c; break;
    case 3: c = Complex{c.imag(), -c.real()}; break;
    default: break;
    }
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(d); ++s) {
      const bool negate = std::popcount(zidx & s) & 1;
      m(static_cast<Eigen::Index>(s ^ xidx), static_cast<Eigen::Index>(s)) +=
          negate ? -c : c;
    }
  }
  return DenseOperator(std::move(m));
}

StackedBasisMatrix::StackedBasisMatrix(Eigen::Index operator_dim)
    : operator_dim_(operator_dim) {
  storage_.resize(operator_dim_ * operator_dim_, 8);
}

void StackedBasisMatrix::append(const DenseOperator& op) {
  if (op.dim() != operator_dim_) {
    throw InvalidInputError("StackedBasisMatrix::append: dimension mismatch");
  }
  if (columns_ == storage_.cols()) {
    Eigen::MatrixXcd grown(storage_.rows(), storage_.cols() * 2);
    grown.leftCols(columns_) = storage_.leftCols(columns_);
    storage_ = std::move(grown);
  }
  storage_.col(columns_) =
      Eigen::Map<const Eigen::VectorXcd>(op.matrix().data(), storage_.rows());
  ++columns_;
}

bool rank_independence_check(const StackedBasisMatrix& basis,
                             const DenseOperator& h, double tol) {
  const Eigen::Index rows = basis.operator_dim() * basis.operator_dim();
  if (h.dim() != basis.operator_dim()) {
    throw InvalidInputError(
        "rank_independence_check: operator dimension mismatch");
  }
  const Eigen::Index cols = basis.columns() + 1;
  Eigen::MatrixXcd stacked(rows, cols);
  stacked.leftCols(cols - 1) = basis.block();
  stacked.col(cols - 1) =
      Eigen::Map<const Eigen::VectorXcd>(h.matrix().data(), rows);

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  double threshold = tol;
  if (threshold <= 0.0) {
    threshold = std::numeric_limits<double>::epsilon() *
                static_cast<double>(std::max(rows, cols));
  }
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold * sigma_max) {
      ++rank;
    }
  }
  return rank == cols;
}

SubspaceProjector::SubspaceProjector(Eigen::MatrixXcd basis)
    : basis_(std::move(basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw InvalidInputError(
        "SubspaceProjector: need 1 <= subspace dim <= full dim");
  }
  const Eigen::MatrixXcd gram = basis_.adjoint() * basis_;
  const double err =
      (gram - Eigen::MatrixXcd::Identity(basis_.cols(), basis_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (err > 1e-12) {
    throw InvalidInputError(
        "SubspaceProjector: columns are not orthonormal (max deviation " +
        std::to_string(err) + ")");
  }
}

SubspaceProjector zero_magnetization_projector(std::uint32_t qubits) {
  if (qubits < 2 || qubits % 2 != 0) {
    throw InvalidInputError(
        "zero_magnetization_projector: qubit count must be even and >= 2");
  }
  if (qubits > kDefaultExpansionLimit * 2) {
    throw CapacityError("zero_magnetization_projector: qubit count too large");
  }
  const std::uint64_t d = 1ull << qubits;
  std::vector<std::uint64_t> states;
  // Ascending index order equals lexicographic bitstring order because
  // qubit 0 occupies the most significant index bit.
  for (std::uint64_t s = 0; s < d; ++s) {
    if (std::popcount(s) == static_cast<int>(qubits / 2)) {
      states.push_back(s);
    }
  }
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    basis(static_cast<Eigen::Index>(states[k]), static_cast<Eigen::Index>(k)) =
        1.0;
  }
  return SubspaceProjector(std::move(basis));
}

DenseOperator restrict_to_subspace(const DenseOperator& op,
                                   const SubspaceProjector& proj) {
  if (op.dim() != proj.full_dim()) {
    throw InvalidInputError("restrict_to_subspace: dimension mismatch");
  }
  return DenseOperator(proj.basis().adjoint() * op.matrix() * proj.basis());
}

} // namespace liecl
