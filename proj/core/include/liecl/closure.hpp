#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liecl/operator.hpp"

namespace liecl {

/// Linear-independence strategies for the closure loop.
enum class Method {
  standard_rank,     ///< reference path: SVD rank of the stacked basis matrix
  matrix_inversion,  ///< residual against the maintained Gram inverse
  orthonorm,         ///< orthonormal auxiliary basis, originals kept
  orthonorm_dimonly, ///< orthonormal basis only
};

std::string to_string(Method method);
Method method_from_string(const std::string& name);

/// Hermitian matrix A of pairwise inner products of the current basis,
/// together with its maintained inverse. Diagonal entries are exactly 1
/// because basis elements are unit-normalized on acceptance.
class GramState {
public:
  GramState() = default;

  Eigen::Index size() const { return gram_.rows(); }
  const Eigen::MatrixXcd& gram() const { return gram_; }
  const Eigen::MatrixXcd& inverse() const { return inverse_; }

  /// Schur complement s = 1 - beta^dagger A^{-1} beta of a prospective new
  /// element whose inner products with the basis are beta.
  double schur_complement(const Eigen::VectorXcd& beta) const;

  /// Adds the row/column (beta, 1) and updates the inverse through the
  /// bordered-inverse identity. Throws DegeneracyError when the Schur
  /// complement is at or below `conditioning_floor`, naming the element
  /// index the expansion would have created.
  void expand(const Eigen::VectorXcd& beta, double conditioning_floor = 1e-12);

  /// Recomputes the inverse from A, discarding accumulated update drift.
  void refresh();

  /// max |A A^{-1} - I|, the maintained-inverse consistency measure.
  double inverse_error() const;

private:
  Eigen::MatrixXcd gram_;    // A
  Eigen::MatrixXcd inverse_; // A^{-1}
};

struct WarningRecord {
  std::string kind;    // "borderline_residual" | "schur_conditioning" | "null_generator"
  std::string detail;
  double value = 0.0;  // residual norm or schur complement where applicable
};

struct ClosureStats {
  std::uint64_t commutators_evaluated = 0;
  std::uint64_t independence_checks = 0;
  std::uint64_t accepted = 0;
  double wall_seconds = 0.0;
  std::vector<WarningRecord> warnings;
};

struct ClosureResult {
  OperatorTuple basis;
  /// Orthonormal auxiliary tuple; present for the orthonormalization
  /// methods (for the dimension-only variant it equals `basis`).
  std::optional<OperatorTuple> orthonormal_basis;
  std::size_t dimension = 0;
  Method method = Method::orthonorm_dimonly;
  Backend backend = Backend::pauli;
  double tolerance = 0.0;
  ClosureStats stats;
  /// Final Gram state, kept for the matrix-inversion method.
  std::optional<GramState> gram;
};

struct ClosureConfig {
  /// Residual threshold of the zero test, applied to unit-normalized
  /// candidates so it acts as a relative tolerance.
  double tolerance = 1e-8;
  /// Relative singular-value threshold of the rank check; <= 0 selects
  /// eps * max(rows, cols).
  double rank_tolerance = 0.0;
  /// Basis size cap; 0 means the complex-span bound d^2.
  std::size_t max_dim = 0;
  /// Worker threads for batched commutator evaluation and speculative
  /// checks. Results are identical for any value.
  unsigned threads = 1;
  /// Full Gram re-inversion cadence (matrix-inversion method).
  std::size_t gram_refresh_interval = 256;
  /// Schur-complement floor below which expansion reports degeneracy.
  double conditioning_floor = 1e-12;
  /// Optional cooperative deadline; exceeding it raises TimeoutError.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Reference closure: rank-based independence check on the dense backend
/// (Algorithm 1 shape). Inputs must be dense operators.
ClosureResult close_standard(std::span<const Operator> generators,
                             const ClosureConfig& config = {});

/// Closure with the Gram-inverse residual check; each accepted element is
/// unit-normalized and A / A^{-1} grow only on acceptance.
ClosureResult close_matrix_inversion(std::span<const Operator> generators,
                                     const ClosureConfig& config = {});

/// Closure with the orthonormal-projection check. With `keep_original` the
/// returned basis holds the (normalized) accepted candidates and the
/// orthonormal tuple is carried alongside; without it only the orthonormal
/// basis exists and commutators are taken between its elements.
ClosureResult close_orthonormalization(std::span<const Operator> generators,
                                       const ClosureConfig& config = {},
                                       bool keep_original = true);

/// Dispatch by method. For the rank method, pauli generators are expanded
/// to the dense backend first (the check requires vectorized operators).
ClosureResult run_closure(std::span<const Operator> generators, Method method,
                          const ClosureConfig& config = {});

/// Independence test of Theorem-style residual form: beta[l] = <B[l], h>,
/// independent iff the norm of h - B.(A^{-1} beta) exceeds tol. The caller
/// passes a unit-normalized h and a state consistent with B. Returns the
/// verdict and beta.
std::pair<bool, CoefficientVector>
check_matrix_inversion(const GramState& state, std::span<const Operator> basis,
                       const Operator& h, double tol);

/// h_perp = h - sum_l <V[l], h> V[l], projected twice for
/// re-orthogonalization; the returned coefficients are the first-pass
/// projections. V must be orthonormal.
std::pair<Operator, CoefficientVector>
project_residual(std::span<const Operator> orthonormal, const Operator& h);

/// Deterministic text form of a closure basis, one operator per line.
std::string basis_listing(const ClosureResult& result);

} // namespace liecl
