#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "liecl/dense.hpp"
#include "liecl/pauli.hpp"

namespace liecl {

enum class Backend { pauli, dense };

std::string to_string(Backend backend);

/// Immutable operator value over one of the two backends.
///
/// A default-constructed Operator is the universal null element: it has norm
/// zero, combines with operators of any backend or dimension, and absorbs
/// commutators. Backend-carrying operators only ever combine with the same
/// backend and dimension; mismatches raise InvalidInputError.
class Operator {
public:
  Operator() = default;
  Operator(PauliSum sum) : payload_(std::move(sum)) {}
  Operator(DenseOperator op) : payload_(std::move(op)) {}

  bool is_null() const {
    return std::holds_alternative<std::monostate>(payload_);
  }
  bool is_pauli() const { return std::holds_alternative<PauliSum>(payload_); }
  bool is_dense() const {
    return std::holds_alternative<DenseOperator>(payload_);
  }

  /// Backend tag; throws for the null operator, which has none.
  Backend backend() const;

  /// Hilbert-space dimension d (2^n for the pauli backend).
  Eigen::Index dim() const;

  const PauliSum& pauli() const;
  const DenseOperator& dense() const;

private:
  std::variant<std::monostate, PauliSum, DenseOperator> payload_;
};

using OperatorTuple = std::vector<Operator>;
using CoefficientVector = std::vector<Complex>;

/// (1/d) tr(a^dagger b); conjugate-symmetric.
Complex inner_product(const Operator& a, const Operator& b);

/// sqrt(inner_product(a, a)); zero iff a is null up to rounding.
double norm(const Operator& a);

/// ab - ba.
Operator commutator(const Operator& a, const Operator& b);

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(Complex scalar, const Operator& a);

/// sum_l coeffs[l] * tuple[l]; the empty combination is the null operator.
Operator axpy_dot(std::span<const Operator> tuple,
                  std::span<const Complex> coeffs);

/// base_coeff * base + sum_l coeffs[l] * tuple[l], accumulated in one pass
/// in index order. Equivalent to chained additions but without the
/// intermediate values; this is the projection hot path.
Operator linear_combination(const Operator& base, Complex base_coeff,
                            std::span<const Operator> tuple,
                            std::span<const Complex> coeffs);

/// norm(a) <= tol.
bool is_zero(const Operator& a, double tol);

/// a / norm(a); throws InvalidInputError when the norm is zero.
Operator normalized(const Operator& a);

/// Pauli operators expand through from_pauli; dense operators pass through.
Operator to_dense(const Operator& a,
                  std::uint32_t max_qubits = kDefaultExpansionLimit);

/// Canonical text form used for deterministic basis listings: the pauli text
/// format, or full-precision row-major entries for dense operators.
std::string format_operator(const Operator& a);

} // namespace liecl
