#include "liecl/operator.hpp"

#include <cmath>
#include <cstdio>

#include "liecl/errors.hpp"

namespace liecl {

namespace {

[[noreturn]] void throw_mismatch(const char* op) {
  throw InvalidInputError(std::string(op) +
                          ": operators have mismatched backends or dimensions");
}

void require_compatible(const Operator& a, const Operator& b, const char* op) {
  if (a.is_null() || b.is_null()) {
    return;
  }
  if (a.backend() != b.backend() || a.dim() != b.dim()) {
    throw_mismatch(op);
  }
}

} // namespace

std::string to_string(Backend backend) {
  return backend == Backend::pauli ? "pauli" : "dense";
}

Backend Operator::backend() const {
  if (is_pauli()) {
    return Backend::pauli;
  }
  if (is_dense()) {
    return Backend::dense;
  }
  throw InvalidInputError("Operator::backend: null operator has no backend");
}

Eigen::Index Operator::dim() const {
  if (is_pauli()) {
    return Eigen::Index{1} << pauli().qubits();
  }
  if (is_dense()) {
    return dense().dim();
  }
  return 0;
}

const PauliSum& Operator::pauli() const {
  if (!is_pauli()) {
    throw InvalidInputError("Operator::pauli: not a pauli-backend operator");
  }
  return std::get<PauliSum>(payload_);
}

const DenseOperator& Operator::dense() const {
  if (!is_dense()) {
    throw InvalidInputError("Operator::dense: not a dense-backend operator");
  }
  return std::get<DenseOperator>(payload_);
}

Complex inner_product(const Operator& a, const Operator& b) {
  if (a.is_null() || b.is_null()) {
    return {0.0, 0.0};
  }
  require_compatible(a, b, "inner_product");
  if (a.is_pauli()) {
    return sum_inner_product(a.pauli(), b.pauli());
  }
  return dense_inner_product(a.dense(), b.dense());
}

double norm(const Operator& a) {
  if (a.is_null()) {
    return 0.0;
  }
  return a.is_pauli() ? sum_norm(a.pauli()) : dense_norm(a.dense());
}

Operator commutator(const Operator& a, const Operator& b) {
  if (a.is_null() || b.is_null()) {
    return {};
  }
  require_compatible(a, b, "commutator");
  if (a.is_pauli()) {
    return Operator(sum_commutator(a.pauli(), b.pauli()));
  }
  return Operator(dense_commutator(a.dense(), b.dense()));
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.is_null()) {
    return b;
  }
  if (b.is_null()) {
    return a;
  }
  require_compatible(a, b, "operator+");
  if (a.is_pauli()) {
    return Operator(a.pauli() + b.pauli());
  }
  return Operator(a.dense() + b.dense());
}

Operator operator-(const Operator& a, const Operator& b) {
  return a + Complex{-1.0, 0.0} * b;
}

Operator operator*(Complex scalar, const Operator& a) {
  if (a.is_null()) {
    return {};
  }
  if (a.is_pauli()) {
    return Operator(a.pauli() * scalar);
  }
  return Operator(a.dense() * scalar);
}

Operator axpy_dot(std::span<const Operator> tuple,
                  std::span<const Complex> coeffs) {
  if (tuple.size() != coeffs.size()) {
    throw InvalidInputError("axpy_dot: tuple and coefficient lengths differ (" +
                            std::to_string(tuple.size()) + " vs " +
                            std::to_string(coeffs.size()) + ")");
  }
  if (tuple.empty()) {
    return {};
  }
  return linear_combination(tuple[0], coeffs[0], tuple.subspan(1),
                            coeffs.subspan(1));
}

Operator linear_combination(const Operator& base, Complex base_coeff,
                            std::span<const Operator> tuple,
                            std::span<const Complex> coeffs) {
  if (tuple.size() != coeffs.size()) {
    throw InvalidInputError(
        "linear_combination: tuple and coefficient lengths differ");
  }
  for (const Operator& op : tuple) {
    require_compatible(base, op, "linear_combination");
  }
  if (base.is_null() || (base.is_pauli() && base.pauli().empty())) {
    // Fall back to chained addition from the first non-null element.
    Operator acc = base;
    for (std::size_t l = 0; l < tuple.size(); ++l) {
      acc = acc + coeffs[l] * tuple[l];
    }
    return acc;
  }
  if (base.is_dense()) {
    Eigen::MatrixXcd acc = base_coeff * base.dense().matrix();
    for (std::size_t l = 0; l < tuple.size(); ++l) {
      if (!tuple[l].is_null()) {
        acc.noalias() += coeffs[l] * tuple[l].dense().matrix();
      }
    }
    return Operator(DenseOperator(std::move(acc)));
  }
  std::vector<PauliSum::Term> terms;
  std::size_t total = base.pauli().size();
  for (const Operator& op : tuple) {
    total += op.is_null() ? 0 : op.pauli().size();
  }
  terms.reserve(total);
  for (const auto& t : base.pauli().terms()) {
    terms.push_back({t.string, base_coeff * t.coefficient});
  }
  for (std::size_t l = 0; l < tuple.size(); ++l) {
    if (tuple[l].is_null()) {
      continue;
    }
    for (const auto& t : tuple[l].pauli().terms()) {
      terms.push_back({t.string, coeffs[l] * t.coefficient});
    }
  }
  return Operator(PauliSum::from_terms(base.pauli().qubits(), terms));
}

bool is_zero(const Operator& a, double tol) {
  if (tol < 0.0) {
    throw InvalidInputError("is_zero: tolerance must be non-negative");
  }
  return norm(a) <= tol;
}

Operator normalized(const Operator& a) {
  const double n = norm(a);
  if (n == 0.0) {
    throw InvalidInputError("normalized: null operator");
  }
  return Complex{1.0 / n, 0.0} * a;
}

Operator to_dense(const Operator& a, std::uint32_t max_qubits) {
  if (a.is_pauli()) {
    return Operator(from_pauli(a.pauli(), max_qubits));
  }
  return a;
}

std::string format_operator(const Operator& a) {
  if (a.is_null()) {
    return "null";
  }
  if (a.is_pauli()) {
    return format_pauli_sum(a.pauli());
  }
  const auto& m = a.dense().matrix();
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 24);
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%s(%.17g,%.17g)", c == 0 ? "" : " ",
                    m(r, c).real(), m(r, c).imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

} // namespace liecl
