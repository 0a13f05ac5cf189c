#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liecl {

using Complex = std::complex<double>;

/// One n-qubit Pauli word in symplectic encoding: bit j of `x` (`z`) set
/// means an X (Z) factor on qubit j, both set means Y. The encoded matrix
/// carries a Hermitian phase convention,
///
///   word = i^{|x & z|} * prod_j X_j^{x_j} Z_j^{z_j},
///
/// so that every PauliString is Hermitian with eigenvalues +-1 and the
/// letters I, X, Y, Z denote the standard Pauli matrices.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint32_t qubits = 0;

  bool is_identity() const { return x == 0 && z == 0; }

  /// Number of Y factors (positions where both masks are set).
  int y_count() const;

  /// Letters with qubit 0 leftmost, e.g. "XIZ".
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Strings sort by (z, x); qubit counts never mix inside one sum.
struct PauliStringLess {
  bool operator()(const PauliString& a, const PauliString& b) const {
    return a.z != b.z ? a.z < b.z : a.x < b.x;
  }
};

/// Group product of two Pauli words: matrix(p) * matrix(q) = phase * matrix(r)
/// with phase in {1, i, -1, -i}. Masks combine by XOR.
std::pair<PauliString, Complex> string_product(const PauliString& p,
                                               const PauliString& q);

/// Power of i such that matrix(p) * matrix(q) = i^e * matrix(p XOR q), e in 0..3.
unsigned product_phase_exponent(const PauliString& p, const PauliString& q);

/// True iff the dense commutator of the two words is null. Symplectic test:
/// popcount((p.x & q.z) ^ (p.z & q.x)) must be even.
bool strings_commute(const PauliString& p, const PauliString& q);

/// Sparse complex-weighted sum of Pauli strings over a fixed qubit count.
///
/// Terms are kept sorted by (z, x), keys are unique, and coefficients of
/// magnitude at most kDropTolerance times the largest coefficient produced
/// by an arithmetic operation are dropped. Values are immutable after
/// construction; all operations are pure and safe to call concurrently.
class PauliSum {
public:
  struct Term {
    PauliString string;
    Complex coefficient;
  };

  /// Relative floor below which result coefficients are discarded.
  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;

  /// The null operator on n qubits.
  static PauliSum zero(std::uint32_t qubits) {
    PauliSum s;
    s.qubits_ = qubits;
    return s;
  }

  /// Single-term sum.
  static PauliSum single(const PauliString& string, Complex coefficient);

  /// Builds a sum from arbitrary (string, coefficient) pairs: merges
  /// duplicate keys in input order, sorts, applies the drop rule.
  static PauliSum from_terms(std::uint32_t qubits, std::span<const Term> terms);

  std::uint32_t qubits() const { return qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::span<const Term> terms() const { return terms_; }

  /// Coefficient of a string, 0 if absent.
  Complex coefficient(const PauliString& key) const;

  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator-(const PauliSum& other) const;
  PauliSum operator*(Complex scalar) const;
  friend PauliSum operator*(Complex scalar, const PauliSum& s) { return s * scalar; }

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

private:
  std::uint32_t qubits_ = 0;
  std::vector<Term> terms_; // sorted by (z, x), unique keys
};

/// [a, b] = ab - ba. Exploits that commuting string pairs contribute
/// nothing and anticommuting pairs contribute 2ab.
PauliSum sum_commutator(const PauliSum& a, const PauliSum& b);

/// (1/d) tr(a^dagger b) via string orthonormality: sum over shared keys of
/// conj(a[P]) * b[P].
Complex sum_inner_product(const PauliSum& a, const PauliSum& b);

/// sqrt(sum |c|^2); equals the dense operator norm of the expansion.
double sum_norm(const PauliSum& a);

/// Parses the text form of one operator:
///
///   sum  := term (('+'|'-') term)*
///   term := coeff WS word
///   coeff := real | '(' real ',' real ')'
///   word := [IXYZ]{n}, qubit 0 leftmost
///
/// Whitespace between tokens is insignificant. Raises ParseError with
/// 1-based line/column on malformed input.
PauliSum parse_pauli_sum(std::string_view text, std::uint32_t qubits);

/// Inverse of parse_pauli_sum; terms in sorted order, coefficients printed
/// with round-trip precision. The empty sum formats as "0 I...I".
std::string format_pauli_sum(const PauliSum& sum);

} // namespace liecl
