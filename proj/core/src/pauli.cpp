#include "liecl/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "liecl/errors.hpp"

namespace liecl {

namespace {

void require_same_qubits(std::uint32_t a, std::uint32_t b, const char* op) {
  if (a != b) {
    throw InvalidInputError(std::string(op) + ": qubit count mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Multiplies c by i^e without going through complex arithmetic, so that the
// result is exact for e in 0..3.
Complex apply_phase(Complex c, unsigned e) {
  switch (e & 3u) {
  case 0: return c;
  case 1: return {-c.imag(), c.real()};
  case 2: return -c;
  default: return {c.imag(), -c.real()};
  }
}

} // namespace

int PauliString::y_count() const { return std::popcount(x & z); }

std::string PauliString::str() const {
  static constexpr char letters[4] = {'I', 'X', 'Z', 'Y'}; // index = x_bit | z_bit<<1
  std::string out(qubits, 'I');
  for (std::uint32_t j = 0; j < qubits; ++j) {
    unsigned code = static_cast<unsigned>((x >> j) & 1u) |
                    (static_cast<unsigned>((z >> j) & 1u) << 1);
    out[j] = letters[code];
  }
  return out;
}

unsigned product_phase_exponent(const PauliString& p, const PauliString& q) {
  // word(x,z) = i^{|x&z|} X^x Z^z. Moving q's X factors past p's Z factors
  // gives (-1)^{|p.z & q.x|}; the remaining i-powers rebalance the Hermitian
  // prefactors of the inputs against the output word.
  const std::uint64_t rx = p.x ^ q.x;
  const std::uint64_t rz = p.z ^ q.z;
  const int e = std::popcount(p.x & p.z) + std::popcount(q.x & q.z) -
                std::popcount(rx & rz) + 2 * std::popcount(p.z & q.x);
  return static_cast<unsigned>(((e % 4) + 4) % 4);
}

std::pair<PauliString, Complex> string_product(const PauliString& p,
                                               const PauliString& q) {
  require_same_qubits(p.qubits, q.qubits, "string_product");
  PauliString r{p.x ^ q.x, p.z ^ q.z, p.qubits};
  return {r, apply_phase(Complex{1.0, 0.0}, product_phase_exponent(p, q))};
}

bool strings_commute(const PauliString& p, const PauliString& q) {
  require_same_qubits(p.qubits, q.qubits, "strings_commute");
  return (std::popcount((p.x & q.z) ^ (p.z & q.x)) & 1) == 0;
}

PauliSum PauliSum::single(const PauliString& string, Complex coefficient) {
  Term t{string, coefficient};
  return from_terms(string.qubits, std::span<const Term>(&t, 1));
}

PauliSum PauliSum::from_terms(std::uint32_t qubits, std::span<const Term> terms) {
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      // splitmix-style mix of the two masks
      std::uint64_t h = k.first * 0x9E3779B97F4A7C15ull ^ k.second;
      h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Complex, KeyHash> acc;
  acc.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.string.qubits != qubits) {
      throw InvalidInputError("PauliSum::from_terms: term qubit count mismatch");
    }
    acc[{t.string.z, t.string.x}] += t.coefficient;
  }

  double max_mag = 0.0;
  for (const auto& [key, c] : acc) {
    max_mag = std::max(max_mag, std::abs(c));
  }
  const double floor = kDropTolerance * max_mag;

  PauliSum out;
  out.qubits_ = qubits;
  out.terms_.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (std::abs(c) > floor) {
      out.terms_.push_back({PauliString{key.second, key.first, qubits}, c});
    }
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) {
              return PauliStringLess{}(a.string, b.string);
            });
  return out;
}

Complex PauliSum::coefficient(const PauliString& key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, const PauliString& k) {
                               return PauliStringLess{}(t.string, k);
                             });
  if (it != terms_.end() && it->string.z == key.z && it->string.x == key.x) {
    return it->coefficient;
  }
  return {0.0, 0.0};
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  require_same_qubits(qubits_, other.qubits_, "PauliSum::operator+");
  // Sorted two-way merge keeps the result ordered without re-sorting.
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), b = other.terms_.begin();
  double max_mag = 0.0;
  while (a != terms_.end() || b != other.terms_.end()) {
    Term t;
    if (b == other.terms_.end() ||
        (a != terms_.end() && PauliStringLess{}(a->string, b->string))) {
      t = *a++;
    } else if (a == terms_.end() || PauliStringLess{}(b->string, a->string)) {
      t = *b++;
    } else {
      t = {a->string, a->coefficient + b->coefficient};
      ++a;
      ++b;
    }
    max_mag = std::max(max_mag, std::abs(t.coefficient));
    merged.push_back(t);
  }
  const double floor = kDropTolerance * max_mag;
  PauliSum out;
  out.qubits_ = qubits_;
  out.terms_.reserve(merged.size());
  for (const Term& t : merged) {
    if (std::abs(t.coefficient) > floor) {
      out.terms_.push_back(t);
    }
  }
  return out;
}

PauliSum PauliSum::operator-(const PauliSum& other) const {
  return *this + other * Complex{-1.0, 0.0};
}

PauliSum PauliSum::operator*(Complex scalar) const {
  PauliSum out;
  out.qubits_ = qubits_;
  if (scalar == Complex{0.0, 0.0}) {
    return out;
  }
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    out.terms_.push_back({t.string, t.coefficient * scalar});
  }
  return out;
}

PauliSum sum_commutator(const PauliSum& a, const PauliSum& b) {
  require_same_qubits(a.qubits(), b.qubits(), "sum_commutator");
  // For anticommuting words [P,Q] = 2PQ; commuting pairs are skipped. The
  // phase is applied by exact component moves so that sum_commutator(a,b)
  // and sum_commutator(b,a) cancel term by term in floating point.
  std::vector<PauliSum::Term> terms;
  terms.reserve(a.size() * b.size() / 2 + 1);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (strings_commute(ta.string, tb.string)) {
        continue;
      }
      const unsigned e = product_phase_exponent(ta.string, tb.string);
      Complex w = ta.coefficient * tb.coefficient;
      w = apply_phase(w + w, e);
      terms.push_back({PauliString{ta.string.x ^ tb.string.x,
                                   ta.string.z ^ tb.string.z, a.qubits()},
                       w});
    }
  }
  return PauliSum::from_terms(a.qubits(), terms);
}

Complex sum_inner_product(const PauliSum& a, const PauliSum& b) {
  require_same_qubits(a.qubits(), b.qubits(), "sum_inner_product");
  Complex acc{0.0, 0.0};
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  const auto ea = a.terms().end(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (PauliStringLess{}(ia->string, ib->string)) {
      ++ia;
    } else if (PauliStringLess{}(ib->string, ia->string)) {
      ++ib;
    } else {
      acc += std::conj(ia->coefficient) * ib->coefficient;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

double sum_norm(const PauliSum& a) {
  double acc = 0.0;
  for (const auto& t : a.terms()) {
    acc += std::norm(t.coefficient);
  }
  return std::sqrt(acc);
}

namespace {

class SumParser {
public:
  SumParser(std::string_view text, std::uint32_t qubits)
      : text_(text), qubits_(qubits) {}

  PauliSum parse() {
    std::vector<PauliSum::Term> terms;
    skip_ws();
    if (at_end()) {
      throw error("empty operator expression");
    }
    terms.push_back(parse_term(1.0));
    skip_ws();
    while (!at_end()) {
      double sign;
      if (peek() == '+') {
        sign = 1.0;
      } else if (peek() == '-') {
        sign = -1.0;
      } else {
        throw error("expected '+' or '-' between terms");
      }
      advance();
      skip_ws();
      terms.push_back(parse_term(sign));
      skip_ws();
    }
    return PauliSum::from_terms(qubits_, terms);
  }

private:
  PauliSum::Term parse_term(double sign) {
    Complex coeff;
    if (!at_end() && peek() == '(') {
      advance();
      skip_ws();
      double re = parse_real();
      skip_ws();
      expect(',');
      skip_ws();
      double im = parse_real();
      skip_ws();
      expect(')');
      coeff = {re, im};
    } else {
      coeff = {parse_real(), 0.0};
    }
    if (!at_end() && !is_space(peek())) {
      throw error("expected whitespace between coefficient and Pauli word");
    }
    skip_ws();
    return {parse_word(), sign * coeff};
  }

  double parse_real() {
    const std::size_t start = pos_;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      advance();
    }
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                         peek() == '.')) {
      advance();
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      advance();
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        advance();
      }
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        advance();
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || pos_ == start) {
      pos_ = start;
      throw error("malformed real number");
    }
    return value;
  }

  PauliString parse_word() {
    if (at_end()) {
      throw error("expected Pauli word");
    }
    PauliString s{0, 0, qubits_};
    std::uint32_t j = 0;
    while (!at_end() && !is_space(peek()) && peek() != '+' && peek() != '-') {
      if (j >= qubits_) {
        throw error("Pauli word longer than " + std::to_string(qubits_) +
                    " qubits");
      }
      switch (peek()) {
      case 'I': break;
      case 'X': s.x |= 1ull << j; break;
      case 'Y': s.x |= 1ull << j; s.z |= 1ull << j; break;
      case 'Z': s.z |= 1ull << j; break;
      default:
        throw error(std::string("invalid Pauli letter '") + peek() + "'");
      }
      advance();
      ++j;
    }
    if (j != qubits_) {
      throw error("Pauli word has " + std::to_string(j) + " letters, expected " +
                  std::to_string(qubits_));
    }
    return s;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && is_space(peek())) {
      advance();
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) {
      throw error(std::string("expected '") + c + "'");
    }
    advance();
  }

  ParseError error(const std::string& msg) const {
    return ParseError(msg, line_, col_);
  }

  std::string_view text_;
  std::uint32_t qubits_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

PauliSum parse_pauli_sum(std::string_view text, std::uint32_t qubits) {
  if (qubits < 1 || qubits > 64) {
    throw InvalidInputError("parse_pauli_sum: qubit count must be in 1..64");
  }
  return SumParser(text, qubits).parse();
}

std::string format_pauli_sum(const PauliSum& sum) {
  if (sum.empty()) {
    return "0 " + std::string(sum.qubits(), 'I');
  }
  std::string out;
  bool first = true;
  for (const auto& t : sum.terms()) {
    const Complex c = t.coefficient;
    if (c.imag() == 0.0) {
      double re = c.real();
      if (!first) {
        out += re < 0.0 ? " - " : " + ";
        re = std::abs(re);
      }
      out += format_real(re);
    } else {
      if (!first) {
        out += " + ";
      }
      out += "(" + format_real(c.real()) + "," + format_real(c.imag()) + ")";
    }
    out += " " + t.string.str();
    first = false;
  }
  return out;
}

} // namespace liecl
