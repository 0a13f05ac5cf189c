#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liecl/operator.hpp"

namespace liecl {

enum class AnsatzFamily { hea, spin_glass_hva, xxz_hva, tfim_hva_open };

std::string to_string(AnsatzFamily family);
AnsatzFamily family_from_string(const std::string& name);

/// Parameters of one generator-set construction. The seed feeds the
/// documented splitmix64 recurrence and only affects spin_glass_hva; the
/// zero-magnetization restriction is meaningful only for xxz_hva.
struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::hea;
  std::uint32_t qubits = 2;
  std::uint64_t seed = 0;
  bool restrict_zero_magnetization = false;
  double delta = 1.5; // XXZ anisotropy
};

/// Generator tuple of the family as Pauli sums. Deterministic in
/// (family, qubits, seed); coefficients are real in the Hermitian string
/// convention.
std::vector<PauliSum> build_generators(const AnsatzSpec& spec);

struct FamilyInfo {
  std::string name;
  std::string description;
  std::string expected_dimension; // closed-form formula, informational
  std::uint32_t min_qubits;
  bool requires_even_qubits;
  bool uses_seed;
};

/// Catalog metadata for the CLI and validation tables.
std::vector<FamilyInfo> list_families();

/// Generator tuple realized on a backend. Pauli sums are expanded through
/// from_pauli for the dense backend; the zero-magnetization restriction
/// implies the dense backend and applies the plain C(n, n/2) projector.
OperatorTuple realize_generators(const AnsatzSpec& spec, Backend backend);

} // namespace liecl
