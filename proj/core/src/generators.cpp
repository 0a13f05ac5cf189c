#include "liecl/generators.hpp"

#include "liecl/errors.hpp"
#include "liecl/rng.hpp"

namespace liecl {

namespace {

PauliString x_on(std::uint32_t qubit, std::uint32_t n) {
  return {1ull << qubit, 0, n};
}

PauliString z_on(std::uint32_t qubit, std::uint32_t n) {
  return {0, 1ull << qubit, n};
}

PauliString zz_on(std::uint32_t i, std::uint32_t j, std::uint32_t n) {
  return {0, (1ull << i) | (1ull << j), n};
}

void require_qubits(const AnsatzSpec& spec, std::uint32_t min,
                    bool even = false) {
  if (spec.qubits < min) {
    throw InvalidInputError(to_string(spec.family) + " requires at least " +
                            std::to_string(min) + " qubits");
  }
  if (even && spec.qubits % 2 != 0) {
    throw InvalidInputError(to_string(spec.family) +
                            " requires an even qubit count");
  }
  if (spec.qubits > 64) {
    throw InvalidInputError("qubit count above the 64-qubit mask width");
  }
}

// Per-qubit X and Z fields plus a nearest-neighbor ZZ coupling on the open
// chain; every term is its own generator.
std::vector<PauliSum> build_hea(const AnsatzSpec& spec) {
  const std::uint32_t n = spec.qubits;
  std::vector<PauliSum> out;
  out.reserve(3 * n - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    out.push_back(PauliSum::single(x_on(i, n), 1.0));
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    out.push_back(PauliSum::single(z_on(i, n), 1.0));
  }
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    out.push_back(PauliSum::single(zz_on(i, i + 1, n), 1.0));
  }
  return out;
}

// H1 = sum_i a_i Z_i + sum_{i<j} J_ij Z_i Z_j with seeded uniform(-1,1)
// coefficients (a first, then J in lexicographic (i,j) order), H2 = sum_i X_i.
std::vector<PauliSum> build_spin_glass(const AnsatzSpec& spec) {
  const std::uint32_t n = spec.qubits;
  SplitMix64 rng(spec.seed);
  std::vector<PauliSum::Term> h1;
  h1.reserve(n + n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    h1.push_back({z_on(i, n), rng.uniform_symmetric()});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      h1.push_back({zz_on(i, j, n), rng.uniform_symmetric()});
    }
  }
  std::vector<PauliSum::Term> h2;
  h2.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    h2.push_back({x_on(i, n), 1.0});
  }
  return {PauliSum::from_terms(n, h1), PauliSum::from_terms(n, h2)};
}

// Periodic XXZ split into even- and odd-bond Hamiltonians:
// H_parity = sum_{i of that parity} X_i X_{i+1} + Y_i Y_{i+1}
//            + delta Z_i Z_{i+1}, indices mod n.
std::vector<PauliSum> build_xxz(const AnsatzSpec& spec) {
  const std::uint32_t n = spec.qubits;
  auto bond_sum = [&](std::uint32_t parity) {
    std::vector<PauliSum::Term> terms;
    for (std::uint32_t i = parity; i < n; i += 2) {
      const std::uint32_t j = (i + 1) % n;
      terms.push_back({PauliString{(1ull << i) | (1ull << j), 0, n}, 1.0});
      terms.push_back({PauliString{(1ull << i) | (1ull << j),
                                   (1ull << i) | (1ull << j), n},
                       1.0});
      terms.push_back({zz_on(i, j, n), spec.delta});
    }
    return PauliSum::from_terms(n, terms);
  };
  return {bond_sum(0), bond_sum(1)};
}

// H1 = sum_{i=0}^{n-2} Z_i Z_{i+1} (open boundary), H2 = sum_i X_i.
std::vector<PauliSum> build_tfim(const AnsatzSpec& spec) {
  const std::uint32_t n = spec.qubits;
  std::vector<PauliSum::Term> h1;
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    h1.push_back({zz_on(i, i + 1, n), 1.0});
  }
  std::vector<PauliSum::Term> h2;
  for (std::uint32_t i = 0; i < n; ++i) {
    h2.push_back({x_on(i, n), 1.0});
  }
  return {PauliSum::from_terms(n, h1), PauliSum::from_terms(n, h2)};
}

} // namespace

std::string to_string(AnsatzFamily family) {
  switch (family) {
  case AnsatzFamily::hea: return "hea";
  case AnsatzFamily::spin_glass_hva: return "spin_glass_hva";
  case AnsatzFamily::xxz_hva: return "xxz_hva";
  case AnsatzFamily::tfim_hva_open: return "tfim_hva_open";
  }
  return "unknown";
}

AnsatzFamily family_from_string(const std::string& name) {
  if (name == "hea") return AnsatzFamily::hea;
  if (name == "spin_glass_hva") return AnsatzFamily::spin_glass_hva;
  if (name == "xxz_hva") return AnsatzFamily::xxz_hva;
  if (name == "tfim_hva_open") return AnsatzFamily::tfim_hva_open;
  throw InvalidInputError("unknown ansatz family '" + name + "'");
}

std::vector<PauliSum> build_generators(const AnsatzSpec& spec) {
  switch (spec.family) {
  case AnsatzFamily::hea:
    require_qubits(spec, 2);
    return build_hea(spec);
  case AnsatzFamily::spin_glass_hva:
    require_qubits(spec, 2);
    return build_spin_glass(spec);
  case AnsatzFamily::xxz_hva:
    require_qubits(spec, 2, /*even=*/true);
    return build_xxz(spec);
  case AnsatzFamily::tfim_hva_open:
    require_qubits(spec, 2);
    return build_tfim(spec);
  }
  throw InvalidInputError("build_generators: unknown family");
}

std::vector<FamilyInfo> list_families() {
  return {
      {"hea",
       "hardware-efficient ansatz: per-qubit X and Z fields plus "
       "nearest-neighbor ZZ couplings on the open chain",
       "4^n - 1", 2, false, false},
      {"spin_glass_hva",
       "spin-glass HVA: all-to-all ZZ glass with seeded uniform(-1,1) "
       "couplings and a transverse X field",
       "4^n - 1", 2, false, true},
      {"xxz_hva",
       "Heisenberg XXZ HVA: even- and odd-bond Hamiltonians on the periodic "
       "chain, delta = 1.5; optional zero-magnetization restriction",
       "d_sub^2 - 1 on invariant subspaces", 2, true, false},
      {"tfim_hva_open",
       "transverse-field Ising HVA with open boundary: ZZ chain plus "
       "transverse X field",
       "n^2 - 1", 2, false, false},
  };
}

OperatorTuple realize_generators(const AnsatzSpec& spec, Backend backend) {
  if (spec.restrict_zero_magnetization && spec.family != AnsatzFamily::xxz_hva) {
    throw InvalidInputError(
        "zero-magnetization restriction is an xxz_hva option");
  }
  const std::vector<PauliSum> sums = build_generators(spec);
  OperatorTuple out;
  out.reserve(sums.size());
  if (spec.restrict_zero_magnetization) {
    const SubspaceProjector proj = zero_magnetization_projector(spec.qubits);
    for (const PauliSum& s : sums) {
      out.emplace_back(restrict_to_subspace(from_pauli(s), proj));
    }
    return out;
  }
  for (const PauliSum& s : sums) {
    if (backend == Backend::dense) {
      out.emplace_back(from_pauli(s));
    } else {
      out.emplace_back(s);
    }
  }
  return out;
}

} // namespace liecl
