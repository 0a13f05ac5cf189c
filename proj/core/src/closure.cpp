#include "liecl/closure.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <memory>

#include "liecl/errors.hpp"
#include "parallel.hpp"

namespace liecl {

namespace {

using Clock = std::chrono::steady_clock;

Eigen::VectorXcd to_eigen(const CoefficientVector& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(),
                                            static_cast<Eigen::Index>(v.size()));
}

} // namespace

std::string to_string(Method method) {
  switch (method) {
  case Method::standard_rank: return "standard-rank";
  case Method::matrix_inversion: return "matrix-inversion";
  case Method::orthonorm: return "orthonorm";
  case Method::orthonorm_dimonly: return "orthonorm-dimonly";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "standard-rank") return Method::standard_rank;
  if (name == "matrix-inversion") return Method::matrix_inversion;
  if (name == "orthonorm") return Method::orthonorm;
  if (name == "orthonorm-dimonly") return Method::orthonorm_dimonly;
  throw InvalidInputError("unknown method '" + name +
                          "' (expected standard-rank, matrix-inversion, "
                          "orthonorm or orthonorm-dimonly)");
}

double GramState::schur_complement(const Eigen::VectorXcd& beta) const {
  if (beta.size() != gram_.rows()) {
    throw InvalidInputError("GramState: beta length does not match basis size");
  }
  if (beta.size() == 0) {
    return 1.0;
  }
  const Complex s = Complex{1.0, 0.0} - beta.dot(inverse_ * beta);
  return s.real();
}

void GramState::expand(const Eigen::VectorXcd& beta, double conditioning_floor) {
  const double s = schur_complement(beta);
  const Eigen::Index n = gram_.rows();
  if (s <= conditioning_floor) {
    throw DegeneracyError(
        "Gram expansion is numerically degenerate for element " +
            std::to_string(n) + " (Schur complement " + std::to_string(s) +
            "); the element should have been rejected as dependent",
        static_cast<std::size_t>(n));
  }

  Eigen::MatrixXcd gram(n + 1, n + 1);
  gram.topLeftCorner(n, n) = gram_;
  gram.col(n).head(n) = beta;
  gram.row(n).head(n) = beta.adjoint();
  gram(n, n) = 1.0;

  // Bordered inverse: with u = A^{-1} beta and s = 1 - beta^dagger u,
  //   [A b; b* 1]^{-1} = [A^{-1} + u u^dagger / s, -u / s; -u^dagger / s, 1/s].
  Eigen::MatrixXcd inverse(n + 1, n + 1);
  if (n == 0) {
    inverse(0, 0) = 1.0;
  } else {
    const Eigen::VectorXcd u = inverse_ * beta;
    inverse.topLeftCorner(n, n) = inverse_ + (u * u.adjoint()) / s;
    inverse.col(n).head(n) = -u / s;
    inverse.row(n).head(n) = inverse.col(n).head(n).adjoint();
    inverse(n, n) = 1.0 / s;
  }

  gram_ = std::move(gram);
  inverse_ = std::move(inverse);
}

void GramState::refresh() {
  if (gram_.rows() == 0) {
    return;
  }
  inverse_ = gram_.ldlt().solve(
      Eigen::MatrixXcd::Identity(gram_.rows(), gram_.cols()));
}

double GramState::inverse_error() const {
  if (gram_.rows() == 0) {
    return 0.0;
  }
  return ((gram_ * inverse_) -
          Eigen::MatrixXcd::Identity(gram_.rows(), gram_.cols()))
      .cwiseAbs()
      .maxCoeff();
}

namespace {

// Residual norm of h against the basis through the Gram inverse, plus beta.
std::pair<double, CoefficientVector>
matrix_inversion_residual(const GramState& state,
                          std::span<const Operator> basis, const Operator& h) {
  if (static_cast<std::size_t>(state.size()) != basis.size()) {
    throw InvalidInputError(
        "check_matrix_inversion: state size does not match basis size");
  }
  CoefficientVector beta(basis.size());
  for (std::size_t l = 0; l < basis.size(); ++l) {
    beta[l] = inner_product(basis[l], h);
  }
  if (basis.empty()) {
    return {norm(h), beta};
  }
  const Eigen::VectorXcd x = state.inverse() * to_eigen(beta);
  CoefficientVector neg(x.size());
  for (Eigen::Index l = 0; l < x.size(); ++l) {
    neg[static_cast<std::size_t>(l)] = -x(l);
  }
  const Operator residual = linear_combination(h, Complex{1.0, 0.0}, basis, neg);
  return {norm(residual), std::move(beta)};
}

} // namespace

std::pair<bool, CoefficientVector>
check_matrix_inversion(const GramState& state, std::span<const Operator> basis,
                       const Operator& h, double tol) {
  auto [residual_norm, beta] = matrix_inversion_residual(state, basis, h);
  return {residual_norm > tol, std::move(beta)};
}

std::pair<Operator, CoefficientVector>
project_residual(std::span<const Operator> orthonormal, const Operator& h) {
  if (orthonormal.empty()) {
    return {h, {}};
  }
  CoefficientVector coeffs(orthonormal.size());
  CoefficientVector neg(orthonormal.size());
  for (std::size_t l = 0; l < orthonormal.size(); ++l) {
    coeffs[l] = inner_product(orthonormal[l], h);
    neg[l] = -coeffs[l];
  }
  Operator residual =
      linear_combination(h, Complex{1.0, 0.0}, orthonormal, neg);
  // Second pass; classical Gram-Schmidt needs the re-orthogonalization to
  // hold orthogonality at large basis sizes.
  for (std::size_t l = 0; l < orthonormal.size(); ++l) {
    neg[l] = -inner_product(orthonormal[l], residual);
  }
  residual = linear_combination(residual, Complex{1.0, 0.0}, orthonormal, neg);
  return {std::move(residual), std::move(coeffs)};
}

namespace {

// Outcome of one independence check, computed against a frozen basis state.
struct CheckOutcome {
  bool independent = false;
  double residual_norm = 0.0;
  CoefficientVector coefficients; // beta (matrix inversion) / projections
  Operator residual_unit;         // orthonormalization methods only
};

// One linear-independence strategy: a pure check against the current state
// plus a mutation that accepts a unit-norm candidate.
class Strategy {
public:
  virtual ~Strategy() = default;
  virtual const OperatorTuple& commutator_basis() const = 0;
  virtual CheckOutcome check(const Operator& h_unit) const = 0;
  virtual void accept(const Operator& h_unit, const CheckOutcome& outcome) = 0;
  virtual void finalize(ClosureResult& result) = 0;
};

class RankStrategy final : public Strategy {
public:
  RankStrategy(Eigen::Index dim, double rank_tol)
      : stack_(dim), rank_tol_(rank_tol) {}

  const OperatorTuple& commutator_basis() const override { return basis_; }

  CheckOutcome check(const Operator& h_unit) const override {
    CheckOutcome out;
    out.independent = rank_independence_check(stack_, h_unit.dense(), rank_tol_);
    // The rank decision has no residual scale; leave residual_norm at 0.
    return out;
  }

  void accept(const Operator& h_unit, const CheckOutcome&) override {
    basis_.push_back(h_unit);
    stack_.append(h_unit.dense());
  }

  void finalize(ClosureResult& result) override {
    result.basis = std::move(basis_);
  }

private:
  OperatorTuple basis_;
  StackedBasisMatrix stack_;
  double rank_tol_;
};

class MatrixInversionStrategy final : public Strategy {
public:
  // An acceptance whose Schur complement falls below this injects
  // condition-amplified error into the bordered update, so the inverse is
  // rebuilt from A right away instead of waiting for the cadence refresh.
  static constexpr double kSchurRefreshThreshold = 1e-4;

  MatrixInversionStrategy(double tol, double conditioning_floor,
                          std::size_t refresh_interval)
      : tol_(tol), conditioning_floor_(conditioning_floor),
        refresh_interval_(refresh_interval) {}

  const OperatorTuple& commutator_basis() const override { return basis_; }

  CheckOutcome check(const Operator& h_unit) const override {
    auto [residual_norm, beta] =
        matrix_inversion_residual(gram_, basis_, h_unit);
    CheckOutcome out;
    out.independent = residual_norm > tol_;
    out.residual_norm = residual_norm;
    out.coefficients = std::move(beta);
    return out;
  }

  void accept(const Operator& h_unit, const CheckOutcome& outcome) override {
    const double schur =
        gram_.schur_complement(to_eigen(outcome.coefficients));
    basis_.push_back(h_unit);
    gram_.expand(to_eigen(outcome.coefficients), conditioning_floor_);
    ++since_refresh_;
    if (schur < kSchurRefreshThreshold ||
        (refresh_interval_ > 0 && since_refresh_ >= refresh_interval_)) {
      gram_.refresh();
      since_refresh_ = 0;
    }
  }

  void finalize(ClosureResult& result) override {
    result.basis = std::move(basis_);
    result.gram = std::move(gram_);
  }

  const GramState& gram() const { return gram_; }

private:
  OperatorTuple basis_;
  GramState gram_;
  double tol_;
  double conditioning_floor_;
  std::size_t refresh_interval_;
  std::size_t since_refresh_ = 0;
};

class OrthonormStrategy final : public Strategy {
public:
  OrthonormStrategy(double tol, bool keep_original)
      : tol_(tol), keep_original_(keep_original) {}

  const OperatorTuple& commutator_basis() const override {
    return keep_original_ ? originals_ : orthonormal_;
  }

  CheckOutcome check(const Operator& h_unit) const override {
    auto [residual, coeffs] = project_residual(orthonormal_, h_unit);
    CheckOutcome out;
    out.residual_norm = norm(residual);
    out.independent = out.residual_norm > tol_;
    out.coefficients = std::move(coeffs);
    if (out.independent) {
      out.residual_unit = Complex{1.0 / out.residual_norm, 0.0} * residual;
    }
    return out;
  }

  void accept(const Operator& h_unit, const CheckOutcome& outcome) override {
    orthonormal_.push_back(outcome.residual_unit);
    if (keep_original_) {
      originals_.push_back(h_unit);
    }
  }

  void finalize(ClosureResult& result) override {
    if (keep_original_) {
      result.basis = std::move(originals_);
      result.orthonormal_basis = std::move(orthonormal_);
    } else {
      result.basis = orthonormal_;
      result.orthonormal_basis = std::move(orthonormal_);
    }
  }

private:
  OperatorTuple originals_;
  OperatorTuple orthonormal_;
  double tol_;
  bool keep_original_;
};

struct EngineContext {
  std::size_t max_dim = 0;
  ClosureStats stats;
  std::uint64_t accept_version = 0;
};

void check_deadline(const ClosureConfig& config) {
  if (config.deadline && Clock::now() > *config.deadline) {
    throw TimeoutError("closure computation exceeded its deadline");
  }
}

void note_borderline(EngineContext& ctx, const CheckOutcome& outcome,
                     double tol, const std::string& where) {
  // A residual within a factor 10 of the threshold means the verdict is
  // sensitive to the tolerance choice; surface it on the warning channel.
  if (outcome.residual_norm > 0.0 && outcome.residual_norm >= tol / 10.0 &&
      outcome.residual_norm <= tol * 10.0) {
    ctx.stats.warnings.push_back(
        {"borderline_residual",
         where + ": residual " + std::to_string(outcome.residual_norm) +
             " within 10x of tolerance " + std::to_string(tol) +
             (outcome.independent ? " (accepted)" : " (rejected)"),
         outcome.residual_norm});
  }
}

void accept_candidate(EngineContext& ctx, Strategy& strategy,
                      const Operator& h_unit, const CheckOutcome& outcome) {
  if (strategy.commutator_basis().size() >= ctx.max_dim) {
    throw CapacityError("basis size cap of " + std::to_string(ctx.max_dim) +
                        " exceeded; raise the cap to continue");
  }
  strategy.accept(h_unit, outcome);
  ++ctx.stats.accepted;
  ++ctx.accept_version;
}

// Candidate produced by one (l, m) cursor pair.
struct Candidate {
  Operator h_unit;
  bool null = true;
};

ClosureResult run_engine(std::span<const Operator> generators,
                         Strategy& strategy, Method method,
                         const ClosureConfig& config, Backend backend) {
  const auto t0 = Clock::now();

  Eigen::Index dim = 0;
  for (const Operator& g : generators) {
    if (!g.is_null()) {
      dim = g.dim();
      break;
    }
  }
  EngineContext ctx;
  ctx.max_dim = config.max_dim > 0 ? config.max_dim
                                   : static_cast<std::size_t>(dim) *
                                         static_cast<std::size_t>(dim);
  const double tol = config.tolerance;
  const bool gram_method = method == Method::matrix_inversion;
  const double schur_warn_ceiling = 1e4 * config.conditioning_floor;

  // Generator loop: normalize, then run the same independence check the
  // main loop uses. Null generators are skipped with a diagnostic record.
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const double g_norm = norm(generators[i]);
    if (g_norm <= tol) {
      ctx.stats.warnings.push_back(
          {"null_generator",
           "generator " + std::to_string(i) + " has norm " +
               std::to_string(g_norm) + " and was skipped",
           g_norm});
      continue;
    }
    const Operator g_unit = Complex{1.0 / g_norm, 0.0} * generators[i];
    const CheckOutcome outcome = strategy.check(g_unit);
    ++ctx.stats.independence_checks;
    note_borderline(ctx, outcome, tol, "generator " + std::to_string(i));
    if (outcome.independent) {
      accept_candidate(ctx, strategy, g_unit, outcome);
      if (gram_method &&
          outcome.residual_norm * outcome.residual_norm <= schur_warn_ceiling) {
        ctx.stats.warnings.push_back(
            {"schur_conditioning",
             "generator " + std::to_string(i) +
                 " accepted with near-degenerate Schur complement",
             outcome.residual_norm * outcome.residual_norm});
      }
    }
  }

  // Main loop over cursor pairs (l, m), m < l, processed one l-row at a
  // time: the row's commutators and a speculative check per candidate are
  // evaluated in parallel against the row-start state, then verdicts are
  // applied strictly in cursor order. A mid-row acceptance leaves
  // "dependent" speculations valid (the span only grew) but forces
  // recomputation of stale "independent" ones, so the result is identical
  // to the sequential run for every worker count.
  for (std::size_t l = 1; l < strategy.commutator_basis().size(); ++l) {
    check_deadline(config);
    const OperatorTuple& basis = strategy.commutator_basis();

    std::vector<Candidate> candidates(l);
    detail::parallel_for(l, config.threads, [&](std::size_t m) {
      const Operator h = commutator(basis[l], basis[m]);
      const double h_norm = norm(h);
      if (h_norm > tol) {
        candidates[m].h_unit = Complex{1.0 / h_norm, 0.0} * h;
        candidates[m].null = false;
      }
    });
    ctx.stats.commutators_evaluated += l;

    std::vector<CheckOutcome> speculative(l);
    const std::uint64_t version = ctx.accept_version;
    detail::parallel_for(l, config.threads, [&](std::size_t m) {
      if (!candidates[m].null) {
        speculative[m] = strategy.check(candidates[m].h_unit);
      }
    });

    for (std::size_t m = 0; m < l; ++m) {
      if (candidates[m].null) {
        continue;
      }
      CheckOutcome outcome;
      if (ctx.accept_version == version || !speculative[m].independent) {
        outcome = std::move(speculative[m]);
      } else {
        outcome = strategy.check(candidates[m].h_unit);
      }
      ++ctx.stats.independence_checks;
      note_borderline(ctx, outcome, tol,
                      "pair (" + std::to_string(l) + "," + std::to_string(m) +
                          ")");
      if (outcome.independent) {
        accept_candidate(ctx, strategy, candidates[m].h_unit, outcome);
        if (gram_method && outcome.residual_norm * outcome.residual_norm <=
                               schur_warn_ceiling) {
          ctx.stats.warnings.push_back(
              {"schur_conditioning",
               "pair (" + std::to_string(l) + "," + std::to_string(m) +
                   ") accepted with near-degenerate Schur complement",
               outcome.residual_norm * outcome.residual_norm});
        }
      }
    }
  }

  ClosureResult result;
  result.method = method;
  result.backend = backend;
  result.tolerance = tol;
  strategy.finalize(result);
  result.dimension = result.basis.size();
  ctx.stats.wall_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  result.stats = std::move(ctx.stats);
  return result;
}

// Shared backend of the tuple; nullopt when every generator is null.
std::optional<Backend>
validate_generators(std::span<const Operator> generators) {
  if (generators.empty()) {
    throw InvalidInputError("closure requires a non-empty generator tuple");
  }
  std::optional<Backend> backend;
  Eigen::Index dim = 0;
  for (const Operator& g : generators) {
    if (g.is_null()) {
      continue;
    }
    if (!backend) {
      backend = g.backend();
      dim = g.dim();
    } else if (g.backend() != *backend || g.dim() != dim) {
      throw InvalidInputError(
          "closure generators must share one backend and dimension");
    }
  }
  return backend;
}

} // namespace

ClosureResult close_standard(std::span<const Operator> generators,
                             const ClosureConfig& config) {
  const std::optional<Backend> backend = validate_generators(generators);
  if (backend && *backend != Backend::dense) {
    throw InvalidInputError("close_standard requires the dense backend; the "
                            "rank check vectorizes operators");
  }
  Eigen::Index dim = 0;
  for (const Operator& g : generators) {
    if (!g.is_null()) {
      dim = g.dim();
      break;
    }
  }
  RankStrategy strategy(dim, config.rank_tolerance);
  return run_engine(generators, strategy, Method::standard_rank, config,
                    Backend::dense);
}

ClosureResult close_matrix_inversion(std::span<const Operator> generators,
                                     const ClosureConfig& config) {
  const Backend backend =
      validate_generators(generators).value_or(Backend::pauli);
  MatrixInversionStrategy strategy(config.tolerance, config.conditioning_floor,
                                   config.gram_refresh_interval);
  return run_engine(generators, strategy, Method::matrix_inversion, config,
                    backend);
}

ClosureResult close_orthonormalization(std::span<const Operator> generators,
                                       const ClosureConfig& config,
                                       bool keep_original) {
  const Backend backend =
      validate_generators(generators).value_or(Backend::pauli);
  OrthonormStrategy strategy(config.tolerance, keep_original);
  return run_engine(generators, strategy,
                    keep_original ? Method::orthonorm
                                  : Method::orthonorm_dimonly,
                    config, backend);
}

ClosureResult run_closure(std::span<const Operator> generators, Method method,
                          const ClosureConfig& config) {
  switch (method) {
  case Method::standard_rank: {
    const std::optional<Backend> backend = validate_generators(generators);
    if (backend == Backend::pauli) {
      OperatorTuple dense;
      dense.reserve(generators.size());
      for (const Operator& g : generators) {
        dense.push_back(to_dense(g));
      }
      return close_standard(dense, config);
    }
    return close_standard(generators, config);
  }
  case Method::matrix_inversion:
    return close_matrix_inversion(generators, config);
  case Method::orthonorm:
    return close_orthonormalization(generators, config, true);
  case Method::orthonorm_dimonly:
    return close_orthonormalization(generators, config, false);
  }
  throw InvalidInputError("run_closure: unknown method");
}

std::string basis_listing(const ClosureResult& result) {
  std::string out;
  for (const Operator& op : result.basis) {
    out += format_operator(op);
    out += '\n';
  }
  return out;
}

} // namespace liecl
