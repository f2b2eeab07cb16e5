#pragma once

// 2-local derivations on a matrix pair, represented as deterministic oracles.
// A 2-local derivation is only ever observed pointwise: this header can test
// pairwise interpolation on samples and reconstruct a derivation from the
// oracle's values at the canonical points S and T.

#include "dermat/dercalc.hpp"
#include "dermat/exactlin.hpp"
#include "dermat/matext.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dermat {

class TwoLocalOracle {
 public:
  using Eval = std::function<Vector(const Vector&)>;

  TwoLocalOracle(std::size_t input_dim, std::size_t output_dim, Eval eval)
      : input_dim_(input_dim), output_dim_(output_dim), eval_(std::move(eval)) {}

  Vector evaluate(const Vector& x) {
    if (x.size() != input_dim_) throw std::invalid_argument("oracle: input has wrong dimension");
    Vector y = eval_(x);
    if (y.size() != output_dim_) throw std::logic_error("oracle: output has wrong dimension");
    log_.emplace_back(x, y);
    return y;
  }
  Vector operator()(const Vector& x) { return evaluate(x); }

  [[nodiscard]] std::size_t input_dim() const { return input_dim_; }
  [[nodiscard]] std::size_t output_dim() const { return output_dim_; }
  [[nodiscard]] const std::vector<std::pair<Vector, Vector>>& query_log() const { return log_; }
  [[nodiscard]] std::size_t query_count() const { return log_.size(); }

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  Eval eval_;
  std::vector<std::pair<Vector, Vector>> log_;
};

inline TwoLocalOracle wrap_derivation(const Derivation& D) {
  require_certified(D, "wrap_derivation");
  LinearMap f = D.map();
  const std::size_t in = f.algebra_dim(), out = f.module_dim();
  return TwoLocalOracle(in, out, [f = std::move(f)](const Vector& x) { return f(x); });
}

/// Oracle for an arbitrary linear map; lets callers feed non-derivations to the
/// reconstruction and watch it fail.
inline TwoLocalOracle linear_oracle(LinearMap f) {
  const std::size_t in = f.algebra_dim(), out = f.module_dim();
  return TwoLocalOracle(in, out, [f = std::move(f)](const Vector& x) { return f(x); });
}

enum class Perturbation { quadratic_block, sign_flip_offdiag };

inline Perturbation parse_perturbation(std::string_view name) {
  if (name == "quadratic_block") return Perturbation::quadratic_block;
  if (name == "sign_flip_offdiag") return Perturbation::sign_flip_offdiag;
  throw std::invalid_argument("unknown perturbation kind '" + std::string(name) + "'");
}

inline std::string_view to_string(Perturbation kind) {
  return kind == Perturbation::quadratic_block ? "quadratic_block" : "sign_flip_offdiag";
}

/// D plus a nonlinear distortion keyed on t, the first base coordinate of the
/// (1,2) block of x:
///   quadratic_block    adds t^2 to the first coordinate of block (1,2)
///   sign_flip_offdiag  negates every off-diagonal block of D(x) when t < 0
/// Both vanish at x = 0.
inline TwoLocalOracle perturbed_oracle(const MatrixPair& pair, const Derivation& D, Perturbation kind) {
  require_certified(D, "perturbed_oracle");
  const std::size_t n = pair.n(), d = pair.base_algebra().dim(), m = pair.base_module().dim();
  LinearMap f = D.map();
  const std::size_t in = f.algebra_dim(), out = f.module_dim();
  return TwoLocalOracle(in, out, [f = std::move(f), n, d, m, kind](const Vector& x) {
    Vector y = f(x);
    const Rational t = x[block_index(n, d, 0, 1, 0)];
    if (kind == Perturbation::quadratic_block) {
      y[block_index(n, m, 0, 1, 0)] += t * t;
    } else if (sgn(t) < 0) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j)
            for (std::size_t q = 0; q < m; ++q) y[block_index(n, m, i, j, q)] = -y[block_index(n, m, i, j, q)];
    }
    return y;
  });
}

// ---------------------------------------------------------------------------

struct WitnessReport {
  Vector x, y;
  std::optional<Derivation> witness;
  bool feasible = false;
};

namespace detail {

// Stacks the conditions (sum_t c_t B_t)(p) = value over the given points.
inline std::optional<Vector> interpolate(const DerivationSpace& space,
                                         const std::vector<std::pair<Vector, Vector>>& conditions) {
  const std::size_t out = space.module->dim();
  Matrix system(conditions.size() * out, space.dim());
  Vector rhs;
  rhs.reserve(conditions.size() * out);
  for (std::size_t c = 0; c < conditions.size(); ++c) {
    const auto& [point, value] = conditions[c];
    if (point.size() != space.algebra->dim() || value.size() != out)
      throw std::invalid_argument("pair_witness: point or value has wrong dimension");
    for (std::size_t t = 0; t < space.dim(); ++t) {
      const Vector img = space.basis[t](point);
      for (std::size_t q = 0; q < out; ++q) system(c * out + q, t) = img[q];
    }
    rhs.insert(rhs.end(), value.begin(), value.end());
  }
  return solve(system, rhs);
}

}  // namespace detail

/// Is there a derivation in `space` sending x to dx and y to dy? The witness is
/// the free-variables-zero combination of the space basis.
inline WitnessReport pair_witness(const DerivationSpace& space, const Vector& x, const Vector& y, const Vector& dx,
                                  const Vector& dy) {
  WitnessReport report{x, y, std::nullopt, false};
  if (auto coeffs = detail::interpolate(space, {{x, dx}, {y, dy}})) {
    report.witness = space.combination(*coeffs);
    report.feasible = true;
  }
  return report;
}

/// S = sum_i i * (1 (x) E_ii) and T = sum_i 1 (x) E_{i,i+1} (1-based i).
inline std::pair<Vector, Vector> canonical_S_T(const MatrixAlgebra& matalg) {
  const std::size_t n = matalg.n;
  require_matrix_size(n);
  const Vector& one = matalg.base.unit();
  Vector S = zero_vector(matalg.as_algebra.dim()), T = S;
  for (std::size_t i = 0; i < n; ++i) S = S + Rational(static_cast<long>(i + 1)) * embed(n, one, i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) T = T + embed(n, one, i, i + 1);
  return {std::move(S), std::move(T)};
}

/// No derivation interpolates the oracle on the recorded points.
class NotTwoLocal : public std::runtime_error {
 public:
  NotTwoLocal(const std::string& what, Vector x, Vector y)
      : std::runtime_error(what), x_(std::move(x)), y_(std::move(y)) {}
  [[nodiscard]] const Vector& x() const { return x_; }
  [[nodiscard]] const Vector& y() const { return y_; }

 private:
  Vector x_, y_;
};

struct ReconstructOptions {
  /// After the S/T step, additionally query diag(e_k) for each base basis
  /// element when derivations vanishing at S and T exist. Those derivations
  /// are the lifts D_{diag(w)} + lift(delta), which S and T cannot see.
  bool complete_lift = false;
};

/// Queries the oracle at S and T and returns the derivation interpolating both
/// values. Agreement elsewhere is not checked here; see verify_agreement.
inline Derivation reconstruct(TwoLocalOracle& oracle, const DerivationSpace& space, const MatrixAlgebra& matalg,
                              ReconstructOptions options = {}) {
  if (oracle.input_dim() != space.algebra->dim() || oracle.output_dim() != space.module->dim())
    throw std::invalid_argument("reconstruct: oracle shape does not match the derivation space");
  auto [S, T] = canonical_S_T(matalg);
  const Vector dS = oracle(S);
  const Vector dT = oracle(T);
  WitnessReport st = pair_witness(space, S, T, dS, dT);
  if (!st.feasible) throw NotTwoLocal("no derivation matches the oracle at (S, T)", S, T);
  if (!options.complete_lift) return std::move(*st.witness);

  // Derivations in the space that vanish at S and T.
  const std::size_t out = space.module->dim();
  Matrix at_st(2 * out, space.dim());
  for (std::size_t t = 0; t < space.dim(); ++t) {
    const Vector a = space.basis[t](S), b = space.basis[t](T);
    for (std::size_t q = 0; q < out; ++q) {
      at_st(q, t) = a[q];
      at_st(out + q, t) = b[q];
    }
  }
  if (nullspace(at_st).dim() == 0) return std::move(*st.witness);

  std::vector<std::pair<Vector, Vector>> conditions = {{S, dS}, {T, dT}};
  const std::size_t n = matalg.n, d = matalg.base.dim();
  for (std::size_t k = 0; k < d; ++k) {
    Vector probe = diagonal(n, unit_vector(d, k));
    Vector value = oracle(probe);
    conditions.emplace_back(std::move(probe), std::move(value));
  }
  auto coeffs = detail::interpolate(space, conditions);
  if (!coeffs)
    throw NotTwoLocal("no derivation matches the oracle at S, T and the diagonal probes", S, conditions.back().first);
  return space.combination(*coeffs);
}

struct AgreementReport {
  std::size_t checked = 0;
  std::size_t agreeing = 0;
  std::optional<Vector> first_disagreement;
  [[nodiscard]] bool all_agree() const { return checked == agreeing; }
};

inline AgreementReport verify_agreement(TwoLocalOracle& oracle, const Derivation& D, const std::vector<Vector>& points) {
  AgreementReport report;
  for (const auto& x : points) {
    ++report.checked;
    if (oracle(x) == D(x))
      ++report.agreeing;
    else if (!report.first_disagreement)
      report.first_disagreement = x;
  }
  return report;
}

struct TwoLocalReport {
  std::size_t checked = 0;
  /// Indices into the supplied pair list.
  std::vector<std::size_t> infeasible;
  [[nodiscard]] bool consistent() const { return infeasible.empty(); }
};

/// Runs pair_witness on every supplied pair. An empty report means the oracle is
/// consistent with 2-locality on these pairs, nothing more.
inline TwoLocalReport verify_2local_property(TwoLocalOracle& oracle, const DerivationSpace& space,
                                             const std::vector<std::pair<Vector, Vector>>& pairs) {
  TwoLocalReport report;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto& [x, y] = pairs[t];
    const Vector dx = oracle(x), dy = oracle(y);
    ++report.checked;
    if (!pair_witness(space, x, y, dx, dy).feasible) report.infeasible.push_back(t);
  }
  return report;
}

struct CompatReport {
  std::size_t checked = 0;
  /// Indices into the supplied sample.
  std::vector<std::size_t> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks oracle(e a) = e . oracle(a) on each sample element. `e` must be an
/// idempotent that is central in the algebra and commutes with the module.
inline CompatReport central_idempotent_compat(TwoLocalOracle& oracle, const Algebra& a, const Bimodule& m,
                                              const Vector& e, const std::vector<Vector>& sample) {
  if (e.size() != a.dim()) throw std::invalid_argument("central_idempotent_compat: e has wrong dimension");
  if (multiply(a, e, e) != e) throw std::invalid_argument("central_idempotent_compat: e is not idempotent");
  for (std::size_t z = 0; z < a.dim(); ++z) {
    const Vector ez = unit_vector(a.dim(), z);
    if (multiply(a, e, ez) != multiply(a, ez, e))
      throw std::invalid_argument("central_idempotent_compat: e is not central");
  }
  for (std::size_t p = 0; p < m.dim(); ++p) {
    const Vector f = unit_vector(m.dim(), p);
    if (act(m, Side::left, e, f) != act(m, Side::right, e, f))
      throw std::invalid_argument("central_idempotent_compat: e does not commute with the module");
  }
  CompatReport report;
  for (std::size_t t = 0; t < sample.size(); ++t) {
    ++report.checked;
    if (oracle(multiply(a, e, sample[t])) != act(m, Side::left, e, oracle(sample[t]))) report.violations.push_back(t);
  }
  return report;
}

}  // namespace dermat
