#pragma once

// Matrix algebras M_n(A) and bimodules M_n(M) over a base pair, the entrywise
// lift of a base derivation, the component maps of a derivation on the matrix
// pair, the inner-plus-lifted decomposition, and the reblocking isomorphism
// M_{rk}(A) -> M_r(M_k(A)).
//
// Block indices are 0-based. The basis element e_k (x) E_ij of M_n(A) sits at
// flat index (i*n + j)*d + k: row-major over blocks, then base index.

#include "dermat/algebra.hpp"
#include "dermat/dercalc.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dermat {

/// Raised when an exact identity that must hold by construction fails.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::size_t block_index(std::size_t n, std::size_t base_dim, std::size_t i, std::size_t j, std::size_t k) {
  return (i * n + j) * base_dim + k;
}

/// x (x) E_ij: x placed in block (i, j), zero elsewhere.
inline Vector embed(std::size_t n, const Vector& x, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::invalid_argument("embed: block index out of range");
  const std::size_t d = x.size();
  Vector out = zero_vector(n * n * d);
  for (std::size_t k = 0; k < d; ++k) out[block_index(n, d, i, j, k)] = x[k];
  return out;
}

/// Block (i, j) of a flat M_n element over a base of dimension base_dim.
inline Vector entry(std::size_t n, std::size_t base_dim, const Vector& x, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::invalid_argument("entry: block index out of range");
  if (x.size() != n * n * base_dim) throw std::invalid_argument("entry: element has wrong dimension");
  return Vector(x.begin() + static_cast<std::ptrdiff_t>(block_index(n, base_dim, i, j, 0)),
                x.begin() + static_cast<std::ptrdiff_t>(block_index(n, base_dim, i, j, 0) + base_dim));
}

/// diag(x, ..., x).
inline Vector diagonal(std::size_t n, const Vector& x) {
  Vector out = zero_vector(n * n * x.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < x.size(); ++k) out[block_index(n, x.size(), i, i, k)] = x[k];
  return out;
}

struct MatrixAlgebra {
  Algebra base;
  std::size_t n = 0;
  Algebra as_algebra;

  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return block_index(n, base.dim(), i, j, k);
  }
};

struct MatrixBimodule {
  Bimodule base;
  std::size_t n = 0;
  Bimodule as_bimodule;
};

inline void require_matrix_size(std::size_t n) {
  if (n < 2) throw std::invalid_argument("matrix size must be at least 2, got " + std::to_string(n));
}

/// (e_k (x) E_ij)(e_l (x) E_jm) = (e_k e_l) (x) E_im.
inline MatrixAlgebra matrix_algebra(const Algebra& a, std::size_t n) {
  require_matrix_size(n);
  const std::size_t d = a.dim();
  std::vector<StructureTriple> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l)
            for (const auto& [t, c] : a.product(k, l))
              triples.push_back({block_index(n, d, i, j, k), block_index(n, d, j, m, l), block_index(n, d, i, m, t), c});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < d; ++k)
        labels.push_back(a.labels()[k] + "@" + std::to_string(i + 1) + std::to_string(j + 1));
  Vector unit = zero_vector(n * n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) unit[block_index(n, d, i, i, k)] = a.unit()[k];
  Algebra mat = Algebra::from_triples("M" + std::to_string(n) + "(" + a.name() + ")", n * n * d, std::move(labels),
                                      triples, std::move(unit));
  return {a, n, std::move(mat)};
}

/// (a (x) E_ij).(f (x) E_jl) = (a.f) (x) E_il and (f (x) E_ij).(a (x) E_jl) = (f.a) (x) E_il.
inline MatrixBimodule matrix_bimodule(const Bimodule& mb, std::size_t n) {
  require_matrix_size(n);
  const std::size_t d = mb.algebra_dim(), m = mb.dim();
  const std::size_t big_d = n * n * d, big_m = n * n * m;
  std::vector<Rational> left(big_d * big_m * big_m, Rational(0)), right(big_m * big_d * big_m, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t p = 0; p < m; ++p) {
            const std::size_t a_ij = block_index(n, d, i, j, k), f_jl = block_index(n, m, j, l, p);
            for (const auto& [q, c] : mb.left_terms(k, p))
              left[(a_ij * big_m + f_jl) * big_m + block_index(n, m, i, l, q)] += c;
            const std::size_t f_ij = block_index(n, m, i, j, p), a_jl = block_index(n, d, j, l, k);
            for (const auto& [q, c] : mb.right_terms(p, k))
              right[(f_ij * big_d + a_jl) * big_m + block_index(n, m, i, l, q)] += c;
          }
  Bimodule mat("M" + std::to_string(n) + "(" + mb.name() + ")", big_m, big_d, std::move(left), std::move(right));
  return {mb, n, std::move(mat)};
}

struct MatrixPair {
  MatrixAlgebra algebra;
  MatrixBimodule module;

  [[nodiscard]] std::size_t n() const { return algebra.n; }
  [[nodiscard]] const Algebra& base_algebra() const { return algebra.base; }
  [[nodiscard]] const Bimodule& base_module() const { return module.base; }
  [[nodiscard]] const Algebra& big_algebra() const { return algebra.as_algebra; }
  [[nodiscard]] const Bimodule& big_module() const { return module.as_bimodule; }
};

inline MatrixPair matrix_pair(const Algebra& a, const Bimodule& m, std::size_t n) {
  if (m.algebra_dim() != a.dim()) throw std::invalid_argument("matrix_pair: module is over a different algebra");
  return {matrix_algebra(a, n), matrix_bimodule(m, n)};
}

inline MatrixPair matrix_pair(const AlgebraPair& p, std::size_t n) { return matrix_pair(p.algebra, p.module, n); }

/// Entrywise lift: (a_ij) -> (delta(a_ij)).
inline Derivation lift(const MatrixPair& pair, const Derivation& delta) {
  require_certified(delta, "lift");
  const std::size_t n = pair.n(), d = pair.base_algebra().dim(), m = pair.base_module().dim();
  if (delta.map().algebra_dim() != d || delta.map().module_dim() != m)
    throw std::invalid_argument("lift: derivation shape does not match the base pair");
  Matrix big(n * n * m, n * n * d);
  const Matrix& small = delta.map().matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < m; ++q)
        for (std::size_t k = 0; k < d; ++k) big(block_index(n, m, i, j, q), block_index(n, d, i, j, k)) = small(q, k);
  return Derivation::certify_or_throw(pair.big_algebra(), pair.big_module(), LinearMap(std::move(big)));
}

/// a -> block (i, j) of D(a (x) E_rs), as a map from the base algebra to the base module.
inline LinearMap component(const MatrixPair& pair, const LinearMap& big, std::size_t i, std::size_t j, std::size_t r,
                           std::size_t s) {
  const std::size_t n = pair.n(), d = pair.base_algebra().dim(), m = pair.base_module().dim();
  if (i >= n || j >= n || r >= n || s >= n) throw std::invalid_argument("component: index out of range");
  if (big.algebra_dim() != n * n * d || big.module_dim() != n * n * m)
    throw std::invalid_argument("component: map shape does not match the matrix pair");
  Matrix out(m, d);
  for (std::size_t q = 0; q < m; ++q)
    for (std::size_t k = 0; k < d; ++k) out(q, k) = big.matrix()(block_index(n, m, i, j, q), block_index(n, d, r, s, k));
  return LinearMap(std::move(out));
}

inline LinearMap component(const MatrixPair& pair, const Derivation& big, std::size_t i, std::size_t j, std::size_t r,
                           std::size_t s) {
  require_certified(big, "component");
  return component(pair, big.map(), i, j, r, s);
}

/// D = D_B + lift(delta) with B_ij = [D(1 (x) E_j1)]_i1 and delta = [D(. (x) E_11)]_11.
struct Decomposition {
  Vector B;  // element of M_n(M)
  Derivation delta;
  Derivation inner_part;
  Derivation lifted_part;
};

inline Decomposition decompose(const MatrixPair& pair, const Derivation& D) {
  require_certified(D, "decompose");
  const std::size_t n = pair.n(), m = pair.base_module().dim();
  const Vector& unit = pair.base_algebra().unit();

  Vector B = zero_vector(n * n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector bij = component(pair, D, i, 0, j, 0)(unit);
      for (std::size_t q = 0; q < m; ++q) B[block_index(n, m, i, j, q)] = bij[q];
    }

  auto delta = Derivation::certify(pair.base_algebra(), pair.base_module(), component(pair, D, 0, 0, 0, 0));
  if (!delta) throw InvariantFailure("decompose: the (1,1) corner of the input is not a derivation");

  Derivation inner_part = inner_derivation(pair.big_algebra(), pair.big_module(), B);
  Derivation lifted_part = lift(pair, *delta);
  if (!(inner_part.map() + lifted_part.map() == D.map()))
    throw InvariantFailure("decompose: recomposition D_B + lift(delta) differs from the input");
  return {std::move(B), std::move(*delta), std::move(inner_part), std::move(lifted_part)};
}

// ---------------------------------------------------------------------------
// Component identities of a derivation on the matrix pair. For every
// i, j, r, s, m and base basis element a (1 denotes the base unit):
//   (i)   D^{ij}_{rs} = 0                                  if i != r and j != s
//   (ii)  D^{ij}_{rj}(a) = D^{im}_{rm}(a) = D^{im}_{rm}(1) a  if i != r
//   (iii) D^{ij}_{is}(a) = D^{mj}_{ms}(a) = a D^{mj}_{ms}(1)  if j != s
//   (iv)  D^{im}_{jm}(1) = -D^{mj}_{mi}(1)
//   (v)   D^{ij}_{ij}(a) = D^{im}_{im}(1) a - a D^{jm}_{jm}(1) + D^{mm}_{mm}(a)

struct IdentityResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  /// First failing tuple, with the index names in `tuple_names`.
  std::vector<std::size_t> counterexample;
  std::string tuple_names;
};

struct Lemma22Report {
  std::array<IdentityResult, 5> items;
  [[nodiscard]] bool all_passed() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }
};

inline Lemma22Report verify_lemma22(const MatrixPair& pair, const LinearMap& D) {
  const std::size_t n = pair.n(), d = pair.base_algebra().dim();
  const Algebra& A = pair.base_algebra();
  const Bimodule& M = pair.base_module();
  std::vector<LinearMap> comps(n * n * n * n);
  auto C = [&](std::size_t i, std::size_t j, std::size_t r, std::size_t s) -> const LinearMap& {
    return comps[((i * n + j) * n + r) * n + s];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) comps[((i * n + j) * n + r) * n + s] = component(pair, D, i, j, r, s);
  const Vector& one = A.unit();
  auto right = [&](const Vector& f, const Vector& a) { return act(M, Side::right, a, f); };
  auto left = [&](const Vector& a, const Vector& f) { return act(M, Side::left, a, f); };

  Lemma22Report report;
  report.items[0] = {"(i) D^{ij}_{rs} = 0 for i!=r, j!=s", true, 0, {}, "i,j,r,s"};
  report.items[1] = {"(ii) D^{ij}_{rj}(a) = D^{im}_{rm}(a) = D^{im}_{rm}(1)a for i!=r", true, 0, {}, "i,j,r,m,a"};
  report.items[2] = {"(iii) D^{ij}_{is}(a) = D^{mj}_{ms}(a) = aD^{mj}_{ms}(1) for j!=s", true, 0, {}, "i,j,s,m,a"};
  report.items[3] = {"(iv) D^{im}_{jm}(1) = -D^{mj}_{mi}(1)", true, 0, {}, "i,j,m"};
  report.items[4] = {"(v) D^{ij}_{ij}(a) = D^{im}_{im}(1)a - aD^{jm}_{jm}(1) + D^m(a)", true, 0, {}, "i,j,m,a"};
  auto record = [](IdentityResult& item, bool ok, std::vector<std::size_t> tuple) {
    ++item.checked;
    if (!ok && item.passed) {
      item.passed = false;
      item.counterexample = std::move(tuple);
    }
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          if (i != r && j != s) record(report.items[0], C(i, j, r, s).is_zero(), {i, j, r, s});

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < d; ++k) {
          const Vector a = unit_vector(d, k);
          for (std::size_t r = 0; r < n; ++r) {
            if (i == r) continue;
            const Vector x = C(i, j, r, j)(a), y = C(i, m, r, m)(a), z = right(C(i, m, r, m)(one), a);
            record(report.items[1], x == y && y == z, {i, j, r, m, k});
          }
          for (std::size_t s = 0; s < n; ++s) {
            if (j == s) continue;
            const Vector x = C(i, j, i, s)(a), y = C(m, j, m, s)(a), z = left(a, C(m, j, m, s)(one));
            record(report.items[2], x == y && y == z, {i, j, s, m, k});
          }
          const Vector lhs = C(i, j, i, j)(a);
          const Vector rhs = right(C(i, m, i, m)(one), a) - left(a, C(j, m, j, m)(one)) + C(m, m, m, m)(a);
          record(report.items[4], lhs == rhs, {i, j, m, k});
        }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const Vector x = C(i, m, j, m)(one), y = C(m, j, m, i)(one);
        record(report.items[3], is_zero(x + y), {i, j, m});
      }
  return report;
}

inline Lemma22Report verify_lemma22(const MatrixPair& pair, const Derivation& D) {
  return verify_lemma22(pair, D.map());
}

// ---------------------------------------------------------------------------
// Reblocking M_{rk}(A) -> M_r(M_k(A)):
//   e (x) E_{ik+p, jk+q}  ->  (e (x) E_pq) (x) E_ij.

/// forward[src] = target flat index, over a base of dimension base_dim.
inline std::vector<std::size_t> reblock_permutation(std::size_t base_dim, std::size_t r, std::size_t k) {
  const std::size_t n = r * k, d = base_dim, inner_dim = k * k * d;
  std::vector<std::size_t> forward(n * n * d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
          for (std::size_t e = 0; e < d; ++e)
            forward[block_index(n, d, i * k + p, j * k + q, e)] =
                block_index(r, inner_dim, i, j, block_index(k, d, p, q, e));
  return forward;
}

inline Vector permute(const std::vector<std::size_t>& forward, const Vector& x) {
  if (x.size() != forward.size()) throw std::invalid_argument("permute: dimension mismatch");
  Vector y(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) y[forward[s]] = x[s];
  return y;
}

inline Vector permute_back(const std::vector<std::size_t>& forward, const Vector& y) {
  if (y.size() != forward.size()) throw std::invalid_argument("permute_back: dimension mismatch");
  Vector x(y.size());
  for (std::size_t s = 0; s < y.size(); ++s) x[s] = y[forward[s]];
  return x;
}

struct ReblockIso {
  std::size_t r = 0, k = 0;
  MatrixAlgebra source;  // M_{rk}(A)
  MatrixAlgebra target;  // M_r(M_k(A))
  std::vector<std::size_t> forward;

  [[nodiscard]] Vector operator()(const Vector& x) const { return permute(forward, x); }
  [[nodiscard]] Vector inverse(const Vector& y) const { return permute_back(forward, y); }
};

inline ReblockIso reblock_iso(const Algebra& a, std::size_t r, std::size_t k) {
  if (r < 2 || k < 2) throw std::invalid_argument("reblock_iso: both block sizes must be at least 2");
  ReblockIso iso;
  iso.r = r;
  iso.k = k;
  iso.source = matrix_algebra(a, r * k);
  iso.target = matrix_algebra(matrix_algebra(a, k).as_algebra, r);
  iso.forward = reblock_permutation(a.dim(), r, k);
  return iso;
}

/// phi_M o D o phi_A^{-1} for block permutations of the algebra and module sides.
inline LinearMap transport(const std::vector<std::size_t>& algebra_forward,
                           const std::vector<std::size_t>& module_forward, const LinearMap& D) {
  if (D.algebra_dim() != algebra_forward.size() || D.module_dim() != module_forward.size())
    throw std::invalid_argument("transport: map shape does not match the permutations");
  Matrix out(D.module_dim(), D.algebra_dim());
  for (std::size_t q = 0; q < D.module_dim(); ++q)
    for (std::size_t c = 0; c < D.algebra_dim(); ++c) out(module_forward[q], algebra_forward[c]) = D.matrix()(q, c);
  return LinearMap(std::move(out));
}

}  // namespace dermat
