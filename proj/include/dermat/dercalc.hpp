#pragma once

// Derivation, Jordan-derivation and inner-derivation spaces of an
// (algebra, bimodule) pair as exact linear problems.
//
// A linear map f: A -> M is stored as an m x d matrix whose column j is
// f(e_j). Flattened coordinates are row-major: index q*d + j holds the q-th
// module coordinate of f(e_j).

#include "dermat/algebra.hpp"
#include "dermat/exactlin.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dermat {

class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(std::size_t algebra_dim, std::size_t module_dim)
      : algebra_dim_(algebra_dim), module_dim_(module_dim), matrix_(module_dim, algebra_dim) {}
  explicit LinearMap(Matrix m) : algebra_dim_(m.cols()), module_dim_(m.rows()), matrix_(std::move(m)) {}

  static LinearMap from_images(const std::vector<Vector>& images, std::size_t module_dim) {
    return LinearMap(Matrix::from_columns(images, module_dim));
  }
  static LinearMap unflatten(const Vector& flat, std::size_t algebra_dim, std::size_t module_dim) {
    if (flat.size() != algebra_dim * module_dim) throw std::invalid_argument("unflatten: wrong coordinate count");
    LinearMap f(algebra_dim, module_dim);
    for (std::size_t q = 0; q < module_dim; ++q)
      for (std::size_t j = 0; j < algebra_dim; ++j) f.matrix_(q, j) = flat[q * algebra_dim + j];
    return f;
  }

  [[nodiscard]] std::size_t algebra_dim() const { return algebra_dim_; }
  [[nodiscard]] std::size_t module_dim() const { return module_dim_; }
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] Vector image(std::size_t j) const { return matrix_.column(j); }
  [[nodiscard]] Vector operator()(const Vector& x) const { return matrix_.apply(x); }
  [[nodiscard]] Vector flatten() const { return matrix_.entries(); }
  [[nodiscard]] bool is_zero() const { return matrix_.is_zero(); }

  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.matrix_ == b.matrix_; }
  friend LinearMap operator+(const LinearMap& a, const LinearMap& b) { return LinearMap(a.matrix_ + b.matrix_); }
  friend LinearMap operator-(const LinearMap& a, const LinearMap& b) { return LinearMap(a.matrix_ - b.matrix_); }
  friend LinearMap operator*(const Rational& s, const LinearMap& f) { return LinearMap(s * f.matrix_); }

 private:
  std::size_t algebra_dim_ = 0;
  std::size_t module_dim_ = 0;
  Matrix matrix_;
};

/// First basis pair (i, j) where f(e_i e_j) != f(e_i) e_j + e_i f(e_j).
inline std::optional<std::pair<std::size_t, std::size_t>> leibniz_violation(const Algebra& a, const Bimodule& m,
                                                                            const LinearMap& f) {
  const std::size_t d = a.dim(), n = m.dim();
  if (f.algebra_dim() != d || f.module_dim() != n || m.algebra_dim() != d)
    throw std::invalid_argument("leibniz_check: map shape does not match the algebra/module pair");
  const Matrix& x = f.matrix();
  Vector acc(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (auto& v : acc) v = 0;
      for (const auto& [k, c] : a.product(i, j))
        for (std::size_t q = 0; q < n; ++q)
          if (sgn(x(q, k)) != 0) acc[q] += c * x(q, k);
      for (std::size_t p = 0; p < n; ++p) {
        if (sgn(x(p, i)) != 0)
          for (const auto& [q, r] : m.right_terms(p, j)) acc[q] -= x(p, i) * r;
        if (sgn(x(p, j)) != 0)
          for (const auto& [q, l] : m.left_terms(i, p)) acc[q] -= l * x(p, j);
      }
      if (!is_zero(acc)) return std::make_pair(i, j);
    }
  return std::nullopt;
}

inline bool leibniz_check(const Algebra& a, const Bimodule& m, const LinearMap& f) {
  return !leibniz_violation(a, m, f).has_value();
}

/// A linear map that has passed leibniz_check. `forge` skips the check and
/// exists only to build negative controls.
class Derivation {
 public:
  static std::optional<Derivation> certify(const Algebra& a, const Bimodule& m, LinearMap f) {
    if (!leibniz_check(a, m, f)) return std::nullopt;
    return Derivation(std::move(f), true);
  }
  static Derivation certify_or_throw(const Algebra& a, const Bimodule& m, LinearMap f) {
    if (auto bad = leibniz_violation(a, m, f))
      throw std::invalid_argument("map is not a derivation: Leibniz rule fails at basis pair (" +
                                  std::to_string(bad->first) + "," + std::to_string(bad->second) + ")");
    return Derivation(std::move(f), true);
  }
  static Derivation forge(LinearMap f) { return Derivation(std::move(f), true); }

  [[nodiscard]] const LinearMap& map() const { return map_; }
  [[nodiscard]] bool certified() const { return certified_; }
  [[nodiscard]] Vector operator()(const Vector& x) const { return map_(x); }

 private:
  Derivation(LinearMap f, bool certified) : map_(std::move(f)), certified_(certified) {}

  LinearMap map_;
  bool certified_ = false;
};

inline void require_certified(const Derivation& d, const char* where) {
  if (!d.certified()) throw std::invalid_argument(std::string(where) + ": derivation is not certified");
}

struct DerivationSpace {
  std::shared_ptr<const Algebra> algebra;
  std::shared_ptr<const Bimodule> module;
  std::vector<Derivation> basis;
  Subspace as_subspace;

  [[nodiscard]] std::size_t dim() const { return basis.size(); }

  /// sum_t coeffs[t] * basis[t], re-certified against the pair.
  [[nodiscard]] Derivation combination(const Vector& coeffs) const {
    if (coeffs.size() != basis.size()) throw std::invalid_argument("combination: coefficient count mismatch");
    LinearMap f(algebra->dim(), module->dim());
    for (std::size_t t = 0; t < basis.size(); ++t)
      if (!is_zero(coeffs[t])) f = f + coeffs[t] * basis[t].map();
    return Derivation::certify_or_throw(*algebra, *module, std::move(f));
  }
};

namespace detail {

inline SparseRow canonical_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseRow out;
  for (auto& [c, v] : row) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, std::move(v));
  }
  std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
  return out;
}

// Row (i, j, q) of the Leibniz system over unknowns X[p][k] at flat p*d + k:
//   sum_k c[i][j][k] X[q][k] - sum_p X[p][i] R[p][j][q] - sum_p L[i][p][q] X[p][j].
// Rows are produced lexicographically in (i, j, q).
template <class Sink>
void leibniz_rows(const Algebra& a, const Bimodule& m, std::size_t i, std::size_t j, Sink&& sink) {
  const std::size_t d = a.dim(), n = m.dim();
  std::vector<SparseRow> rows(n);
  for (const auto& [k, c] : a.product(i, j))
    for (std::size_t q = 0; q < n; ++q) rows[q].emplace_back(q * d + k, c);
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& [q, r] : m.right_terms(p, j)) rows[q].emplace_back(p * d + i, -r);
    for (const auto& [q, l] : m.left_terms(i, p)) rows[q].emplace_back(p * d + j, -l);
  }
  for (auto& row : rows) sink(canonical_row(std::move(row)));
}

inline DerivationSpace space_from_builder(const Algebra& a, const Bimodule& m, const EchelonBuilder& system) {
  DerivationSpace space;
  space.algebra = std::make_shared<const Algebra>(a);
  space.module = std::make_shared<const Bimodule>(m);
  space.as_subspace = Subspace::span(system.cols(), kernel_basis(system));  // RREF basis
  for (const auto& v : space.as_subspace.basis())
    space.basis.push_back(Derivation::certify_or_throw(a, m, LinearMap::unflatten(v, a.dim(), m.dim())));
  return space;
}

}  // namespace detail

/// All derivations A -> M: the nullspace of the Leibniz constraints on basis pairs.
inline DerivationSpace derivation_space(const Algebra& a, const Bimodule& m) {
  if (m.algebra_dim() != a.dim()) throw std::invalid_argument("derivation_space: dimension mismatch");
  EchelonBuilder system(a.dim() * m.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      detail::leibniz_rows(a, m, i, j, [&](SparseRow row) { system.insert(row); });
  return detail::space_from_builder(a, m, system);
}

/// Jordan derivations, via the polarized identity on basis pairs i <= j:
///   f(e_i e_j + e_j e_i) = f(e_i) e_j + e_i f(e_j) + f(e_j) e_i + e_j f(e_i).
/// Basis maps are certified only if they also satisfy Leibniz; the returned
/// `as_subspace` is the full Jordan space either way.
struct JordanSpace {
  std::vector<LinearMap> basis;
  Subspace as_subspace;
  [[nodiscard]] std::size_t dim() const { return basis.size(); }
};

inline JordanSpace jordan_derivation_space(const Algebra& a, const Bimodule& m) {
  if (m.algebra_dim() != a.dim()) throw std::invalid_argument("jordan_derivation_space: dimension mismatch");
  EchelonBuilder system(a.dim() * m.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      std::vector<SparseRow> ij, ji;
      detail::leibniz_rows(a, m, i, j, [&](SparseRow row) { ij.push_back(std::move(row)); });
      detail::leibniz_rows(a, m, j, i, [&](SparseRow row) { ji.push_back(std::move(row)); });
      for (std::size_t q = 0; q < ij.size(); ++q) {
        SparseRow sum = ij[q];
        sum.insert(sum.end(), ji[q].begin(), ji[q].end());
        system.insert(detail::canonical_row(std::move(sum)));
      }
    }
  JordanSpace space;
  space.as_subspace = Subspace::span(system.cols(), kernel_basis(system));  // RREF basis
  for (const auto& v : space.as_subspace.basis()) space.basis.push_back(LinearMap::unflatten(v, a.dim(), m.dim()));
  return space;
}

/// e_j -> w.e_j - e_j.w (right action minus left action).
inline LinearMap inner_map(const Algebra& a, const Bimodule& m, const Vector& w) {
  if (w.size() != m.dim()) throw std::invalid_argument("inner_derivation: element does not belong to the module");
  std::vector<Vector> images;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vector ej = unit_vector(a.dim(), j);
    images.push_back(act(m, Side::right, ej, w) - act(m, Side::left, ej, w));
  }
  return LinearMap::from_images(images, m.dim());
}

inline Derivation inner_derivation(const Algebra& a, const Bimodule& m, const Vector& w) {
  return Derivation::certify_or_throw(a, m, inner_map(a, m, w));
}

struct InnerSpace {
  Subspace image;   // inner derivations, flattened
  Subspace kernel;  // {w : w.e_j = e_j.w for all j}
};

namespace detail {

// Column p is flatten(inner derivation by the p-th module basis vector).
inline Matrix inner_system(const Algebra& a, const Bimodule& m) {
  std::vector<Vector> cols;
  for (std::size_t p = 0; p < m.dim(); ++p) cols.push_back(inner_map(a, m, unit_vector(m.dim(), p)).flatten());
  return Matrix::from_columns(cols, a.dim() * m.dim());
}

}  // namespace detail

inline InnerSpace inner_space(const Algebra& a, const Bimodule& m) {
  const Matrix sys = detail::inner_system(a, m);
  std::vector<Vector> cols;
  for (std::size_t p = 0; p < sys.cols(); ++p) cols.push_back(sys.column(p));
  return {Subspace::span(sys.rows(), cols), nullspace(sys)};
}

/// Witness w with inner_derivation(w) = d (free variables zero), if d is inner.
inline std::optional<Vector> is_inner(const Algebra& a, const Bimodule& m, const Derivation& d) {
  require_certified(d, "is_inner");
  if (d.map().algebra_dim() != a.dim() || d.map().module_dim() != m.dim())
    throw std::invalid_argument("is_inner: derivation shape does not match the pair");
  return solve(detail::inner_system(a, m), d.map().flatten());
}

struct CohomologySummary {
  std::size_t der = 0;
  std::size_t inner = 0;
  std::size_t h1 = 0;
};

inline std::size_t h1_dim(const DerivationSpace& der, const InnerSpace& inner) {
  return quotient_dim(inner.image, der.as_subspace);
}

inline std::size_t h1_dim(const Algebra& a, const Bimodule& m) {
  return h1_dim(derivation_space(a, m), inner_space(a, m));
}

inline CohomologySummary summarize(const DerivationSpace& der, const InnerSpace& inner) {
  return {der.dim(), inner.image.dim(), h1_dim(der, inner)};
}

}  // namespace dermat
