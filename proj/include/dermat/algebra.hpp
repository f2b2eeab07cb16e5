#pragma once

// Finite-dimensional unital algebras and bimodules given by structure
// constants, with validators, element arithmetic and a small catalog.

#include "dermat/exactlin.hpp"
#include "dermat/rational.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dermat {

/// One nonzero structure constant: (target index, coefficient).
using Term = std::pair<std::size_t, Rational>;

struct StructureTriple {
  std::size_t i = 0, j = 0, k = 0;
  Rational c;
};

/// Sparse view of a dense 3-tensor t[a][b][c]: nonzero (c, value) lists per (a, b).
class SparseTensor {
 public:
  SparseTensor() = default;
  SparseTensor(std::size_t n_a, std::size_t n_b, std::size_t n_c, const std::vector<Rational>& dense)
      : n_b_(n_b), terms_(n_a * n_b) {
    for (std::size_t a = 0; a < n_a; ++a)
      for (std::size_t b = 0; b < n_b; ++b)
        for (std::size_t c = 0; c < n_c; ++c) {
          const Rational& x = dense[(a * n_b + b) * n_c + c];
          if (sgn(x) != 0) terms_[a * n_b + b].emplace_back(c, x);
        }
  }
  [[nodiscard]] const std::vector<Term>& operator()(std::size_t a, std::size_t b) const { return terms_[a * n_b_ + b]; }

 private:
  std::size_t n_b_ = 0;
  std::vector<std::vector<Term>> terms_;
};

/// e_i e_j = sum_k c[i][j][k] e_k, with unit vector `unit`.
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::string name, std::size_t dim, std::vector<std::string> labels, std::vector<Rational> mult, Vector unit)
      : name_(std::move(name)), dim_(dim), labels_(std::move(labels)), mult_(std::move(mult)), unit_(std::move(unit)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    if (labels_.size() != dim_) throw std::invalid_argument("algebra '" + name_ + "': label count does not match dim");
    if (mult_.size() != dim_ * dim_ * dim_)
      throw std::invalid_argument("algebra '" + name_ + "': structure tensor has wrong size");
    if (unit_.size() != dim_) throw std::invalid_argument("algebra '" + name_ + "': unit vector has wrong length");
    sparse_ = SparseTensor(dim_, dim_, dim_, mult_);
  }

  static Algebra from_triples(std::string name, std::size_t dim, std::vector<std::string> labels,
                              const std::vector<StructureTriple>& triples, Vector unit) {
    std::vector<Rational> mult(dim * dim * dim, Rational(0));
    for (const auto& t : triples) {
      if (t.i >= dim || t.j >= dim || t.k >= dim)
        throw std::invalid_argument("algebra '" + name + "': structure constant index out of range");
      mult[(t.i * dim + t.j) * dim + t.k] += t.c;
    }
    return Algebra(std::move(name), dim, std::move(labels), std::move(mult), std::move(unit));
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const Vector& unit() const { return unit_; }
  [[nodiscard]] const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
    return mult_[(i * dim_ + j) * dim_ + k];
  }
  /// Nonzero terms of e_i e_j.
  [[nodiscard]] const std::vector<Term>& product(std::size_t i, std::size_t j) const { return sparse_(i, j); }
  [[nodiscard]] const std::vector<Rational>& structure_constants() const { return mult_; }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rational> mult_;
  Vector unit_;
  SparseTensor sparse_;
};

/// e_i . f_p = sum_q L[i][p][q] f_q  and  f_p . e_i = sum_q R[p][i][q] f_q.
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(std::string name, std::size_t dim, std::size_t algebra_dim, std::vector<Rational> left,
           std::vector<Rational> right)
      : name_(std::move(name)), dim_(dim), algebra_dim_(algebra_dim), left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != algebra_dim_ * dim_ * dim_ || right_.size() != dim_ * algebra_dim_ * dim_)
      throw std::invalid_argument("bimodule '" + name_ + "': action tensor has wrong size");
    sparse_left_ = SparseTensor(algebra_dim_, dim_, dim_, left_);
    sparse_right_ = SparseTensor(dim_, algebra_dim_, dim_, right_);
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t algebra_dim() const { return algebra_dim_; }
  [[nodiscard]] const Rational& L(std::size_t i, std::size_t p, std::size_t q) const {
    return left_[(i * dim_ + p) * dim_ + q];
  }
  [[nodiscard]] const Rational& R(std::size_t p, std::size_t i, std::size_t q) const {
    return right_[(p * algebra_dim_ + i) * dim_ + q];
  }
  /// Nonzero terms of e_i . f_p.
  [[nodiscard]] const std::vector<Term>& left_terms(std::size_t i, std::size_t p) const { return sparse_left_(i, p); }
  /// Nonzero terms of f_p . e_i.
  [[nodiscard]] const std::vector<Term>& right_terms(std::size_t p, std::size_t i) const { return sparse_right_(p, i); }
  [[nodiscard]] const std::vector<Rational>& left_tensor() const { return left_; }
  [[nodiscard]] const std::vector<Rational>& right_tensor() const { return right_; }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::size_t algebra_dim_ = 0;
  std::vector<Rational> left_, right_;
  SparseTensor sparse_left_, sparse_right_;
};

enum class Side { left, right };

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string axiom;
  std::vector<std::size_t> indices;
  Vector lhs, rhs;

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os << axiom << " at (";
    for (std::size_t t = 0; t < indices.size(); ++t) os << (t ? "," : "") << indices[t];
    os << "): lhs=(";
    for (std::size_t t = 0; t < lhs.size(); ++t) os << (t ? "," : "") << to_string(lhs[t]);
    os << ") rhs=(";
    for (std::size_t t = 0; t < rhs.size(); ++t) os << (t ? "," : "") << to_string(rhs[t]);
    os << ")";
    return os.str();
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

namespace detail {

inline void accumulate(Vector& out, const Rational& scale, const std::vector<Term>& terms) {
  for (const auto& [k, c] : terms) out[k] += scale * c;
}

// (basis vector e_i) * x, x * (basis e_j) in coordinates.
inline Vector basis_times(const Algebra& a, std::size_t i, const Vector& x) {
  Vector out = zero_vector(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (sgn(x[j]) != 0) accumulate(out, x[j], a.product(i, j));
  return out;
}
inline Vector times_basis(const Algebra& a, const Vector& x, std::size_t j) {
  Vector out = zero_vector(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (sgn(x[i]) != 0) accumulate(out, x[i], a.product(i, j));
  return out;
}

}  // namespace detail

inline ValidationReport validate_algebra(const Algebra& a) {
  const std::size_t d = a.dim();
  if (a.structure_constants().size() != d * d * d || a.unit().size() != d)
    throw std::invalid_argument("validate_algebra: tensor shapes do not match dim");
  ValidationReport report;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector eij = zero_vector(d);
      detail::accumulate(eij, 1, a.product(i, j));
      for (std::size_t k = 0; k < d; ++k) {
        Vector lhs = detail::times_basis(a, eij, k);                  // (e_i e_j) e_k
        Vector rhs = detail::basis_times(a, i, detail::basis_times(a, j, unit_vector(d, k)));  // e_i (e_j e_k)
        if (lhs != rhs) report.violations.push_back({"associativity", {i, j, k}, std::move(lhs), std::move(rhs)});
      }
    }
  for (std::size_t j = 0; j < d; ++j) {
    const Vector ej = unit_vector(d, j);
    Vector ue = zero_vector(d), eu = zero_vector(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (is_zero(a.unit()[i])) continue;
      detail::accumulate(ue, a.unit()[i], a.product(i, j));
      detail::accumulate(eu, a.unit()[i], a.product(j, i));
    }
    if (ue != ej) report.violations.push_back({"left unit law", {j}, std::move(ue), ej});
    if (eu != ej) report.violations.push_back({"right unit law", {j}, std::move(eu), ej});
  }
  return report;
}

inline Vector multiply(const Algebra& a, const Vector& x, const Vector& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw std::invalid_argument("multiply: element does not belong to algebra '" + a.name() + "'");
  Vector out = zero_vector(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (is_zero(y[j])) continue;
      const Rational s = x[i] * y[j];
      detail::accumulate(out, s, a.product(i, j));
    }
  }
  return out;
}

/// Left action a.f or right action f.a.
inline Vector act(const Bimodule& m, Side side, const Vector& a, const Vector& f) {
  if (a.size() != m.algebra_dim() || f.size() != m.dim())
    throw std::invalid_argument("act: element does not belong to the algebra/module pair of '" + m.name() + "'");
  Vector out = zero_vector(m.dim());
  for (std::size_t i = 0; i < m.algebra_dim(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t p = 0; p < m.dim(); ++p) {
      if (is_zero(f[p])) continue;
      const Rational s = a[i] * f[p];
      detail::accumulate(out, s, side == Side::left ? m.left_terms(i, p) : m.right_terms(p, i));
    }
  }
  return out;
}

inline ValidationReport validate_bimodule(const Algebra& a, const Bimodule& m) {
  const std::size_t d = a.dim(), n = m.dim();
  if (m.algebra_dim() != d) throw std::invalid_argument("validate_bimodule: module is over an algebra of different dimension");
  ValidationReport report;
  auto e = [&](std::size_t i) { return unit_vector(d, i); };
  auto f = [&](std::size_t p) { return unit_vector(n, p); };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector eij = multiply(a, e(i), e(j));
      for (std::size_t p = 0; p < n; ++p) {
        Vector lhs = act(m, Side::left, eij, f(p));
        Vector rhs = act(m, Side::left, e(i), act(m, Side::left, e(j), f(p)));
        if (lhs != rhs) report.violations.push_back({"left associativity", {i, j, p}, std::move(lhs), std::move(rhs)});
        lhs = act(m, Side::right, eij, f(p));
        rhs = act(m, Side::right, e(j), act(m, Side::right, e(i), f(p)));
        if (lhs != rhs) report.violations.push_back({"right associativity", {p, i, j}, std::move(lhs), std::move(rhs)});
        lhs = act(m, Side::right, e(j), act(m, Side::left, e(i), f(p)));
        rhs = act(m, Side::left, e(i), act(m, Side::right, e(j), f(p)));
        if (lhs != rhs) report.violations.push_back({"mixed associativity", {i, p, j}, std::move(lhs), std::move(rhs)});
      }
    }
  for (std::size_t p = 0; p < n; ++p) {
    Vector uf = act(m, Side::left, a.unit(), f(p));
    if (uf != f(p)) report.violations.push_back({"left unit law", {p}, std::move(uf), f(p)});
    Vector fu = act(m, Side::right, a.unit(), f(p));
    if (fu != f(p)) report.violations.push_back({"right unit law", {p}, std::move(fu), f(p)});
  }
  return report;
}

inline Bimodule regular_bimodule(const Algebra& a) {
  const std::size_t d = a.dim();
  const auto& c = a.structure_constants();
  // L[i][p][q] = c[i][p][q] and R[p][i][q] = c[p][i][q]: both are the tensor itself.
  return Bimodule(a.name(), d, d, c, c);
}

/// True iff a.f = f.a on every basis pair.
inline bool commutes(const Algebra& a, const Bimodule& m) {
  if (m.algebra_dim() != a.dim()) throw std::invalid_argument("commutes: dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t p = 0; p < m.dim(); ++p)
      if (m.left_terms(i, p) != m.right_terms(p, i)) return false;
  return true;
}

inline bool is_commutative(const Algebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (a.product(i, j) != a.product(j, i)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Catalog

inline Algebra direct_sum(const Algebra& x, const Algebra& y) {
  const std::size_t dx = x.dim(), dy = y.dim(), d = dx + dy;
  std::vector<StructureTriple> triples;
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dx; ++j)
      for (const auto& [k, c] : x.product(i, j)) triples.push_back({i, j, k, c});
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t j = 0; j < dy; ++j)
      for (const auto& [k, c] : y.product(i, j)) triples.push_back({dx + i, dx + j, dx + k, c});
  std::vector<std::string> labels;
  for (const auto& l : x.labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : y.labels()) labels.push_back("(0," + l + ")");
  Vector unit = x.unit();
  unit.insert(unit.end(), y.unit().begin(), y.unit().end());
  return Algebra::from_triples("direct_sum(" + x.name() + "," + y.name() + ")", d, std::move(labels), triples,
                               std::move(unit));
}

namespace detail {

inline Algebra catalog_algebra(std::string_view name) {
  auto r = [](long v) { return make_rational(v); };
  if (name == "field") return Algebra::from_triples("field", 1, {"1"}, {{0, 0, 0, r(1)}}, {r(1)});
  if (name == "dual_numbers")
    return Algebra::from_triples("dual_numbers", 2, {"1", "eps"},
                                 {{0, 0, 0, r(1)}, {0, 1, 1, r(1)}, {1, 0, 1, r(1)}}, {r(1), r(0)});
  if (name == "group_algebra_C2")
    return Algebra::from_triples("group_algebra_C2", 2, {"1", "g"},
                                 {{0, 0, 0, r(1)}, {0, 1, 1, r(1)}, {1, 0, 1, r(1)}, {1, 1, 0, r(1)}}, {r(1), r(0)});
  if (name == "full_matrix_2") {
    // Basis E11, E12, E21, E22 at index 2*i + j.
    std::vector<StructureTriple> t;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) t.push_back({2 * i + j, 2 * j + l, 2 * i + l, r(1)});
    return Algebra::from_triples("full_matrix_2", 4, {"E11", "E12", "E21", "E22"}, t, {r(1), r(0), r(0), r(1)});
  }
  if (name == "upper_triangular_2") {
    // Basis E11, E12, E22.
    return Algebra::from_triples("upper_triangular_2", 3, {"E11", "E12", "E22"},
                                 {{0, 0, 0, r(1)}, {0, 1, 1, r(1)}, {1, 2, 1, r(1)}, {2, 2, 2, r(1)}},
                                 {r(1), r(0), r(1)});
  }
  const std::string_view prefix = "direct_sum(";
  if (name.substr(0, prefix.size()) == prefix && name.back() == ')') {
    const std::string_view inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    int depth = 0;
    for (std::size_t pos = 0; pos < inner.size(); ++pos) {
      if (inner[pos] == '(') ++depth;
      if (inner[pos] == ')') --depth;
      if (inner[pos] == ',' && depth == 0)
        return direct_sum(catalog_algebra(inner.substr(0, pos)), catalog_algebra(inner.substr(pos + 1)));
    }
  }
  throw std::invalid_argument("unknown catalog algebra '" + std::string(name) + "'");
}

}  // namespace detail

struct AlgebraPair {
  Algebra algebra;
  Bimodule module;
};

/// Named algebra with its regular bimodule. Names: field, dual_numbers,
/// group_algebra_C2, full_matrix_2, upper_triangular_2, direct_sum(x,y).
inline AlgebraPair catalog(std::string_view name) {
  Algebra a = detail::catalog_algebra(name);
  Bimodule m = regular_bimodule(a);
  return {std::move(a), std::move(m)};
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"field",         "dual_numbers",       "group_algebra_C2",
                                                 "full_matrix_2", "upper_triangular_2", "direct_sum(field,field)"};
  return names;
}

}  // namespace dermat
