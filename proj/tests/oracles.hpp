#pragma once

// Reference computations that share no code with the library's elimination or
// constraint assembly. They are slow and dense on purpose.

#include "dermat/algebra.hpp"
#include "dermat/exactlin.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using dermat::Rational;
using Rows = std::vector<std::vector<Rational>>;
using dermat::operator+;
using dermat::operator-;

struct Reduced {
  Rows rows;
  std::vector<std::size_t> pivots;
};

// Textbook Gauss-Jordan: leftmost column first, topmost nonzero entry as pivot.
inline Reduced gauss_jordan(Rows a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t o = 0; o < a.size(); ++o) {
      if (o == r || a[o][c] == 0) continue;
      const Rational f = a[o][c];
      for (std::size_t k = 0; k < cols; ++k) a[o][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Rows& a, std::size_t cols) { return gauss_jordan(a, cols).pivots.size(); }

inline Rows rows_of(const dermat::Matrix& m) {
  Rows out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

// Basis vectors plus pairwise sums: enough to polarize every bilinear identity.
inline std::vector<dermat::Vector> spanning_set(const dermat::Algebra& a) {
  std::vector<dermat::Vector> s;
  for (std::size_t i = 0; i < a.dim(); ++i) s.push_back(dermat::unit_vector(a.dim(), i));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) s.push_back(s[i] + s[j]);
  s.push_back(a.unit());
  return s;
}

// Applies the elementary map sending e_k to f_q and every other basis vector to 0.
inline dermat::Vector elementary(std::size_t q, std::size_t k, std::size_t m, const dermat::Vector& x) {
  dermat::Vector out = dermat::zero_vector(m);
  out[q] = x[k];
  return out;
}

enum class Identity { leibniz, jordan };

// Rows of the constraint system on all (x, y) pairs of the spanning set, columns
// indexed by the elementary maps (q, k) at q * d + k.
inline Rows constraint_rows(const dermat::Algebra& a, const dermat::Bimodule& m, Identity which) {
  using dermat::act;
  using dermat::multiply;
  using dermat::Side;
  const std::size_t d = a.dim(), md = m.dim();
  const auto span = spanning_set(a);
  Rows rows;
  for (const auto& x : span)
    for (const auto& y : span) {
      if (which == Identity::jordan && x != y) continue;
      Rows block(md, std::vector<Rational>(d * md, Rational(0)));
      const dermat::Vector xy = multiply(a, x, y);
      for (std::size_t q = 0; q < md; ++q)
        for (std::size_t k = 0; k < d; ++k) {
          const dermat::Vector lhs = elementary(q, k, md, xy);
          const dermat::Vector rhs = act(m, Side::right, y, elementary(q, k, md, x)) +
                                     act(m, Side::left, x, elementary(q, k, md, y));
          const dermat::Vector res = lhs - rhs;
          for (std::size_t t = 0; t < md; ++t) block[t][q * d + k] = res[t];
        }
      for (auto& r : block) rows.push_back(std::move(r));
    }
  return rows;
}

inline std::size_t derivation_dim(const dermat::Algebra& a, const dermat::Bimodule& m) {
  const std::size_t n = a.dim() * m.dim();
  return n - rank(constraint_rows(a, m, Identity::leibniz), n);
}

// Jordan identity on x^2 for every spanning element, including sums e_i + e_j.
inline std::size_t jordan_dim(const dermat::Algebra& a, const dermat::Bimodule& m) {
  const std::size_t n = a.dim() * m.dim();
  return n - rank(constraint_rows(a, m, Identity::jordan), n);
}

// Rank of w -> (e_j -> w e_j - e_j w), one row per module basis vector.
inline std::size_t inner_dim(const dermat::Algebra& a, const dermat::Bimodule& m) {
  using dermat::act;
  using dermat::Side;
  const std::size_t d = a.dim(), md = m.dim();
  Rows rows;
  for (std::size_t p = 0; p < md; ++p) {
    const dermat::Vector w = dermat::unit_vector(md, p);
    std::vector<Rational> flat(d * md, Rational(0));
    for (std::size_t j = 0; j < d; ++j) {
      const dermat::Vector e = dermat::unit_vector(d, j);
      const dermat::Vector v = act(m, Side::right, e, w) - act(m, Side::left, e, w);
      for (std::size_t q = 0; q < md; ++q) flat[q * d + j] = v[q];
    }
    rows.push_back(std::move(flat));
  }
  return rank(rows, d * md);
}

}  // namespace oracle
