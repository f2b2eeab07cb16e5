#pragma once

// Exact linear algebra over Q: dense matrices, an incremental sparse
// Gauss-Jordan eliminator, and the subspace operations built on it.

#include "dermat/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dermat {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] Vector row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  [[nodiscard]] Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  [[nodiscard]] Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vector y = zero_vector(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(x[c]) == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& a = (*this)(r, c);
        if (sgn(a) != 0) y[r] += a * x[c];
      }
    }
    return y;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
  }

  [[nodiscard]] const std::vector<Rational>& entries() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  friend Matrix operator*(const Rational& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x *= s;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << "[";
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << to_string(m(r, c));
      os << "]\n";
    }
    return os;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Sparse row: (column, value) pairs sorted by column, no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

inline SparseRow to_sparse(const Vector& v) {
  SparseRow out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

inline Vector to_dense(const SparseRow& row, std::size_t n) {
  Vector v = zero_vector(n);
  for (const auto& [c, x] : row) v[c] = x;
  return v;
}

/// Incremental Gauss-Jordan elimination. Rows are inserted one at a time and
/// the stored rows are kept in fully reduced echelon form at all times, so
/// the final state is the reduced row echelon form of everything inserted.
///
/// A stored row has a leading 1 at its pivot column and a zero at every other
/// pivot column. Reducing a new row therefore needs one subtraction per pivot
/// column it touches, using the row's original value at that column.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t cols)
      : cols_(cols), pivot_slot_(cols, npos), work_(cols, Rational(0)), touched_(cols, false) {}

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }

  /// Returns true iff the row was independent of the rows inserted so far.
  bool insert(const SparseRow& row) {
    SparseRow residual = reduce(row);
    if (residual.empty()) return false;

    const std::size_t pivot = residual.front().first;
    const Rational lead = residual.front().second;
    for (auto& [c, x] : residual) x /= lead;

    // Clear the new pivot column from every stored row.
    for (auto& stored : rows_) {
      auto it = std::lower_bound(stored.begin(), stored.end(), pivot,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == stored.end() || it->first != pivot) continue;
      const Rational factor = it->second;
      stored = axpy(stored, -factor, residual);
    }
    pivot_slot_[pivot] = rows_.size();
    rows_.push_back(std::move(residual));
    return true;
  }

  bool insert(const Vector& row) {
    if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
    return insert(to_sparse(row));
  }

  /// Residual of `row` after subtracting its projection on the stored rows.
  [[nodiscard]] SparseRow reduce(const SparseRow& row) {
    std::vector<std::size_t> touched_list;
    touched_list.reserve(row.size() * 4);
    auto touch = [&](std::size_t c) {
      if (!touched_[c]) {
        touched_[c] = true;
        touched_list.push_back(c);
      }
    };
    for (const auto& [c, x] : row) {
      if (c >= cols_) throw std::invalid_argument("row column out of range");
      touch(c);
      work_[c] = x;
    }
    for (const auto& [c, x] : row) {
      const std::size_t slot = pivot_slot_[c];
      if (slot == npos || sgn(work_[c]) == 0) continue;
      const Rational factor = work_[c];
      for (const auto& [c2, y] : rows_[slot]) {
        touch(c2);
        work_[c2] -= factor * y;
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    SparseRow out;
    for (std::size_t c : touched_list) {
      if (sgn(work_[c]) != 0) out.emplace_back(c, work_[c]);
      work_[c] = 0;
      touched_[c] = false;
    }
    return out;
  }

  [[nodiscard]] bool in_span(const Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    return reduce(to_sparse(v)).empty();
  }

  /// Pivot columns in increasing order.
  [[nodiscard]] std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_slot_[c] != npos) out.push_back(c);
    return out;
  }

  /// Stored rows ordered by pivot column.
  [[nodiscard]] std::vector<SparseRow> sorted_rows() const {
    std::vector<SparseRow> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_slot_[c] != npos) out.push_back(rows_[pivot_slot_[c]]);
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // a + s*b over sparse rows.
  static SparseRow axpy(const SparseRow& a, const Rational& s, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, s * b[j].second);
        ++j;
      } else {
        Rational x = a[i].second + s * b[j].second;
        if (sgn(x) != 0) out.emplace_back(a[i].first, std::move(x));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::size_t cols_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivot_slot_;
  Vector work_;
  std::vector<bool> touched_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Pivots are the leftmost nonzero columns and are
/// normalized to 1; the result is unique, so row insertion order is irrelevant.
inline RrefResult rref(const Matrix& m) {
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  RrefResult out;
  out.reduced = Matrix(m.rows(), m.cols());
  const auto rows = builder.sorted_rows();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) out.reduced(r, c) = x;
  out.pivots = builder.pivots();
  out.rank = rows.size();
  return out;
}

/// A subspace of Q^n held by its reduced-echelon basis, which makes the
/// representation canonical: equal subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    EchelonBuilder builder(ambient_dim);
    for (const auto& v : vectors) builder.insert(v);
    return from_builder(builder);
  }

  static Subspace from_builder(const EchelonBuilder& builder) {
    Subspace s(builder.cols());
    for (const auto& row : builder.sorted_rows()) s.basis_.push_back(to_dense(row, builder.cols()));
    s.pivot_cols_ = builder.pivots();
    return s;
  }

  /// Adopts a basis already reduced against `pivots`: vector b has a 1 at
  /// pivots[b] and zeros at every other listed pivot.
  static Subspace from_reduced(std::size_t ambient_dim, std::vector<Vector> basis, std::vector<std::size_t> pivots) {
    if (basis.size() != pivots.size()) throw std::invalid_argument("from_reduced: one pivot per basis vector");
    Subspace s(ambient_dim);
    s.basis_ = std::move(basis);
    s.pivot_cols_ = std::move(pivots);
    return s;
  }

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }

  /// Exact residual test: subtract v[p] times the basis row with pivot p.
  [[nodiscard]] bool contains(const Vector& v) const {
    if (v.size() != ambient_dim_) throw std::invalid_argument("member: vector length does not match ambient dimension");
    Vector r = v;
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      const Rational f = r[pivot_cols_[b]];
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < ambient_dim_; ++c)
        if (!is_zero(basis_[b][c])) r[c] -= f * basis_[b][c];
    }
    return is_zero(r);
  }

  /// Equality as subspaces, independent of the stored basis.
  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_ || a.dim() != b.dim()) return false;
    return std::all_of(a.basis_.begin(), a.basis_.end(), [&](const Vector& v) { return b.contains(v); });
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivot_cols_;
};

/// Free-variable parametrization of {v : m v = 0}: one vector per non-pivot
/// column f, with a 1 at f, zeros at the other free columns, and -R[i][f] at
/// pivot column p_i. Ordered by f.
inline std::vector<Vector> kernel_basis(const EchelonBuilder& reduced) {
  const std::size_t n = reduced.cols();
  const auto rows = reduced.sorted_rows();
  const auto pivots = reduced.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(n);
    v[f] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto it = std::lower_bound(rows[i].begin(), rows[i].end(), f,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != rows[i].end() && it->first == f) v[pivots[i]] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<Vector> kernel_basis(const Matrix& m) {
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return kernel_basis(builder);
}

/// {v : m v = 0} with the free-variable parametrization as its basis; the free
/// columns serve as pivots.
inline Subspace nullspace(const EchelonBuilder& reduced) {
  std::vector<bool> is_pivot(reduced.cols(), false);
  for (auto p : reduced.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t f = 0; f < reduced.cols(); ++f)
    if (!is_pivot[f]) free.push_back(f);
  return Subspace::from_reduced(reduced.cols(), kernel_basis(reduced), std::move(free));
}

inline Subspace nullspace(const Matrix& m) {
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return nullspace(builder);
}

/// Particular solution of m x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length does not match row count");
  const std::size_t n = m.cols();
  EchelonBuilder builder(n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row = m.row(r);
    row.push_back(b[r]);
    builder.insert(row);
  }
  const auto pivots = builder.pivots();
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Vector x = zero_vector(n);
  const auto rows = builder.sorted_rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].back().first == n) x[pivots[i]] = rows[i].back().second;
  return x;
}

inline bool member(const Subspace& s, const Vector& v) { return s.contains(v); }

/// dim(sup) - dim(sub); sub must be contained in sup.
inline std::size_t quotient_dim(const Subspace& sub, const Subspace& sup) {
  if (sub.ambient_dim() != sup.ambient_dim()) throw std::invalid_argument("quotient_dim: ambient dimensions differ");
  for (const auto& v : sub.basis())
    if (!sup.contains(v)) throw std::invalid_argument("quotient_dim: subspace is not contained in the superspace");
  return sup.dim() - sub.dim();
}

}  // namespace dermat
