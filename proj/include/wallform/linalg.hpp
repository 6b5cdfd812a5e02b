#pragma once

// Dense exact linear algebra over a Field: matrices, row reduction, kernels,
// linear solves and subspaces kept in reduced row-echelon form.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wallform/field.hpp"

namespace wallform {

using Vec = std::vector<Element>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, f.zero()); }

inline Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = f.one();
  return v;
}

inline void check_len(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector lengths differ");
}

inline Vec operator+(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_len(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Element& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

inline std::vector<std::string> to_strings(const Vec& v) {
  std::vector<std::string> r;
  r.reserve(v.size());
  for (const auto& e : v) r.push_back(e.to_string());
  return r;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorKind::DimensionMismatch, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vec>& cols) {
    return from_rows(f, rows, cols).transpose();
  }

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<Vec> row_vectors() const {
    std::vector<Vec> r;
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Element& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }

  friend Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    Vec r = zero_vec(a.field_, a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend Matrix operator*(const Element& c, const Matrix& a) {
    Matrix r = a;
    for (auto& e : r.a_) e = c * e;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> r;
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(wallform::to_strings(row(i)));
    return r;
  }

 private:
  void check_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::DimensionMismatch, "matrix shape mismatch");
  }

  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> a_;
};

inline Element dot(const Vec& a, const Vec& b) {
  check_len(a, b);
  if (a.empty()) fail(ErrorKind::DimensionMismatch, "dot product of empty vectors needs a field");
  Element s = a[0].field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// x^T m y.
inline Element bilinear(const Matrix& m, const Vec& x, const Vec& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) fail(ErrorKind::DimensionMismatch, "bilinear shape mismatch");
  Element s = m.field().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) s += x[i] * m(i, j) * y[j];
  }
  return s;
}

/// Vertical concatenation.
inline Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) fail(ErrorKind::DimensionMismatch, "stack shape mismatch");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

struct Echelon {
  Matrix reduced;                   // reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline Echelon echelon(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Element inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Element f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// Rows form a basis of {x : m x = 0}, one vector per free column.
inline Matrix kernel(const Matrix& m) {
  const Echelon e = echelon(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(f, m.cols(), basis);
}

/// Nonzero rows of the reduced row-echelon form.
inline Matrix row_space(const Matrix& m) {
  const Echelon e = echelon(m);
  Matrix r(m.field(), e.pivots.size(), m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = e.reduced(i, j);
  return r;
}

/// A particular solution of m x = b with free variables set to zero.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) fail(ErrorKind::DimensionMismatch, "solve shape mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  const Echelon e = echelon(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

inline Matrix power(const Matrix& m, std::size_t k) {
  Matrix r = Matrix::identity(m.field(), m.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

/// Linear subspace of F^n stored by its reduced row-echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(Field f, std::size_t n, const std::vector<Vec>& vectors) {
    return Subspace(row_space(Matrix::from_rows(f, n, vectors)), n);
  }

  static Subspace from_rows(const Matrix& m) { return Subspace(row_space(m), m.cols()); }
  static Subspace zero(Field f, std::size_t n) { return Subspace(Matrix(f, 0, n), n); }
  static Subspace whole(Field f, std::size_t n) { return Subspace(Matrix::identity(f, n), n); }

  Field field() const { return basis_.field(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return n_; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> vectors() const { return basis_.row_vectors(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coefficients of v in terms of basis(); nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const {
    if (v.size() != n_) fail(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    Vec back = zero_vec(field(), n_);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) back = back + c[i] * basis_.row(i);
    if (back != v) return std::nullopt;
    return c;
  }

  bool contains(const Vec& v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& s) const {
    for (const auto& v : s.vectors())
      if (!contains(v)) return false;
    return true;
  }

  Vec combine(const Vec& coords) const {
    Vec v = zero_vec(field(), n_);
    for (std::size_t i = 0; i < coords.size(); ++i) v = v + coords[i] * basis_.row(i);
    return v;
  }

  /// Vectors y with y . x = 0 for every x in this subspace (no form involved).
  Matrix annihilator() const {
    if (dim() == 0) return Matrix::identity(field(), n_);
    return kernel(basis_);
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    return from_rows(stack(a.basis_, b.basis_));
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    const Matrix constraints = stack(a.annihilator(), b.annihilator());
    if (constraints.rows() == 0) return whole(a.field(), a.n_);
    return from_rows(kernel(constraints));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

 private:
  Subspace(Matrix rref, std::size_t n) : basis_(std::move(rref)), n_(n) {
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!basis_(i, j).is_zero()) {
          pivots_.push_back(j);
          break;
        }
  }

  Matrix basis_;
  std::size_t n_ = 0;
  std::vector<std::size_t> pivots_;
};

}  // namespace wallform
