#pragma once

// Quadratic and bilinear spaces: evaluation, orthogonal complements, regularity
// tests and the orthogonal / hyperbolic basis constructions.

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "wallform/linalg.hpp"

namespace wallform {

/// q(x) = x^T U x with U upper triangular. Not necessarily regular.
class QuadraticForm {
 public:
  QuadraticForm() = default;

  /// Any square matrix M defines q(x) = x^T M x; it is folded to upper-triangular form.
  static QuadraticForm from_matrix(const Matrix& m) {
    if (!m.is_square()) fail(ErrorKind::DimensionMismatch, "quadratic form matrix must be square");
    Matrix u(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      u(i, i) = m(i, i);
      for (std::size_t j = i + 1; j < m.cols(); ++j) u(i, j) = m(i, j) + m(j, i);
    }
    return QuadraticForm(std::move(u));
  }

  /// Diagonal form a_1 x_1^2 + ... + a_n x_n^2.
  static QuadraticForm diagonal(Field f, const Vec& a) {
    Matrix m(f, a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m(i, i) = a[i];
    return QuadraticForm(std::move(m));
  }

  Field field() const { return upper_.field(); }
  std::size_t dim() const { return upper_.rows(); }
  const Matrix& upper() const { return upper_; }

  Element eval(const Vec& x) const {
    if (x.size() != dim()) fail(ErrorKind::DimensionMismatch, "vector length differs from form dimension");
    Element s = field().zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = i; j < dim(); ++j) s += upper_(i, j) * x[i] * x[j];
    }
    return s;
  }

  /// Gram matrix of the polar form b(x, y) = q(x + y) - q(x) - q(y).
  Matrix polar_gram() const { return upper_ + upper_.transpose(); }

  /// The form y -> q(sum_i y_i r_i) on coordinates w.r.t. the rows r_i of `basis`.
  QuadraticForm restrict_to(const Matrix& basis) const {
    const Matrix g = polar_gram();
    Matrix u(field(), basis.rows(), basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      const Vec bi = basis.row(i);
      u(i, i) = eval(bi);
      for (std::size_t j = i + 1; j < basis.rows(); ++j) u(i, j) = bilinear(g, bi, basis.row(j));
    }
    return QuadraticForm(std::move(u));
  }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  explicit QuadraticForm(Matrix u) : upper_(std::move(u)) {}
  Matrix upper_;
};

/// True iff x^T a x = x^T b x for all x: N = a - b has N + N^T = 0 and zero diagonal.
inline bool represents_same_form(const Matrix& a, const Matrix& b) {
  const Matrix n = a - b;
  if (!(n + n.transpose()).is_zero()) return false;
  for (std::size_t i = 0; i < n.rows(); ++i)
    if (!n(i, i).is_zero()) return false;
  return true;
}

/// A regular quadratic space (V, q): the polar Gram matrix is invertible.
/// Cheap to copy; the form data is shared and immutable.
class QuadraticSpace {
 public:
  QuadraticSpace() = default;

  explicit QuadraticSpace(QuadraticForm q) {
    Matrix g = q.polar_gram();
    if (!is_invertible(g) && g.rows() > 0) fail(ErrorKind::Degenerate, "polar form is degenerate");
    d_ = std::make_shared<const Data>(Data{std::move(q), std::move(g)});
  }

  static QuadraticSpace from_upper(const Matrix& m) { return QuadraticSpace(QuadraticForm::from_matrix(m)); }

  Field field() const { return d_->q.field(); }
  std::size_t dim() const { return d_->q.dim(); }
  const QuadraticForm& form() const { return d_->q; }
  const Matrix& qmat() const { return d_->q.upper(); }
  const Matrix& gram() const { return d_->gram; }

  Element eval_q(const Vec& x) const { return d_->q.eval(x); }

  Element eval_b(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim()) fail(ErrorKind::DimensionMismatch, "vector length differs from dim");
    return bilinear(d_->gram, x, y);
  }

  Vec zero() const { return zero_vec(field(), dim()); }
  Vec unit(std::size_t i) const { return unit_vec(field(), dim(), i); }

  friend bool operator==(const QuadraticSpace& a, const QuadraticSpace& b) {
    return a.d_ == b.d_ || (a.d_ && b.d_ && a.d_->q == b.d_->q);
  }

 private:
  struct Data {
    QuadraticForm q;
    Matrix gram;
  };
  std::shared_ptr<const Data> d_;
};

/// W^perp = {x : b(x, y) = 0 for all y in W}.
inline Subspace orthogonal_complement(const QuadraticSpace& space, const Subspace& s) {
  if (s.dim() == 0) return Subspace::whole(space.field(), space.dim());
  return Subspace::from_rows(kernel(s.basis() * space.gram()));
}

/// Gram matrix of the polar form restricted to the basis of s.
inline Matrix restricted_gram(const QuadraticSpace& space, const Subspace& s) {
  return s.basis() * space.gram() * s.basis().transpose();
}

inline bool is_regular(const QuadraticSpace& space, const Subspace& s) {
  return s.dim() == 0 || is_invertible(restricted_gram(space, s));
}

/// The polar form vanishes on s.
inline bool is_totally_singular(const QuadraticSpace& space, const Subspace& s) {
  return s.dim() == 0 || restricted_gram(space, s).is_zero();
}

/// q vanishes on every vector of s.
inline bool is_totally_isotropic(const QuadraticSpace& space, const Subspace& s) {
  if (!is_totally_singular(space, s)) return false;
  for (const auto& v : s.vectors())
    if (!space.eval_q(v).is_zero()) return false;
  return true;
}

/// A subspace C with C + inner = outer and C n inner = 0, built greedily from
/// the basis of outer.
inline Subspace complement_in(const Subspace& inner, const Subspace& outer) {
  if (!outer.contains(inner)) fail(ErrorKind::NotNested, "inner subspace is not contained in outer");
  std::vector<Vec> chosen;
  Subspace running = inner;
  for (const auto& v : outer.vectors()) {
    if (running.contains(v)) continue;
    chosen.push_back(v);
    running = running + Subspace::span(outer.field(), outer.ambient_dim(), {v});
  }
  return Subspace::span(outer.field(), outer.ambient_dim(), chosen);
}

/// A bilinear form given by its Gram matrix on coordinate space F^r.
struct BilinearForm {
  Matrix gram;

  std::size_t dim() const { return gram.rows(); }
  Element eval(const Vec& x, const Vec& y) const { return bilinear(gram, x, y); }
  bool is_symmetric() const { return gram == gram.transpose(); }
  bool is_antisymmetric() const { return (gram + gram.transpose()).is_zero(); }
  bool is_alternating() const {
    for (std::size_t i = 0; i < dim(); ++i)
      if (!gram(i, i).is_zero()) return false;
    return is_antisymmetric();
  }
  bool is_nondegenerate() const { return dim() == 0 || is_invertible(gram); }
};

/// Pairs (u_i, v_i) with f(u_i, v_i) = 1 = -f(v_i, u_i) and all other pairings
/// zero, by symplectic Gram-Schmidt on the standard basis.
inline std::vector<std::pair<Vec, Vec>> hyperbolic_basis_alternating(const BilinearForm& f) {
  if (!f.is_alternating()) fail(ErrorKind::NotAlternating, "form is not alternating");
  if (!f.is_nondegenerate()) fail(ErrorKind::Degenerate, "form is degenerate");
  const Field fld = f.gram.field();
  std::vector<Vec> work;
  for (std::size_t i = 0; i < f.dim(); ++i) work.push_back(unit_vec(fld, f.dim(), i));
  std::vector<std::pair<Vec, Vec>> pairs;
  while (!work.empty()) {
    Vec u = work.front();
    std::size_t partner = 0;
    for (std::size_t j = 1; j < work.size() && partner == 0; ++j)
      if (!f.eval(u, work[j]).is_zero()) partner = j;
    if (partner == 0) fail(ErrorKind::Degenerate, "no hyperbolic partner found");
    Vec v = f.eval(u, work[partner]).inverse() * work[partner];
    std::vector<Vec> rest;
    for (std::size_t j = 1; j < work.size(); ++j) {
      if (j == partner) continue;
      const Vec& w = work[j];
      rest.push_back(w + f.eval(v, w) * u - f.eval(u, w) * v);
    }
    pairs.emplace_back(std::move(u), std::move(v));
    work = std::move(rest);
  }
  return pairs;
}

/// Orthogonal basis of a nondegenerate symmetric nonalternating form; every
/// returned vector has nonzero length. In characteristic 2 an alternating
/// remainder is absorbed three vectors at a time: with v of length a and a
/// hyperbolic pair (e, f), the triple (v+e, v+af, e+v+af) has Gram diag(a, a, a).
inline std::vector<Vec> orthogonal_basis(const BilinearForm& f) {
  if (!f.is_symmetric()) fail(ErrorKind::NotSymmetric, "form is not symmetric");
  if (!f.is_nondegenerate()) fail(ErrorKind::Degenerate, "form is degenerate");
  const Field fld = f.gram.field();
  const std::size_t r = f.dim();
  std::vector<Vec> work, found;
  for (std::size_t i = 0; i < r; ++i) work.push_back(unit_vec(fld, r, i));

  while (!work.empty()) {
    std::size_t pivot = work.size();
    for (std::size_t i = 0; i < work.size() && pivot == work.size(); ++i)
      if (!f.eval(work[i], work[i]).is_zero()) pivot = i;
    if (pivot == work.size() && fld.characteristic() != 2) {
      for (std::size_t i = 0; i < work.size() && pivot == work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size() && pivot == work.size(); ++j)
          if (!f.eval(work[i], work[j]).is_zero()) {
            work[j] = work[i] + work[j];
            pivot = j;
          }
    }
    if (pivot == work.size()) break;  // alternating remainder (characteristic 2)
    const Vec v = work[pivot];
    const Element len = f.eval(v, v);
    std::vector<Vec> rest;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (i != pivot) rest.push_back(work[i] - (f.eval(work[i], v) / len) * v);
    found.push_back(v);
    work = std::move(rest);
  }

  if (!work.empty()) {
    if (found.empty()) fail(ErrorKind::AlternatingForm, "alternating form has no orthogonal basis");
    // Gram of the remainder in its own coordinates.
    Matrix sub(fld, work.size(), work.size());
    for (std::size_t i = 0; i < work.size(); ++i)
      for (std::size_t j = 0; j < work.size(); ++j) sub(i, j) = f.eval(work[i], work[j]);
    auto lift = [&](const Vec& c) {
      Vec x = zero_vec(fld, r);
      for (std::size_t i = 0; i < c.size(); ++i) x = x + c[i] * work[i];
      return x;
    };
    for (const auto& [ec, fc] : hyperbolic_basis_alternating(BilinearForm{sub})) {
      const Vec e = lift(ec), h = lift(fc);
      const Vec v = found.back();
      const Element a = f.eval(v, v);
      found.back() = v + e;
      found.push_back(v + a * h);
      found.push_back(e + v + a * h);
    }
  }
  return found;
}

/// Extends a totally isotropic pair (x, w) of a 4-dimensional space to a
/// hyperbolic basis (x, y, w, z) with b(x, y) = b(w, z) = 1.
inline std::array<Vec, 4> extend_to_hyperbolic_basis(const QuadraticSpace& space, const Vec& x, const Vec& w) {
  if (space.dim() != 4) fail(ErrorKind::NotExtendable, "space is not 4-dimensional");
  const Field f = space.field();
  const Subspace pair = Subspace::span(f, 4, {x, w});
  if (pair.dim() != 2 || !is_totally_isotropic(space, pair))
    fail(ErrorKind::NotExtendable, "pair does not span a totally isotropic plane");
  const Matrix& g = space.gram();
  auto functional = [&](const Vec& a) { return (Matrix::from_rows(f, 4, {a}) * g).row(0); };

  const auto y0 = solve(Matrix::from_rows(f, 4, {functional(x), functional(w)}), {f.one(), f.zero()});
  if (!y0) fail(ErrorKind::NotExtendable, "no partner for x");
  const Vec y = *y0 - space.eval_q(*y0) * x;
  const auto z0 =
      solve(Matrix::from_rows(f, 4, {functional(w), functional(x), functional(y)}), {f.one(), f.zero(), f.zero()});
  if (!z0) fail(ErrorKind::NotExtendable, "no partner for w");
  const Vec z = *z0 - space.eval_q(*z0) * w;

  const std::array<Vec, 4> basis{x, y, w, z};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!space.eval_q(basis[i]).is_zero()) fail(ErrorKind::NotExtendable, "basis vector is not isotropic");
    for (std::size_t j = i + 1; j < 4; ++j) {
      const bool paired = (i == 0 && j == 1) || (i == 2 && j == 3);
      if (space.eval_b(basis[i], basis[j]) != (paired ? f.one() : f.zero()))
        fail(ErrorKind::NotExtendable, "extended basis is not hyperbolic");
    }
  }
  return basis;
}

/// Splits a regular subspace of a characteristic-2 space into pairwise
/// orthogonal regular planes span(e_i, f_i) with b(e_i, f_i) = 1.
inline std::vector<std::pair<Vec, Vec>> regular_planes(const QuadraticSpace& space, const Subspace& s) {
  if (!is_regular(space, s)) fail(ErrorKind::NotRegular, "subspace is not regular");
  const Matrix g = restricted_gram(space, s);
  std::vector<std::pair<Vec, Vec>> planes;
  for (const auto& [ec, fc] : hyperbolic_basis_alternating(BilinearForm{g}))
    planes.emplace_back(s.combine(ec), s.combine(fc));
  return planes;
}

}  // namespace wallform
