#pragma once

// Elements of O(V, q): construction and verification, reflections, Eichler
// transformations, fixed and residual spaces, unipotency, spinor norms of
// reflection words.

#include <optional>
#include <string>
#include <vector>

#include "wallform/quadspace.hpp"

namespace wallform {

/// Matrix M (columns are images of the basis vectors) with q(Mx) = q(x).
class Isometry {
 public:
  Isometry() = default;

  const QuadraticSpace& space() const { return space_; }
  const Matrix& matrix() const { return mat_; }
  std::size_t dim() const { return space_.dim(); }
  Field field() const { return space_.field(); }

  Vec operator()(const Vec& x) const { return mat_ * x; }

  /// M - I.
  Matrix displacement() const { return mat_ - Matrix::identity(field(), dim()); }

  friend bool operator==(const Isometry& a, const Isometry& b) { return a.space_ == b.space_ && a.mat_ == b.mat_; }

 private:
  friend Isometry make_isometry(const QuadraticSpace&, Matrix);
  Isometry(QuadraticSpace s, Matrix m) : space_(std::move(s)), mat_(std::move(m)) {}

  QuadraticSpace space_;
  Matrix mat_;
};

/// Validates M^T Q M - Q = N with N + N^T = 0 and diag(N) = 0; on failure the
/// message names a witness x with q(Mx) != q(x).
inline Isometry make_isometry(const QuadraticSpace& space, Matrix m) {
  const std::size_t n = space.dim();
  if (m.rows() != n || m.cols() != n) fail(ErrorKind::DimensionMismatch, "isometry matrix has wrong shape");
  if (m.field() != space.field()) fail(ErrorKind::DescriptorMismatch, "matrix and space use different fields");
  const Matrix nm = m.transpose() * space.qmat() * m - space.qmat();
  for (std::size_t i = 0; i < n; ++i)
    if (!nm(i, i).is_zero()) fail(ErrorKind::NotAnIsometry, "q(M e" + std::to_string(i + 1) + ") != q(e" + std::to_string(i + 1) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(nm(i, j) + nm(j, i)).is_zero())
        fail(ErrorKind::NotAnIsometry,
             "q(M x) != q(x) for x = e" + std::to_string(i + 1) + " + e" + std::to_string(j + 1));
  return Isometry(space, std::move(m));
}

inline Isometry identity_isometry(const QuadraticSpace& space) {
  return make_isometry(space, Matrix::identity(space.field(), space.dim()));
}

/// tau_u(x) = x - (b(u, x) / q(u)) u.
inline Isometry reflection(const QuadraticSpace& space, const Vec& u) {
  const Element qu = space.eval_q(u);
  if (qu.is_zero()) fail(ErrorKind::IsotropicVector, "reflection along an isotropic vector");
  const Field f = space.field();
  const std::size_t n = space.dim();
  const Vec bu = (Matrix::from_rows(f, n, {u}) * space.gram()).row(0);
  Matrix m = Matrix::identity(f, n);
  const Element inv = qu.inverse();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= inv * bu[j] * u[i];
  return make_isometry(space, std::move(m));
}

/// E_{x,w}(v) = v + b(v,x) w - b(v,w) x - q(w) b(v,x) x for isotropic x and w perpendicular to x.
inline Isometry eichler(const QuadraticSpace& space, const Vec& x, const Vec& w) {
  if (!space.eval_q(x).is_zero()) fail(ErrorKind::PreconditionViolated, "Eichler transformation needs isotropic x");
  if (!space.eval_b(x, w).is_zero()) fail(ErrorKind::PreconditionViolated, "Eichler transformation needs b(x, w) = 0");
  const Field f = space.field();
  const std::size_t n = space.dim();
  const Vec bx = (Matrix::from_rows(f, n, {x}) * space.gram()).row(0);
  const Vec bw = (Matrix::from_rows(f, n, {w}) * space.gram()).row(0);
  const Element qw = space.eval_q(w);
  Matrix m = Matrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += bx[j] * w[i] - bw[j] * x[i] - qw * bx[j] * x[i];
  return make_isometry(space, std::move(m));
}

/// k(tau) = ker(M - I).
inline Subspace fixed_space(const Isometry& tau) { return Subspace::from_rows(kernel(tau.displacement())); }

/// r(tau) = im(M - I).
inline Subspace residual_space(const Isometry& tau) { return Subspace::from_rows(tau.displacement().transpose()); }

/// Least k with (M - I)^k = 0 (0 for the identity), or nullopt if M is not unipotent.
inline std::optional<std::size_t> unipotency_index(const Isometry& tau) {
  const Matrix a = tau.displacement();
  if (a.is_zero()) return 0;
  Matrix p = a;
  for (std::size_t k = 1; k <= tau.dim(); ++k) {
    if (p.is_zero()) return k;
    p = p * a;
  }
  return std::nullopt;
}

/// (tau - id)^2 = 0.
inline bool is_unipotent2(const Isometry& tau) {
  const Matrix a = tau.displacement();
  return (a * a).is_zero();
}

inline bool is_involution(const Isometry& tau) {
  return tau.matrix() * tau.matrix() == Matrix::identity(tau.field(), tau.dim());
}

inline Isometry compose(const Isometry& a, const Isometry& b) {
  if (!(a.space() == b.space())) fail(ErrorKind::DimensionMismatch, "isometries act on different spaces");
  return make_isometry(a.space(), a.matrix() * b.matrix());
}

inline Isometry inverse(const Isometry& a) {
  const auto inv = inverse(a.matrix());
  if (!inv) fail(ErrorKind::InternalError, "isometry matrix is singular");
  return make_isometry(a.space(), *inv);
}

/// g tau g^-1.
inline Isometry conjugate(const Isometry& tau, const Isometry& g) { return compose(compose(g, tau), inverse(g)); }

/// 4-dimensional isometry whose fixed space is a totally isotropic plane.
inline bool is_interchange(const Isometry& tau) {
  if (tau.dim() != 4) return false;
  const Subspace k = fixed_space(tau);
  return k.dim() == 2 && is_totally_isotropic(tau.space(), k);
}

/// The restriction of tau to a tau-invariant regular subspace, expressed in the
/// coordinates of the subspace basis.
inline Isometry restrict_isometry(const Isometry& tau, const Subspace& s) {
  if (!is_regular(tau.space(), s)) fail(ErrorKind::NotRegular, "restriction target is not regular");
  std::vector<Vec> cols;
  for (const auto& v : s.vectors()) {
    auto c = s.coordinates(tau(v));
    if (!c) fail(ErrorKind::NotInvariant, "subspace is not tau-invariant");
    cols.push_back(std::move(*c));
  }
  QuadraticSpace sub(tau.space().form().restrict_to(s.basis()));
  if (s.dim() == 0) return make_isometry(sub, Matrix(tau.field(), 0, 0));
  return make_isometry(sub, Matrix::from_columns(tau.field(), s.dim(), cols));
}

/// Class of a nonzero element modulo nonzero squares.
struct SquareClass {
  Element representative;
  bool trivial() const { return is_square(representative); }
};

inline bool same_square_class(const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero()) fail(ErrorKind::PreconditionViolated, "square classes are defined for nonzero elements");
  return is_square(a / b);
}

/// A product of reflections tau_{u_1} ... tau_{u_k}.
class ReflectionWord {
 public:
  ReflectionWord(QuadraticSpace space, std::vector<Vec> factors) : space_(std::move(space)), factors_(std::move(factors)) {
    for (const auto& u : factors_)
      if (space_.eval_q(u).is_zero()) fail(ErrorKind::IsotropicVector, "reflection word factor is isotropic");
  }

  const QuadraticSpace& space() const { return space_; }
  const std::vector<Vec>& factors() const { return factors_; }

  Isometry to_isometry() const {
    Isometry r = identity_isometry(space_);
    for (const auto& u : factors_) r = compose(r, reflection(space_, u));
    return r;
  }

 private:
  QuadraticSpace space_;
  std::vector<Vec> factors_;
};

/// theta(tau_{u_1} ... tau_{u_k}) = class of q(u_1) ... q(u_k); trivial for the empty word.
inline SquareClass spinor_norm_word(const ReflectionWord& word) {
  Element p = word.space().field().one();
  for (const auto& u : word.factors()) p *= word.space().eval_q(u);
  return SquareClass{p};
}

}  // namespace wallform
