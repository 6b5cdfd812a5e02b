#pragma once

// The Wall form of an isometry: omega(tau x - x, tau y - y) = b(tau x - x, y)
// on the residual space r(tau).

#include <vector>

#include "wallform/isometry.hpp"

namespace wallform {

class WallForm {
 public:
  /// Residual basis is the reduced row-echelon basis of im(M - I); each
  /// preimage is the particular solution of (M - I) y = u_j.
  explicit WallForm(Isometry tau) : tau_(std::move(tau)), residual_(residual_space(tau_)) {
    const Matrix a = tau_.displacement();
    for (const auto& u : residual_.vectors()) {
      auto y = solve(a, u);
      if (!y) fail(ErrorKind::InternalError, "residual vector without preimage");
      preimages_.push_back(std::move(*y));
    }
    gram_ = gram_with_preimages(preimages_);
  }

  const Isometry& tau() const { return tau_; }
  const Subspace& residual() const { return residual_; }
  std::vector<Vec> residual_basis() const { return residual_.vectors(); }
  const std::vector<Vec>& preimages() const { return preimages_; }
  /// gram[i][j] = omega(u_i, u_j) = b(u_i, y_j).
  const Matrix& gram() const { return gram_; }
  std::size_t dim() const { return residual_.dim(); }
  BilinearForm form() const { return BilinearForm{gram_}; }

  /// Recomputes the Gram matrix from another choice of preimages; each ys[j]
  /// must satisfy tau(ys[j]) - ys[j] = u_j.
  Matrix gram_with_preimages(const std::vector<Vec>& ys) const {
    const auto us = residual_.vectors();
    if (ys.size() != us.size()) fail(ErrorKind::DimensionMismatch, "one preimage per residual basis vector");
    const Matrix a = tau_.displacement();
    Matrix g(tau_.field(), us.size(), us.size());
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (a * ys[j] != us[j]) fail(ErrorKind::PreconditionViolated, "vector is not a preimage of the residual basis vector");
      for (std::size_t i = 0; i < us.size(); ++i) g(i, j) = tau_.space().eval_b(us[i], ys[j]);
    }
    return g;
  }

  /// Coordinates of u in the residual basis.
  Vec coordinates(const Vec& u) const {
    auto c = residual_.coordinates(u);
    if (!c) fail(ErrorKind::NotInResidual, "vector is not in r(tau)");
    return *c;
  }

  Vec to_ambient(const Vec& coords) const { return residual_.combine(coords); }

  /// omega(u, v) for u, v in r(tau).
  Element evaluate(const Vec& u, const Vec& v) const {
    if (dim() == 0) return tau_.field().zero();
    return bilinear(gram_, coordinates(u), coordinates(v));
  }

 private:
  Isometry tau_;
  Subspace residual_;
  std::vector<Vec> preimages_;
  Matrix gram_;
};

inline WallForm wall_form(const Isometry& tau) { return WallForm(tau); }

struct WallClass {
  bool symmetric = false;
  bool antisymmetric = false;
  bool alternating = false;
};

/// The three flags are independent; in characteristic 2 symmetric and
/// antisymmetric coincide.
inline WallClass classify(const WallForm& w) {
  const BilinearForm f = w.form();
  return WallClass{f.is_symmetric(), f.is_antisymmetric(), f.is_alternating()};
}

/// phi(c) = omega(c, c) on residual coordinates. For symmetric omega this is
/// -q restricted to r(tau).
inline QuadraticForm assoc_quadratic(const WallForm& w) {
  if (!w.form().is_symmetric()) fail(ErrorKind::NotSymmetric, "associated quadratic form needs a symmetric Wall form");
  return QuadraticForm::from_matrix(w.gram());
}

}  // namespace wallform
