#pragma once

#include <random>

#include "wallform/wallform.hpp"

namespace fx {

using namespace wallform;

inline Matrix mat(const Field& f, const std::vector<std::vector<std::string>>& rows) {
  std::vector<Vec> rs;
  for (const auto& r : rows) {
    Vec v;
    for (const auto& s : r) v.push_back(f.parse_element(s));
    rs.push_back(v);
  }
  return Matrix::from_rows(f, rs.empty() ? 0 : rs[0].size(), rs);
}

inline Vec vec(const Field& f, const std::vector<std::string>& xs) {
  Vec v;
  for (const auto& s : xs) v.push_back(f.parse_element(s));
  return v;
}

/// pairs copies of the hyperbolic plane, q = x1 x2 + x3 x4 + ...
inline QuadraticSpace hyperbolic(const Field& f, std::size_t pairs) {
  Matrix q(f, 2 * pairs, 2 * pairs);
  for (std::size_t i = 0; i < pairs; ++i) q(2 * i, 2 * i + 1) = f.one();
  return QuadraticSpace::from_upper(q);
}

/// Anisotropic plane x^2 + xy + a y^2 (char 2, a with trace 1) or x^2 - a y^2
/// (odd p, a a nonsquare), plus (pairs - 1) hyperbolic planes.
inline QuadraticSpace elliptic(const Field& f, std::size_t pairs) {
  Matrix q(f, 2 * pairs, 2 * pairs);
  if (f.characteristic() == 2) {
    // Smallest a with x^2 + x + a irreducible.
    Element a = f.one();
    for (std::uint32_t i = 1; i < f.order(); ++i) {
      const Element c = f.element(i);
      bool root = false;
      for (std::uint32_t j = 0; j < f.order(); ++j) {
        const Element x = f.element(j);
        if ((x * x + x + c).is_zero()) root = true;
      }
      if (!root) {
        a = c;
        break;
      }
    }
    q(0, 0) = f.one();
    q(0, 1) = f.one();
    q(1, 1) = a;
  } else {
    Element a = f.one();
    for (std::uint32_t i = 1; i < f.order(); ++i)
      if (!is_square(f.element(i))) {
        a = f.element(i);
        break;
      }
    q(0, 0) = f.one();
    q(1, 1) = -a;
  }
  for (std::size_t i = 1; i < pairs; ++i) q(2 * i, 2 * i + 1) = f.one();
  return QuadraticSpace::from_upper(q);
}

inline QuadraticSpace diagonal(const Field& f, const std::vector<long long>& a) {
  Vec d;
  for (auto x : a) d.push_back(f.from_int(x));
  return QuadraticSpace(QuadraticForm::diagonal(f, d));
}

inline Field gf2() { return Field::galois2(1); }
inline Field gf4() { return Field::galois2(2); }
inline Field gf7() { return Field::prime(7); }
inline Field rat() { return Field::rational_function(); }

/// H4F2: GF(2), q = x1 x2 + x3 x4, tau_int: e2 -> e2 + e3, e4 -> e4 + e1.
inline QuadraticSpace h4f2_space() { return hyperbolic(gf2(), 2); }

inline Isometry h4f2_tau() {
  const Field f = gf2();
  return make_isometry(h4f2_space(), mat(f, {{"1", "0", "0", "1"}, {"0", "1", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "0", "1"}}));
}

/// The same shape over an arbitrary char-2 field (hyperbolic, tau(y) = y + w, tau(z) = z + x).
inline Isometry interchange_tau(const Field& f) {
  Matrix m = Matrix::identity(f, 4);
  m(2, 1) = f.one();
  m(0, 3) = -f.one();
  return make_isometry(hyperbolic(f, 2), m);
}

/// R2T: GF(2)(t), q(u) = t, q(v) = 0, b(u, v) = 1; tau = reflection along u.
inline QuadraticSpace r2t_space() {
  const Field f = rat();
  return QuadraticSpace::from_upper(mat(f, {{"t", "1"}, {"0", "0"}}));
}

inline Isometry r2t_tau() { return reflection(r2t_space(), vec(rat(), {"1", "0"})); }

inline QuadraticSpace r4t_space() {
  const Field f = rat();
  return QuadraticSpace::from_upper(mat(f, {{"t", "1", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "t", "1"}, {"0", "0", "0", "0"}}));
}

inline Isometry r4t_tau() {
  const Field f = rat();
  const QuadraticSpace s = r4t_space();
  return compose(reflection(s, vec(f, {"1", "0", "0", "0"})), reflection(s, vec(f, {"0", "0", "1", "0"})));
}

inline Element random_element(const Field& f, std::mt19937_64& rng) {
  if (f.is_finite()) return f.element(static_cast<std::uint32_t>(rng() % f.order()));
  // Small-degree fractions over GF(2)(t).
  const Gf2Poly num(rng() & 0x7u);
  Gf2Poly den(rng() & 0x7u);
  if (den.degree() < 0) den = Gf2Poly(1);
  return f.fraction(num, den);
}

inline Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(f, rng));
  return v;
}

}  // namespace fx
