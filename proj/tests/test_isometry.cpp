#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace wallform;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

// Literal definition check: q(Mx) = q(x) for every vector of a small finite space.
bool preserves_q_everywhere(const QuadraticSpace& s, const Matrix& m) {
  const Field f = s.field();
  const std::size_t n = s.dim();
  std::vector<std::uint32_t> idx(n, 0);
  while (true) {
    Vec x;
    for (auto i : idx) x.push_back(f.element(i));
    if (s.eval_q(m * x) != s.eval_q(x)) return false;
    std::size_t k = 0;
    while (k < n && ++idx[k] == f.order()) idx[k++] = 0;
    if (k == n) return true;
  }
}

}  // namespace

TEST(Isometry, MakeIsometryAcceptsAndRejects) {
  const QuadraticSpace h = fx::h4f2_space();
  const Field f = h.field();
  const Matrix swap = fx::mat(f, {{"0", "1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  EXPECT_NO_THROW(make_isometry(h, swap));
  EXPECT_TRUE(preserves_q_everywhere(h, swap));
  // e1 -> e2 alone (rest fixed) breaks b(e1, e2) = 1.
  const Matrix bad = fx::mat(f, {{"0", "0", "0", "0"}, {"1", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  EXPECT_FALSE(preserves_q_everywhere(h, bad));
  EXPECT_EQ(kind_of([&] { make_isometry(h, bad); }), ErrorKind::NotAnIsometry);
  EXPECT_EQ(kind_of([&] { make_isometry(h, Matrix::identity(f, 3)); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([&] { make_isometry(h, Matrix::identity(fx::gf4(), 4)); }), ErrorKind::DescriptorMismatch);
}

TEST(Isometry, MakeIsometryAgreesWithLiteralCheck) {
  // Every 2x2 matrix over GF(4) on the anisotropic plane.
  const QuadraticSpace s = fx::elliptic(fx::gf4(), 1);
  const Field f = s.field();
  std::size_t accepted = 0;
  for (std::uint32_t a = 0; a < 256; ++a) {
    Matrix m(f, 2, 2);
    for (std::size_t i = 0; i < 4; ++i) m(i / 2, i % 2) = f.element((a >> (2 * i)) & 3u);
    const bool literal = is_invertible(m) && preserves_q_everywhere(s, m);
    bool lib = true;
    try {
      make_isometry(s, m);
    } catch (const Error&) {
      lib = false;
    }
    EXPECT_EQ(lib, literal) << a;
    accepted += lib;
  }
  // |O^-(2, 4)| = 2 (q + 1) = 10.
  EXPECT_EQ(accepted, 10u);
}

TEST(Isometry, ReflectionFormulaOverRationalFunctions) {
  const QuadraticSpace s = fx::r2t_space();
  const Field f = s.field();
  const Isometry tau = fx::r2t_tau();
  // b(u, e1) = 0 (char 2), b(u, e2) = 1: tau(v) = v + t^{-1} b(u, v) u.
  EXPECT_EQ(tau(s.unit(0)), s.unit(0));
  EXPECT_EQ(tau(s.unit(1)), fx::vec(f, {"1/t", "1"}));
  EXPECT_EQ(tau.matrix(), fx::mat(f, {{"1", "1/t"}, {"0", "1"}}));
  EXPECT_TRUE(is_involution(tau));
  EXPECT_TRUE(is_unipotent2(tau));
  EXPECT_EQ(kind_of([&] { reflection(s, s.unit(1)); }), ErrorKind::IsotropicVector);
}

TEST(Isometry, ReflectionOddCharacteristic) {
  const QuadraticSpace s = fx::diagonal(fx::gf7(), {1, 6});
  const Isometry r = reflection(s, s.unit(0));
  EXPECT_EQ(r(s.unit(0)), fx::vec(s.field(), {"6", "0"}));
  EXPECT_EQ(r(s.unit(1)), s.unit(1));
  EXPECT_TRUE(is_involution(r));
  EXPECT_FALSE(is_unipotent2(r));
  EXPECT_FALSE(unipotency_index(r).has_value());
}

TEST(Isometry, EichlerMatchesInterchange) {
  const QuadraticSpace h = fx::h4f2_space();
  EXPECT_EQ(eichler(h, h.unit(0), h.unit(2)), fx::h4f2_tau());
  EXPECT_EQ(kind_of([&] { eichler(h, h.unit(0), h.unit(1)); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([&] { eichler(h, h.unit(0) + h.unit(1), h.unit(2)); }), ErrorKind::PreconditionViolated);
  // Eichler maps over GF(7) preserve q on every vector.
  const QuadraticSpace g = fx::hyperbolic(fx::gf7(), 2);
  const Vec w = fx::vec(g.field(), {"0", "0", "2", "3"});
  EXPECT_TRUE(preserves_q_everywhere(g, eichler(g, g.unit(0), w).matrix()));
}

TEST(Isometry, FixedAndResidualSpaces) {
  const Isometry tau = fx::h4f2_tau();
  const Field f = tau.field();
  const Subspace k = fixed_space(tau), r = residual_space(tau);
  EXPECT_EQ(k, Subspace::span(f, 4, {tau.space().unit(0), tau.space().unit(2)}));
  EXPECT_EQ(r, k);
  EXPECT_EQ(orthogonal_complement(tau.space(), k), r);
  // r = k^perp holds for every isometry.
  for (const Isometry& t : {fx::r2t_tau(), fx::r4t_tau(), identity_isometry(fx::h4f2_space())}) {
    EXPECT_EQ(orthogonal_complement(t.space(), fixed_space(t)), residual_space(t));
    EXPECT_EQ(fixed_space(t).dim() + residual_space(t).dim(), t.dim());
  }
}

TEST(Isometry, UnipotencyIndex) {
  EXPECT_EQ(unipotency_index(identity_isometry(fx::h4f2_space())), 0u);
  EXPECT_EQ(unipotency_index(fx::h4f2_tau()), 2u);
  EXPECT_EQ(unipotency_index(fx::r4t_tau()), 2u);
  EXPECT_TRUE(is_involution(fx::h4f2_tau()));
}

TEST(Isometry, ComposeInverseConjugate) {
  const Isometry tau = fx::h4f2_tau();
  const QuadraticSpace h = tau.space();
  const Isometry g = make_isometry(h, fx::mat(h.field(), {{"0", "1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}));
  EXPECT_EQ(compose(tau, inverse(tau)), identity_isometry(h));
  const Isometry c = conjugate(tau, g);
  EXPECT_EQ(c.matrix(), g.matrix() * tau.matrix() * inverse(g).matrix());
  EXPECT_EQ(fixed_space(c).dim(), 2u);
  EXPECT_EQ(kind_of([&] { compose(tau, fx::r2t_tau()); }), ErrorKind::DimensionMismatch);
}

TEST(Isometry, InterchangeRecognition) {
  EXPECT_TRUE(is_interchange(fx::h4f2_tau()));
  EXPECT_TRUE(is_interchange(fx::interchange_tau(fx::gf4())));
  EXPECT_FALSE(is_interchange(fx::r4t_tau()));  // fixed plane is not totally isotropic
  EXPECT_FALSE(is_interchange(fx::r2t_tau()));
  EXPECT_FALSE(is_interchange(identity_isometry(fx::h4f2_space())));
}

TEST(Isometry, RestrictToInvariantSubspace) {
  const Isometry tau = fx::r4t_tau();
  const Field f = tau.field();
  const Subspace p = Subspace::span(f, 4, {tau.space().unit(0), tau.space().unit(1)});
  const Isometry r = restrict_isometry(tau, p);
  EXPECT_EQ(r.dim(), 2u);
  EXPECT_EQ(r.matrix(), fx::r2t_tau().matrix());
  const Subspace bad = Subspace::span(f, 4, {tau.space().unit(1), tau.space().unit(2)});
  EXPECT_EQ(kind_of([&] { restrict_isometry(tau, bad); }), ErrorKind::NotRegular);
  const Subspace mixed = Subspace::span(f, 4, {tau.space().unit(0) + tau.space().unit(2), tau.space().unit(1)});
  EXPECT_EQ(kind_of([&] { restrict_isometry(tau, mixed); }), ErrorKind::NotInvariant);
}

TEST(Isometry, SpinorNormOfWords) {
  const QuadraticSpace s = fx::r4t_space();
  const Field f = s.field();
  const ReflectionWord single(s, {s.unit(0)});
  EXPECT_EQ(spinor_norm_word(single).representative, f.t());
  EXPECT_FALSE(spinor_norm_word(single).trivial());
  const ReflectionWord pair(s, {s.unit(0), s.unit(2)});
  EXPECT_EQ(pair.to_isometry(), fx::r4t_tau());
  EXPECT_EQ(spinor_norm_word(pair).representative, f.t() * f.t());
  EXPECT_TRUE(spinor_norm_word(pair).trivial());
  EXPECT_TRUE(spinor_norm_word(ReflectionWord(s, {})).trivial());
  EXPECT_EQ(kind_of([&] { ReflectionWord(s, {s.unit(1)}); }), ErrorKind::IsotropicVector);

  // Multiplicative in word concatenation; u and c u give the same reflection and class.
  const QuadraticSpace g = fx::diagonal(fx::gf7(), {1, 3, 5});
  const Vec a = fx::vec(g.field(), {"1", "1", "0"}), b = fx::vec(g.field(), {"0", "2", "1"});
  const Element na = spinor_norm_word(ReflectionWord(g, {a})).representative;
  const Element nb = spinor_norm_word(ReflectionWord(g, {b})).representative;
  EXPECT_EQ(spinor_norm_word(ReflectionWord(g, {a, b})).representative, na * nb);
  const Vec a3 = g.field().from_int(3) * a;
  EXPECT_EQ(reflection(g, a3), reflection(g, a));
  EXPECT_TRUE(same_square_class(spinor_norm_word(ReflectionWord(g, {a3})).representative, na));
  EXPECT_EQ(kind_of([&] { same_square_class(g.field().zero(), na); }), ErrorKind::PreconditionViolated);
}
