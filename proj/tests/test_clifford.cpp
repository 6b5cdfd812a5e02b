#include <gtest/gtest.h>

#include <map>
#include <random>

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

// Word reduction in C(q), char 2: sort generator words with
// e_i e_j = e_j e_i + b_ij and e_i e_i = q(e_i).
void reduce_word(const QuadraticForm& q, std::vector<unsigned> w, const Element& c, std::map<std::uint32_t, Element>& out) {
  if (c.is_zero()) return;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const unsigned a = w[k], b = w[k + 1];
    if (a < b) continue;
    std::vector<unsigned> dropped(w.begin(), w.begin() + k);
    dropped.insert(dropped.end(), w.begin() + k + 2, w.end());
    if (a == b) {
      reduce_word(q, dropped, c * q.upper()(a, a), out);
    } else {
      std::swap(w[k], w[k + 1]);
      reduce_word(q, w, c, out);
      reduce_word(q, dropped, c * q.polar_gram()(a, b), out);
    }
    return;
  }
  std::uint32_t mask = 0;
  for (auto i : w) mask |= 1u << i;
  auto it = out.find(mask);
  if (it == out.end())
    out.emplace(mask, c);
  else
    it->second += c;
}

std::vector<unsigned> word_of(std::uint32_t mask) {
  std::vector<unsigned> w;
  for (unsigned i = 0; i < 32; ++i)
    if (mask >> i & 1u) w.push_back(i);
  return w;
}

CliffordElement oracle_product(const CliffordAlgebra& alg, std::uint32_t s, std::uint32_t t) {
  std::vector<unsigned> w = word_of(s);
  const auto wt = word_of(t);
  w.insert(w.end(), wt.begin(), wt.end());
  std::map<std::uint32_t, Element> terms;
  reduce_word(alg.form(), w, alg.field().one(), terms);
  CliffordElement r = alg.zero();
  for (const auto& [m, c] : terms) r = r + c * alg.basis(m);
  return r;
}

CliffordElement random_sparse(const CliffordAlgebra& alg, std::mt19937_64& rng, int terms) {
  CliffordElement r = alg.zero();
  for (int i = 0; i < terms; ++i)
    r = r + fx::random_element(alg.field(), rng) * alg.basis(static_cast<std::uint32_t>(rng() % alg.dim()));
  return r;
}

std::vector<QuadraticSpace> small_spaces() {
  return {fx::h4f2_space(), fx::r4t_space(), fx::elliptic(fx::gf2(), 2), fx::elliptic(fx::gf4(), 2), fx::r2t_space()};
}

}  // namespace

TEST(Clifford, StructureConstantsMatchWordReduction) {
  for (const QuadraticSpace& s : small_spaces()) {
    const CliffordAlgebra alg(s.form());
    EXPECT_EQ(alg.dim(), 1u << s.dim());
    for (std::uint32_t a = 0; a < alg.dim(); ++a)
      for (std::uint32_t b = 0; b < alg.dim(); ++b) EXPECT_EQ(alg.basis(a) * alg.basis(b), oracle_product(alg, a, b));
  }
  const CliffordAlgebra big(fx::hyperbolic(fx::gf4(), 3).form());
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % 64), b = static_cast<std::uint32_t>(rng() % 64);
    EXPECT_EQ(big.basis(a) * big.basis(b), oracle_product(big, a, b));
  }
}

TEST(Clifford, AssociativeOnAllBasisTriples) {
  for (const QuadraticSpace& s : {fx::h4f2_space(), fx::r4t_space()}) {
    const CliffordAlgebra alg(s.form());
    for (std::uint32_t a = 0; a < alg.dim(); ++a)
      for (std::uint32_t b = 0; b < alg.dim(); ++b) {
        const CliffordElement ab = alg.basis(a) * alg.basis(b);
        for (std::uint32_t c = 0; c < alg.dim(); ++c)
          ASSERT_EQ(ab * alg.basis(c), alg.basis(a) * (alg.basis(b) * alg.basis(c)));
      }
  }
}

TEST(Clifford, AssociativeOnRandomTriplesDim6) {
  const CliffordAlgebra alg(fx::elliptic(fx::gf4(), 3).form());
  std::mt19937_64 rng(32);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_sparse(alg, rng, 2), b = random_sparse(alg, rng, 2), c = random_sparse(alg, rng, 2);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Clifford, VectorsSquareToQ) {
  std::mt19937_64 rng(33);
  for (const QuadraticSpace& s : small_spaces()) {
    const CliffordAlgebra alg(s.form());
    for (int i = 0; i < 50; ++i) {
      const Vec v = fx::random_vec(s.field(), s.dim(), rng), w = fx::random_vec(s.field(), s.dim(), rng);
      EXPECT_EQ(alg.vector(v) * alg.vector(v), alg.scalar(s.eval_q(v)));
      EXPECT_EQ(alg.vector(v) * alg.vector(w) + alg.vector(w) * alg.vector(v), alg.scalar(s.eval_b(v, w)));
    }
  }
}

TEST(Clifford, CenterIsScalars) {
  for (const QuadraticSpace& s : small_spaces()) EXPECT_EQ(center_dimension(CliffordAlgebra(s.form())), 1u);
  // Brute force over every element of the quaternion algebras on GF(2) and GF(4) planes.
  for (const QuadraticSpace& s : {fx::hyperbolic(fx::gf2(), 1), fx::elliptic(fx::gf4(), 1)}) {
    const CliffordAlgebra alg(s.form());
    const Field f = s.field();
    std::size_t central = 0;
    const std::uint32_t q = f.order();
    for (std::uint32_t idx = 0; idx < q * q * q * q; ++idx) {
      Vec c;
      for (std::uint32_t k = 0, r = idx; k < 4; ++k, r /= q) c.push_back(f.element(r % q));
      const CliffordElement x = alg.from_coefficients(c);
      bool ok = true;
      for (std::uint32_t g : {1u, 2u}) ok = ok && x * alg.basis(g) == alg.basis(g) * x;
      if (ok) {
        ++central;
        EXPECT_TRUE(x.is_scalar());
      }
    }
    EXPECT_EQ(central, q);
  }
}

TEST(Clifford, InverseAndAlgebraMismatch) {
  const CliffordAlgebra alg(fx::h4f2_space().form());
  const CliffordElement x = alg.one() + alg.basis(0b0101);  // (e1e3)^2 = 0
  const auto inv = clifford_inverse(x);
  ASSERT_TRUE(inv);
  EXPECT_EQ(x * *inv, alg.one());
  EXPECT_FALSE(clifford_inverse(alg.basis(0b0001)).has_value());  // e1^2 = 0
  EXPECT_FALSE(clifford_inverse(alg.one() + alg.basis(0b0011)).has_value());  // idempotent
  const CliffordAlgebra other(fx::elliptic(fx::gf2(), 2).form());
  EXPECT_EQ(kind_of([&] { (void)(alg.one() + other.one()); }), ErrorKind::AlgebraMismatch);
  EXPECT_EQ(kind_of([&] { CliffordAlgebra(fx::diagonal(fx::gf7(), {1, 1}).form()); }), ErrorKind::CharacteristicNot2);
  EXPECT_EQ(kind_of([&] { CliffordAlgebra(fx::hyperbolic(fx::gf2(), 5).form()); }), ErrorKind::TooLarge);
  EXPECT_EQ((alg.one() + alg.basis(0b0101)).to_string(), "1 + e1e3");
  EXPECT_EQ(alg.zero().to_string(), "0");
}

TEST(Clifford, NaturalInvolutionOfIdentity) {
  const Isometry id = identity_isometry(fx::h4f2_space());
  const AlgebraInvolution j = natural_involution(id);
  const CliffordAlgebra& alg = j.algebra();
  EXPECT_EQ(j(alg.basis(0b0011)), alg.basis(0b0011) + alg.one());
  EXPECT_EQ(j(alg.basis(0b0001)), alg.basis(0b0001));
  EXPECT_EQ(involution_type(j), InvolutionType::Symplectic);
  // 1 = e1e2 + J(e1e2), so 1 is alternating.
  EXPECT_EQ(alg.basis(0b0011) + j(alg.basis(0b0011)), alg.one());
}

TEST(Clifford, NaturalInvolutionLaws) {
  std::vector<Isometry> taus{fx::h4f2_tau(), fx::r2t_tau(), fx::r4t_tau(), fx::interchange_tau(fx::gf4())};
  for (const Isometry& tau : enumerate_unipotent2(fx::elliptic(fx::gf2(), 2)))
    if (is_involution(tau)) taus.push_back(tau);
  for (const Isometry& tau : taus) {
    const AlgebraInvolution j = natural_involution(tau);
    const CliffordAlgebra& alg = j.algebra();
    EXPECT_TRUE(j.squares_to_identity());
    EXPECT_TRUE(j.is_anti_multiplicative());
    for (std::size_t i = 0; i < tau.dim(); ++i)
      EXPECT_EQ(j(alg.vector(tau.space().unit(i))), alg.vector(tau(tau.space().unit(i))));
    // J(e_S) is the reversed product of images.
    for (std::uint32_t s = 0; s < alg.dim(); ++s) {
      CliffordElement p = alg.one();
      for (auto i : word_of(s)) p = alg.vector(tau(tau.space().unit(i))) * p;
      EXPECT_EQ(j(alg.basis(s)), p);
    }
    // Alt is inside Sym and the two dimensions add up to dim C(q).
    const Matrix alt = j.alt_map();
    for (std::size_t c = 0; c < alt.cols(); ++c) EXPECT_TRUE(j.is_symmetric_element(alg.from_coefficients(alt.col(c))));
    EXPECT_EQ(j.alt_dim() + j.sym_dim(), alg.dim());
  }
  EXPECT_EQ(kind_of([&] { natural_involution(fx::h4f2_tau(), CliffordAlgebra(fx::elliptic(fx::gf2(), 2).form())); }),
            ErrorKind::AlgebraMismatch);
}

TEST(Clifford, OrthogonalExactlyWhenResidualIsFixed) {
  for (const QuadraticSpace& s : {fx::h4f2_space(), fx::elliptic(fx::gf2(), 2), fx::hyperbolic(fx::gf4(), 2)}) {
    const GroupEnumeration g = enumerate_orthogonal_group(s);
    std::size_t involutions = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Isometry tau = g.isometry(i);
      if (!is_involution(tau)) continue;
      ++involutions;
      const bool orthogonal = involution_type(natural_involution(tau)) == InvolutionType::Orthogonal;
      EXPECT_EQ(orthogonal, residual_space(tau) == fixed_space(tau));
    }
    EXPECT_GT(involutions, 1u);
  }
}

TEST(Clifford, SymplecticTestAgainstBruteForceAlt) {
  // 1 in Alt decided by trying every a in C(q) over GF(2).
  for (const Isometry& tau : {identity_isometry(fx::h4f2_space()), fx::h4f2_tau()}) {
    const AlgebraInvolution j = natural_involution(tau);
    const CliffordAlgebra& alg = j.algebra();
    bool one_alt = false;
    for (std::uint32_t bits = 0; bits < (1u << 16) && !one_alt; ++bits) {
      Vec c;
      for (unsigned k = 0; k < 16; ++k) c.push_back(alg.field().element(bits >> k & 1u));
      const CliffordElement a = alg.from_coefficients(c);
      one_alt = a + j(a) == alg.one();
    }
    EXPECT_EQ(one_alt, involution_type(j) == InvolutionType::Symplectic);
  }
}

TEST(Clifford, PhiSubalgebra) {
  for (const Isometry& tau : {fx::h4f2_tau(), fx::r2t_tau(), fx::r4t_tau(), fx::interchange_tau(fx::gf4())}) {
    const PhiAlgebra phi = phi_subalgebra(tau);
    EXPECT_TRUE(phi.verified());
    const std::size_t s = residual_space(tau).dim();
    EXPECT_EQ(phi.dim, std::size_t{1} << s);
    ASSERT_EQ(phi.generators.size(), s);
    for (std::size_t i = 0; i < s; ++i) EXPECT_EQ(phi.generator_squares[i], tau.space().eval_q(phi.generators[i]));
  }
  EXPECT_EQ(kind_of([&] { phi_subalgebra(identity_isometry(fx::h4f2_space())); }), ErrorKind::ResidualNotFixed);
}

TEST(Clifford, AlternatingGenerators) {
  const Field f = fx::rat();
  const auto rep2 = alternating_generators_check(fx::r2t_tau(), {fx::vec(f, {"1", "0"})});
  EXPECT_TRUE(rep2.holds);
  ASSERT_EQ(rep2.products.size(), 1u);
  const AlgebraInvolution j2 = natural_involution(fx::r2t_tau());
  EXPECT_EQ(rep2.witnesses[0] + j2(rep2.witnesses[0]), rep2.products[0]);

  const Isometry tau = fx::r4t_tau();
  const Vec u1 = fx::vec(f, {"1", "0", "0", "0"}), u2 = fx::vec(f, {"0", "0", "1", "0"});
  const auto rep4 = alternating_generators_check(tau, {u1, u2});
  EXPECT_TRUE(rep4.holds);
  EXPECT_EQ(rep4.products.size(), 3u);
  const AlgebraInvolution j4 = natural_involution(tau);
  for (std::size_t i = 0; i < rep4.products.size(); ++i) EXPECT_EQ(rep4.witnesses[i] + j4(rep4.witnesses[i]), rep4.products[i]);

  EXPECT_EQ(kind_of([&] { alternating_generators_check(tau, {u1, f.t() * u1 + u2}); }), ErrorKind::NotOrthogonalBasis);
  EXPECT_EQ(kind_of([&] { alternating_generators_check(tau, {u1}); }), ErrorKind::NotOrthogonalBasis);
  EXPECT_EQ(kind_of([&] { alternating_generators_check(tau, {u1, fx::vec(f, {"0", "1", "0", "0"})}); }), ErrorKind::NotInResidual);
  const Isometry h = fx::h4f2_tau();
  EXPECT_EQ(kind_of([&] { alternating_generators_check(h, {h.space().unit(0), h.space().unit(2)}); }), ErrorKind::ZeroSquare);
  EXPECT_EQ(kind_of([&] { alternating_generators_check(tau, {u1, u1 + u2}); }), ErrorKind::ZeroSquare);
}

TEST(Clifford, PfisterInvariant) {
  const PfisterDescriptor p2 = pfister_invariant(fx::r2t_tau());
  EXPECT_EQ(p2.to_strings(), std::vector<std::string>{"t"});
  EXPECT_FALSE(p2.square[0]);
  const PfisterDescriptor p4 = pfister_invariant(fx::r4t_tau());
  EXPECT_EQ(p4.to_strings(), (std::vector<std::string>{"t", "t"}));
  const PfisterDescriptor ph = pfister_invariant(fx::h4f2_tau());
  EXPECT_EQ(ph.to_strings(), (std::vector<std::string>{"1", "1"}));
  EXPECT_TRUE(ph.square[0] && ph.square[1]);
  EXPECT_EQ(kind_of([&] { pfister_invariant(identity_isometry(fx::h4f2_space())); }), ErrorKind::ResidualNotFixed);
}

TEST(Clifford, PfisterInvariantUnderBasisPermutation) {
  const Field f = fx::rat();
  // q(e1) = t, q(e3) = t + 1: two reflections with different square classes.
  const QuadraticSpace s = QuadraticSpace::from_upper(
      fx::mat(f, {{"t", "1", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "t+1", "1"}, {"0", "0", "0", "0"}}));
  const Isometry tau = compose(reflection(s, s.unit(0)), reflection(s, s.unit(2)));
  const PfisterDescriptor base = pfister_invariant(tau);
  // The same isometry written in a permuted basis (e3, e4, e1, e2).
  const Matrix perm = fx::mat(f, {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"1", "0", "0", "0"}, {"0", "1", "0", "0"}});
  const Matrix q2 = perm.transpose() * s.qmat() * perm;
  const QuadraticSpace s2 = QuadraticSpace::from_upper(q2);
  const Isometry tau2 = make_isometry(s2, *inverse(perm) * tau.matrix() * perm);
  const PfisterDescriptor moved = pfister_invariant(tau2);
  EXPECT_TRUE(structurally_equal(base, moved));
  EXPECT_NE(base.to_strings(), moved.to_strings());
  const PfisterDescriptor other{{f.t(), f.t()}, {false, false}};
  EXPECT_FALSE(structurally_equal(base, other));
}

TEST(Clifford, TransposeCriterion) {
  const TransposeCriterion r2 = transpose_iso_criterion(fx::r2t_tau());
  EXPECT_FALSE(r2.holds());
  EXPECT_FALSE(r2.q_values_square || r2.omega_values_square || r2.split_form);
  EXPECT_FALSE(transpose_iso_criterion(fx::r4t_tau()).holds());
  EXPECT_TRUE(transpose_iso_criterion(fx::h4f2_tau()).holds());
  // A reflection with q(u) = t^2 passes over GF(2)(t).
  const Field f = fx::rat();
  const QuadraticSpace sq = QuadraticSpace::from_upper(fx::mat(f, {{"t^2", "1"}, {"0", "0"}}));
  EXPECT_TRUE(transpose_iso_criterion(reflection(sq, sq.unit(0))).holds());
  EXPECT_EQ(kind_of([&] { explicit_matrix_iso(fx::r2t_tau()); }), ErrorKind::UnsupportedField);
}

namespace {

void check_iso_independently(const Isometry& tau, const MatrixIso& iso) {
  const CliffordAlgebra& alg = iso.algebra;
  const AlgebraInvolution j = natural_involution(tau, alg);
  EXPECT_TRUE(iso.verified());
  EXPECT_EQ(iso.degree * iso.degree, alg.dim());
  for (std::uint32_t s = 0; s < alg.dim(); ++s) {
    EXPECT_EQ(iso.apply(j(alg.basis(s))), iso.images[s].transpose());
    for (std::uint32_t t = 0; t < alg.dim(); ++t) EXPECT_EQ(iso.images[s] * iso.images[t], iso.apply(oracle_product(alg, s, t)));
  }
  EXPECT_EQ(iso.images[0], Matrix::identity(tau.field(), iso.degree));
  std::vector<Vec> flat;
  for (const auto& m : iso.images) {
    Vec v;
    for (std::size_t r = 0; r < iso.degree; ++r)
      for (std::size_t c = 0; c < iso.degree; ++c) v.push_back(m(r, c));
    flat.push_back(v);
  }
  EXPECT_EQ(rank(Matrix::from_rows(tau.field(), alg.dim(), flat)), alg.dim());
  // Fixed vectors map to symmetric matrices squaring to q(x).
  for (const auto& x : fixed_space(tau).vectors()) {
    const Matrix fx_ = iso.apply(alg.vector(x));
    EXPECT_TRUE(square_scalar_check(fx_, tau.space().eval_q(x)));
  }
}

}  // namespace

TEST(Clifford, ExplicitMatrixIsoInterchange) {
  for (const Isometry& tau : {fx::h4f2_tau(), fx::interchange_tau(fx::gf4())}) {
    const MatrixIso iso = explicit_matrix_iso(tau);
    EXPECT_EQ(iso.degree, 4u);
    check_iso_independently(tau, iso);
    EXPECT_TRUE(explicit_matrix_iso_exists(tau));
  }
}

TEST(Clifford, ExplicitMatrixIsoPlaneReflection) {
  const QuadraticSpace s = fx::elliptic(fx::gf4(), 1);
  ASSERT_TRUE(s.eval_q(s.unit(0)).is_one());
  const Isometry tau = reflection(s, s.unit(0));
  const MatrixIso iso = explicit_matrix_iso(tau);
  EXPECT_EQ(iso.degree, 2u);
  check_iso_independently(tau, iso);
  EXPECT_EQ(kind_of([&] { explicit_matrix_iso(identity_isometry(s)); }), ErrorKind::ResidualNotFixed);
}

TEST(Clifford, SquareScalarCheck) {
  const Field f = fx::gf2();
  EXPECT_TRUE(square_scalar_check(fx::mat(f, {{"0", "1"}, {"1", "0"}}), f.one()));
  EXPECT_EQ(kind_of([&] { square_scalar_check(fx::mat(f, {{"0", "1"}, {"0", "0"}}), f.zero()); }), ErrorKind::NotSymmetric);
  EXPECT_EQ(kind_of([&] { square_scalar_check(fx::mat(f, {{"1", "1"}, {"1", "0"}}), f.one()); }), ErrorKind::NotScalarSquare);
  // Every 2x2 symmetric GF(4) matrix with scalar square: the scalar is a square.
  const Field g = fx::gf4();
  std::size_t hits = 0;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      for (std::uint32_t d = 0; d < 4; ++d) {
        Matrix x(g, 2, 2);
        x(0, 0) = g.element(a);
        x(0, 1) = x(1, 0) = g.element(b);
        x(1, 1) = g.element(d);
        const Matrix sq = x * x;
        if (!(sq(0, 1).is_zero() && sq(1, 0).is_zero() && sq(0, 0) == sq(1, 1))) continue;
        ++hits;
        EXPECT_TRUE(square_scalar_check(x, sq(0, 0)));
      }
  EXPECT_GT(hits, 4u);
}

TEST(Clifford, GoldmanElements) {
  for (const Isometry& tau : {fx::h4f2_tau(), fx::interchange_tau(fx::gf4())}) {
    const CliffordElement g = goldman_element(tau);
    const CliffordAlgebra& alg = g.algebra();
    EXPECT_EQ(g * g, alg.one());
    for (std::size_t i = 0; i < tau.dim(); ++i) {
      const Vec e = tau.space().unit(i);
      EXPECT_EQ(g * alg.vector(e), alg.vector(tau(e)) * g);
    }
    const auto [u1, v1] = interchange_swap_plane(tau);
    const CliffordElement g2 = goldman_element_from_plane(tau, u1, v1);
    for (std::size_t i = 0; i < tau.dim(); ++i) {
      const Vec e = tau.space().unit(i);
      EXPECT_EQ(g2 * alg.vector(e), alg.vector(tau(e)) * g2);
    }
    EXPECT_EQ(kind_of([&] { goldman_element_from_plane(tau, u1, u1); }), ErrorKind::PreconditionViolated);
  }
  EXPECT_EQ(kind_of([&] { goldman_element(fx::r4t_tau()); }), ErrorKind::NotInterchange);
}

TEST(Clifford, TensorDecompositionWitness) {
  const auto direct_sum_with_plane = [](const Isometry& a) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    Matrix q(f, n + 2, n + 2), t = Matrix::identity(f, n + 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        q(i, j) = a.space().qmat()(i, j);
        t(i, j) = a.matrix()(i, j);
      }
    q(n, n + 1) = f.one();
    return make_isometry(QuadraticSpace::from_upper(q), t);
  };
  struct Case {
    Isometry tau;
    std::vector<FactorKind> kinds;
  };
  const std::vector<Case> cases{
      {fx::r4t_tau(), {FactorKind::Reflection, FactorKind::Reflection}},
      {fx::h4f2_tau(), {FactorKind::Interchange}},
      {direct_sum_with_plane(fx::h4f2_tau()), {FactorKind::IdentityPlane, FactorKind::Interchange}},
      {identity_isometry(fx::h4f2_space()), {FactorKind::IdentityPlane, FactorKind::IdentityPlane}},
      {direct_sum_with_plane(fx::r2t_tau()), {FactorKind::IdentityPlane, FactorKind::Reflection}},
  };
  for (const auto& c : cases) {
    const TensorWitness w = tensor_decomposition_witness(c.tau);
    EXPECT_TRUE(w.verified());
    ASSERT_EQ(w.factors.size(), c.kinds.size());
    for (std::size_t i = 0; i < c.kinds.size(); ++i) EXPECT_EQ(w.factors[i].kind, c.kinds[i]);
  }
}
