#pragma once

// Characteristic-2 Clifford algebras C(q) with the natural involution J_tau
// and the invariants read off from the Wall form: involution type, the
// Phi-subalgebra, alternating generators, the Pfister invariant, the
// transpose-isomorphism criterion with an explicit matrix model over finite
// fields, Goldman elements and tensor decomposition witnesses.

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wallform/decompose.hpp"

namespace wallform {

/// Largest number of generators supported by CliffordAlgebra.
inline constexpr std::size_t kMaxCliffordGenerators = 8;

class CliffordElement;

/// C(q) for a quadratic form over a field of characteristic 2. Basis elements
/// are indexed by bitmasks S (generator product e_i for i in S, increasing
/// order). Relations: e_i^2 = q(e_i), e_j e_i = e_i e_j + B[i][j].
class CliffordAlgebra {
 public:
  struct Term {
    std::uint32_t mask;
    Element coeff;
  };

  CliffordAlgebra() = default;

  explicit CliffordAlgebra(const QuadraticForm& q) {
    if (q.field().characteristic() != 2) fail(ErrorKind::CharacteristicNot2, "Clifford algebras are built in characteristic 2 only");
    if (q.dim() > kMaxCliffordGenerators) fail(ErrorKind::TooLarge, "too many Clifford generators");
    auto d = std::make_shared<Data>();
    d->q = q;
    d->n = q.dim();
    d->size = std::size_t{1} << d->n;
    const Matrix b = q.polar_gram();
    d->table.resize(d->size * d->size);
    for (std::uint32_t s = 0; s < d->size; ++s)
      for (std::uint32_t t = 0; t < d->size; ++t) d->table[s * d->size + t] = basis_product(q, b, s, t);
    d_ = std::move(d);
  }

  Field field() const { return d_->q.field(); }
  std::size_t generators() const { return d_->n; }
  /// 2^n.
  std::size_t dim() const { return d_->size; }
  const QuadraticForm& form() const { return d_->q; }

  /// e_S e_T as a combination of basis elements.
  const std::vector<Term>& product(std::uint32_t s, std::uint32_t t) const { return d_->table[s * d_->size + t]; }

  inline CliffordElement zero() const;
  inline CliffordElement one() const;
  inline CliffordElement scalar(const Element& c) const;
  inline CliffordElement basis(std::uint32_t mask) const;
  /// Image of v in V under V -> C(q).
  inline CliffordElement vector(const Vec& v) const;
  inline CliffordElement from_coefficients(Vec c) const;

  friend bool operator==(const CliffordAlgebra& a, const CliffordAlgebra& b) { return a.d_ == b.d_ || a.d_->q == b.d_->q; }

 private:
  struct Data {
    QuadraticForm q;
    std::size_t n = 0;
    std::size_t size = 1;
    std::vector<std::vector<Term>> table;
  };

  // e_S e_k as a sparse combination.
  static std::vector<Term> times_generator(const QuadraticForm& q, const Matrix& b, std::uint32_t s, unsigned k) {
    const Field f = q.field();
    if (s == 0) return {{1u << k, f.one()}};
    const unsigned top = 31 - static_cast<unsigned>(std::countl_zero(s));
    if (top < k) return {{s | (1u << k), f.one()}};
    const std::uint32_t rest = s & ~(1u << top);
    if (top == k) return {{rest, q.upper()(k, k)}};
    // e_rest e_top e_k = (e_rest e_k) e_top + B[k][top] e_rest; every index of e_rest e_k is below top.
    std::vector<Term> out;
    for (auto& term : times_generator(q, b, rest, k)) out.push_back({term.mask | (1u << top), term.coeff});
    if (!b(k, top).is_zero()) out.push_back({rest, b(k, top)});
    return out;
  }

  static std::vector<Term> basis_product(const QuadraticForm& q, const Matrix& b, std::uint32_t s, std::uint32_t t) {
    const Field f = q.field();
    const std::size_t size = std::size_t{1} << q.dim();
    Vec acc = zero_vec(f, size);
    acc[s] = f.one();
    for (unsigned k = 0; k < q.dim(); ++k) {
      if (!((t >> k) & 1u)) continue;
      Vec next = zero_vec(f, size);
      for (std::uint32_t m = 0; m < size; ++m) {
        if (acc[m].is_zero()) continue;
        for (const auto& term : times_generator(q, b, m, k)) next[term.mask] += acc[m] * term.coeff;
      }
      acc = std::move(next);
    }
    std::vector<Term> out;
    for (std::uint32_t m = 0; m < size; ++m)
      if (!acc[m].is_zero()) out.push_back({m, acc[m]});
    return out;
  }

  std::shared_ptr<const Data> d_;
};

/// Dense coefficient vector over the 2^n subset basis.
class CliffordElement {
 public:
  CliffordElement(CliffordAlgebra alg, Vec coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (c_.size() != alg_.dim()) fail(ErrorKind::DimensionMismatch, "coefficient vector has wrong length");
  }

  const CliffordAlgebra& algebra() const { return alg_; }
  const Vec& coefficients() const { return c_; }
  const Element& coeff(std::uint32_t mask) const { return c_[mask]; }

  bool is_zero() const { return wallform::is_zero(c_); }
  bool is_scalar() const {
    for (std::size_t m = 1; m < c_.size(); ++m)
      if (!c_[m].is_zero()) return false;
    return true;
  }
  const Element& scalar_part() const { return c_[0]; }

  friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
    check(a, b);
    return CliffordElement(a.alg_, a.c_ + b.c_);
  }
  friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
    check(a, b);
    return CliffordElement(a.alg_, a.c_ - b.c_);
  }
  friend CliffordElement operator*(const Element& s, const CliffordElement& a) { return CliffordElement(a.alg_, s * a.c_); }

  friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
    check(a, b);
    Vec out = zero_vec(a.alg_.field(), a.c_.size());
    for (std::uint32_t s = 0; s < a.c_.size(); ++s) {
      if (a.c_[s].is_zero()) continue;
      for (std::uint32_t t = 0; t < b.c_.size(); ++t) {
        if (b.c_[t].is_zero()) continue;
        const Element st = a.c_[s] * b.c_[t];
        for (const auto& term : a.alg_.product(s, t)) out[term.mask] += st * term.coeff;
      }
    }
    return CliffordElement(a.alg_, std::move(out));
  }

  friend bool operator==(const CliffordElement& a, const CliffordElement& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

  std::string to_string() const {
    std::string s;
    for (std::uint32_t m = 0; m < c_.size(); ++m) {
      if (c_[m].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string mono;
      for (unsigned i = 0; i < 32; ++i)
        if ((m >> i) & 1u) mono += "e" + std::to_string(i + 1);
      const std::string c = c_[m].to_string();
      if (mono.empty()) s += c;
      else if (c_[m].is_one()) s += mono;
      else s += "(" + c + ")" + mono;
    }
    return s.empty() ? "0" : s;
  }

 private:
  static void check(const CliffordElement& a, const CliffordElement& b) {
    if (!(a.alg_ == b.alg_)) fail(ErrorKind::AlgebraMismatch, "elements of different Clifford algebras");
  }

  CliffordAlgebra alg_;
  Vec c_;
};

inline CliffordElement CliffordAlgebra::zero() const { return CliffordElement(*this, zero_vec(field(), dim())); }
inline CliffordElement CliffordAlgebra::one() const { return basis(0); }
inline CliffordElement CliffordAlgebra::scalar(const Element& c) const { return c * one(); }
inline CliffordElement CliffordAlgebra::basis(std::uint32_t mask) const {
  return CliffordElement(*this, unit_vec(field(), dim(), mask));
}
inline CliffordElement CliffordAlgebra::vector(const Vec& v) const {
  if (v.size() != generators()) fail(ErrorKind::DimensionMismatch, "vector length differs from generator count");
  Vec c = zero_vec(field(), dim());
  for (std::size_t i = 0; i < v.size(); ++i) c[std::size_t{1} << i] = v[i];
  return CliffordElement(*this, std::move(c));
}
inline CliffordElement CliffordAlgebra::from_coefficients(Vec c) const { return CliffordElement(*this, std::move(c)); }

/// Matrix of x -> a x (left = true) or x -> x a on the subset basis.
inline Matrix multiplication_matrix(const CliffordElement& a, bool left) {
  const CliffordAlgebra& alg = a.algebra();
  std::vector<Vec> cols;
  for (std::uint32_t t = 0; t < alg.dim(); ++t)
    cols.push_back((left ? a * alg.basis(t) : alg.basis(t) * a).coefficients());
  return Matrix::from_columns(alg.field(), alg.dim(), cols);
}

/// Some h with a h = 1, if a is invertible.
inline std::optional<CliffordElement> clifford_inverse(const CliffordElement& a) {
  const auto h = solve(multiplication_matrix(a, true), a.algebra().one().coefficients());
  if (!h) return std::nullopt;
  CliffordElement inv = a.algebra().from_coefficients(*h);
  if (!(inv * a == a.algebra().one())) return std::nullopt;
  return inv;
}

/// Dimension of the center; 1 exactly when C(q) is central.
inline std::size_t center_dimension(const CliffordAlgebra& alg) {
  Matrix constraints(alg.field(), 0, alg.dim());
  for (std::size_t i = 0; i < alg.generators(); ++i) {
    const CliffordElement e = alg.basis(1u << i);
    constraints = stack(constraints, multiplication_matrix(e, true) - multiplication_matrix(e, false));
  }
  return alg.dim() - rank(constraints);
}

/// An involution of C(q) stored as its matrix on the subset basis.
class AlgebraInvolution {
 public:
  AlgebraInvolution(CliffordAlgebra alg, Matrix j) : alg_(std::move(alg)), j_(std::move(j)) {}

  const CliffordAlgebra& algebra() const { return alg_; }
  const Matrix& matrix() const { return j_; }

  CliffordElement operator()(const CliffordElement& a) const { return alg_.from_coefficients(j_ * a.coefficients()); }

  /// id + J; Alt = image, Sym = kernel (characteristic 2).
  Matrix alt_map() const { return Matrix::identity(alg_.field(), alg_.dim()) + j_; }

  /// Some a with a + J(a) = x, i.e. a witness for x in Alt(C(q), J).
  std::optional<CliffordElement> alt_witness(const CliffordElement& x) const {
    const auto a = solve(alt_map(), x.coefficients());
    if (!a) return std::nullopt;
    return alg_.from_coefficients(*a);
  }

  bool is_symmetric_element(const CliffordElement& x) const { return (*this)(x) == x; }

  std::size_t alt_dim() const { return rank(alt_map()); }
  std::size_t sym_dim() const { return alg_.dim() - alt_dim(); }

  bool squares_to_identity() const { return j_ * j_ == Matrix::identity(alg_.field(), alg_.dim()); }

  /// J(e_S e_T) = J(e_T) J(e_S) for every basis pair.
  bool is_anti_multiplicative() const {
    for (std::uint32_t s = 0; s < alg_.dim(); ++s)
      for (std::uint32_t t = 0; t < alg_.dim(); ++t) {
        const auto es = alg_.basis(s), et = alg_.basis(t);
        if (!((*this)(es * et) == (*this)(et) * (*this)(es))) return false;
      }
    return true;
  }

 private:
  CliffordAlgebra alg_;
  Matrix j_;
};

namespace detail {

inline void require_char2(const Isometry& tau) {
  if (tau.field().characteristic() != 2) fail(ErrorKind::CharacteristicNot2, "characteristic 2 required");
}

inline void require_involution(const Isometry& tau) {
  require_char2(tau);
  if (!is_involution(tau)) fail(ErrorKind::NotInvolution, "tau^2 != id");
}

inline void require_residual_fixed(const Isometry& tau) {
  require_involution(tau);
  if (!(residual_space(tau) == fixed_space(tau))) fail(ErrorKind::ResidualNotFixed, "r(tau) != k(tau)");
}

/// Product of the given Clifford elements indexed by the bits of mask, in increasing order.
inline CliffordElement monomial(const CliffordAlgebra& alg, const std::vector<CliffordElement>& gens, std::uint32_t mask) {
  CliffordElement p = alg.one();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if ((mask >> i) & 1u) p = p * gens[i];
  return p;
}

}  // namespace detail

/// J_tau: the anti-automorphism with J(v) = tau(v) on V, so
/// J(e_{i1} ... e_{il}) = tau(e_{il}) ... tau(e_{i1}).
inline AlgebraInvolution natural_involution(const Isometry& tau, const CliffordAlgebra& alg) {
  detail::require_involution(tau);
  if (!(alg.form() == tau.space().form())) fail(ErrorKind::AlgebraMismatch, "algebra is not C(q) for tau's space");
  std::vector<CliffordElement> images;
  for (std::size_t i = 0; i < tau.dim(); ++i) images.push_back(alg.vector(tau.matrix().col(i)));
  std::vector<Vec> cols;
  for (std::uint32_t s = 0; s < alg.dim(); ++s) {
    CliffordElement p = alg.one();
    for (std::size_t i = tau.dim(); i-- > 0;)
      if ((s >> i) & 1u) p = p * images[i];
    cols.push_back(p.coefficients());
  }
  return AlgebraInvolution(alg, Matrix::from_columns(alg.field(), alg.dim(), cols));
}

inline AlgebraInvolution natural_involution(const Isometry& tau) {
  detail::require_involution(tau);
  return natural_involution(tau, CliffordAlgebra(tau.space().form()));
}

enum class InvolutionType { Orthogonal, Symplectic };

inline const char* to_string(InvolutionType t) { return t == InvolutionType::Orthogonal ? "orthogonal" : "symplectic"; }

/// Symplectic iff 1 lies in Alt(C(q), J) = image(id + J).
inline InvolutionType involution_type(const AlgebraInvolution& j) {
  return j.alt_witness(j.algebra().one()) ? InvolutionType::Symplectic : InvolutionType::Orthogonal;
}

struct PhiAlgebra {
  CliffordAlgebra algebra;
  std::vector<Vec> generators;              // basis u_1..u_s of r(tau)
  std::vector<Element> generator_squares;   // u_i^2 = q(u_i)
  std::vector<CliffordElement> basis;       // monomials indexed by subsets of {1..s}
  std::size_t dim = 0;
  bool commutative = false;
  bool in_sym = false;
  bool squares_central = false;
  bool self_centralizing = false;
  bool isomorphic_to_restricted_clifford = false;

  bool verified() const {
    return dim == (std::size_t{1} << generators.size()) && commutative && in_sym && squares_central && self_centralizing &&
           isomorphic_to_restricted_clifford;
  }
};

/// The subalgebra generated by r(tau) inside C(q), checked against every
/// defining property and against the natural map C(q|r(tau)) -> C(q).
inline PhiAlgebra phi_subalgebra(const Isometry& tau) {
  detail::require_residual_fixed(tau);
  const CliffordAlgebra alg(tau.space().form());
  const AlgebraInvolution j = natural_involution(tau, alg);
  const Subspace r = residual_space(tau);

  PhiAlgebra phi{alg, r.vectors(), {}, {}, 0, true, true, true, false, true};
  std::vector<CliffordElement> gens;
  for (const auto& u : phi.generators) {
    gens.push_back(alg.vector(u));
    phi.generator_squares.push_back(tau.space().eval_q(u));
  }
  const std::uint32_t count = 1u << gens.size();
  for (std::uint32_t m = 0; m < count; ++m) phi.basis.push_back(detail::monomial(alg, gens, m));

  std::vector<Vec> rows;
  for (const auto& b : phi.basis) rows.push_back(b.coefficients());
  phi.dim = rank(Matrix::from_rows(alg.field(), alg.dim(), rows));

  for (std::uint32_t a = 0; a < count; ++a) {
    phi.in_sym = phi.in_sym && j.is_symmetric_element(phi.basis[a]);
    phi.squares_central = phi.squares_central && (phi.basis[a] * phi.basis[a]).is_scalar();
    for (std::uint32_t b = a + 1; b < count; ++b)
      phi.commutative = phi.commutative && phi.basis[a] * phi.basis[b] == phi.basis[b] * phi.basis[a];
  }

  Matrix constraints(alg.field(), 0, alg.dim());
  for (const auto& g : gens) constraints = stack(constraints, multiplication_matrix(g, true) - multiplication_matrix(g, false));
  phi.self_centralizing = alg.dim() - rank(constraints) == phi.dim;

  const CliffordAlgebra restricted(tau.space().form().restrict_to(r.basis()));
  for (std::uint32_t a = 0; a < count && phi.isomorphic_to_restricted_clifford; ++a)
    for (std::uint32_t b = 0; b < count && phi.isomorphic_to_restricted_clifford; ++b) {
      CliffordElement image = alg.zero();
      for (const auto& term : restricted.product(a, b)) image = image + term.coeff * phi.basis[term.mask];
      phi.isomorphic_to_restricted_clifford = image == phi.basis[a] * phi.basis[b];
    }
  return phi;
}

struct AlternatingGeneratorsReport {
  bool holds = false;
  std::vector<std::uint32_t> subsets;           // nonempty subsets of {1..s}
  std::vector<CliffordElement> products;        // u_{i1} ... u_{il}
  std::vector<CliffordElement> witnesses;       // a with a + J(a) = product
};

/// Checks that an omega-orthogonal basis of r(tau) is a set of alternating
/// generators: pairwise commuting, u_i^2 = q(u_i) != 0, and every nonempty
/// product lies in Alt(C(q), J_tau).
inline AlternatingGeneratorsReport alternating_generators_check(const Isometry& tau, const std::vector<Vec>& basis) {
  detail::require_residual_fixed(tau);
  const WallForm wf = wall_form(tau);
  const QuadraticSpace& space = tau.space();
  for (const auto& u : basis)
    if (!wf.residual().contains(u)) fail(ErrorKind::NotInResidual, "generator is not in r(tau)");
  for (const auto& u : basis)
    if (wf.evaluate(u, u).is_zero()) fail(ErrorKind::ZeroSquare, "omega(u, u) = 0");
  if (basis.size() != wf.dim() || Subspace::span(tau.field(), tau.dim(), basis).dim() != wf.dim())
    fail(ErrorKind::NotOrthogonalBasis, "vectors do not form a basis of r(tau)");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (i != k && !wf.evaluate(basis[i], basis[k]).is_zero()) fail(ErrorKind::NotOrthogonalBasis, "basis is not omega-orthogonal");

  const CliffordAlgebra alg(space.form());
  const AlgebraInvolution j = natural_involution(tau, alg);
  std::vector<CliffordElement> gens;
  for (const auto& u : basis) gens.push_back(alg.vector(u));

  AlternatingGeneratorsReport rep;
  rep.holds = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const CliffordElement sq = gens[i] * gens[i];
    rep.holds = rep.holds && sq == alg.scalar(space.eval_q(basis[i])) && !sq.is_zero();
    for (std::size_t k = i + 1; k < gens.size(); ++k) rep.holds = rep.holds && gens[i] * gens[k] == gens[k] * gens[i];
  }
  for (std::uint32_t m = 1; m < (1u << gens.size()); ++m) {
    const CliffordElement p = detail::monomial(alg, gens, m);
    auto w = j.alt_witness(p);
    rep.subsets.push_back(m);
    rep.products.push_back(p);
    if (!w) {
      rep.holds = false;
      rep.witnesses.push_back(alg.zero());
    } else {
      rep.witnesses.push_back(*w);
    }
  }
  return rep;
}

/// The bilinear Pfister form <<a_1, ..., a_s>>, stored by its generators.
struct PfisterDescriptor {
  std::vector<Element> generators;
  std::vector<bool> square;  // generator i lies in F^2

  std::vector<std::string> to_strings() const {
    std::vector<std::string> r;
    for (const auto& g : generators) r.push_back(g.to_string());
    return r;
  }
};

/// Multiset equality of generator square classes ("structural equality"):
/// sufficient for isometry of the Pfister forms, not necessary.
inline bool structurally_equal(const PfisterDescriptor& a, const PfisterDescriptor& b) {
  if (a.generators.size() != b.generators.size()) return false;
  std::vector<bool> used(b.generators.size(), false);
  for (const auto& g : a.generators) {
    bool matched = false;
    for (std::size_t i = 0; i < b.generators.size() && !matched; ++i)
      if (!used[i] && same_square_class(g, b.generators[i])) used[i] = matched = true;
    if (!matched) return false;
  }
  return true;
}

/// Alternating Wall form: <<1, ..., 1>> (s ones). Otherwise the diagonal of an
/// orthogonal basis of the Wall form.
inline PfisterDescriptor pfister_invariant(const Isometry& tau) {
  detail::require_residual_fixed(tau);
  const WallForm wf = wall_form(tau);
  PfisterDescriptor p;
  if (wf.form().is_alternating()) {
    p.generators.assign(wf.dim(), tau.field().one());
  } else {
    for (const auto& c : orthogonal_basis(wf.form())) p.generators.push_back(wf.form().eval(c, c));
  }
  for (const auto& g : p.generators) p.square.push_back(is_square(g));
  return p;
}

struct TransposeCriterion {
  bool q_values_square = false;      // q(x) in F^2 for x in r(tau)
  bool omega_values_square = false;  // omega(x, x) in F^2 for x in r(tau)
  bool split_form = false;           // omega ~ n H or omega ~ n<1>
  bool holds() const { return q_values_square; }
};

/// The three computable conditions for (C(q), J_tau) ~ (M_{2^n}(F), t). q is
/// F^2-semilinear on the totally singular r(tau), so a basis suffices.
inline TransposeCriterion transpose_iso_criterion(const Isometry& tau) {
  detail::require_residual_fixed(tau);
  const WallForm wf = wall_form(tau);
  TransposeCriterion c{true, true, true};
  for (const auto& u : wf.residual_basis()) c.q_values_square = c.q_values_square && is_square(tau.space().eval_q(u));
  for (std::size_t i = 0; i < wf.dim(); ++i) c.omega_values_square = c.omega_values_square && is_square(wf.gram()(i, i));
  if (!wf.form().is_alternating())
    for (const auto& v : orthogonal_basis(wf.form())) c.split_form = c.split_form && is_square(wf.form().eval(v, v));
  if (c.q_values_square != c.omega_values_square || c.omega_values_square != c.split_form)
    fail(ErrorKind::InternalError, "transpose-isomorphism conditions disagree");
  return c;
}

/// An algebra isomorphism f: C(q) -> M_N(F) given on the subset basis.
struct MatrixIso {
  CliffordAlgebra algebra;
  std::size_t degree = 0;
  std::vector<Matrix> images;  // f(e_S)
  bool multiplicative = false;
  bool bijective = false;
  bool transpose_compatible = false;

  bool verified() const { return multiplicative && bijective && transpose_compatible; }

  Matrix apply(const CliffordElement& a) const {
    Matrix m(algebra.field(), degree, degree);
    for (std::uint32_t s = 0; s < algebra.dim(); ++s)
      if (!a.coeff(s).is_zero()) m = m + a.coeff(s) * images[s];
    return m;
  }
};

namespace detail {

/// First nontrivial idempotent of span{1, e, f, ef} in lexicographic order
/// of the coefficient tuple.
inline std::optional<CliffordElement> plane_idempotent(const CliffordAlgebra& alg, const Vec& e, const Vec& f) {
  const Field fld = alg.field();
  const CliffordElement ce = alg.vector(e), cf = alg.vector(f);
  const std::array<CliffordElement, 4> span{alg.one(), ce, cf, ce * cf};
  const std::uint64_t q = fld.order();
  const std::uint64_t total = q * q * q * q;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    CliffordElement x = alg.zero();
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto c = fld.element(static_cast<std::uint32_t>(rest % q));
      rest /= q;
      if (!c.is_zero()) x = x + c * span[i];
    }
    if (x == alg.one()) continue;
    if (x * x == x) return x;
  }
  return std::nullopt;
}

}  // namespace detail

/// Explicit isomorphism (C(q), J_tau) -> (M_{2^n}(F), transpose) over a finite
/// field. C(q) acts on a minimal left ideal C(q) e, where e is the product of
/// idempotents found in the quaternion algebras of an orthogonal splitting of
/// V into planes; J_tau is adjoint to a symmetric form on the ideal, and an
/// orthonormal basis of that form turns J_tau into the transpose.
namespace detail {

inline MatrixIso build_matrix_iso(const Isometry& tau) {
  const QuadraticSpace& space = tau.space();
  const Field f = space.field();
  const CliffordAlgebra alg(space.form());
  const AlgebraInvolution j = natural_involution(tau, alg);

  CliffordElement eps = alg.one();
  for (const auto& [e, h] : regular_planes(space, Subspace::whole(f, space.dim()))) {
    auto idem = detail::plane_idempotent(alg, e, h);
    if (!idem) fail(ErrorKind::InternalError, "quaternion factor has no nontrivial idempotent");
    eps = eps * *idem;
  }

  std::vector<Vec> spanning;
  for (std::uint32_t s = 0; s < alg.dim(); ++s) spanning.push_back((alg.basis(s) * eps).coefficients());
  const Subspace ideal = Subspace::span(f, alg.dim(), spanning);
  const std::size_t n_deg = ideal.dim();
  if (n_deg * n_deg != alg.dim()) fail(ErrorKind::InternalError, "left ideal is not minimal");
  const auto ideal_basis = ideal.vectors();

  auto left_action = [&](const CliffordElement& a) {
    std::vector<Vec> cols;
    for (const auto& m : ideal_basis) {
      auto c = ideal.coordinates((a * alg.from_coefficients(m)).coefficients());
      if (!c) fail(ErrorKind::InternalError, "left ideal is not closed");
      cols.push_back(std::move(*c));
    }
    return Matrix::from_columns(f, n_deg, cols);
  };

  // L_a^T G = G L_{J(a)} for every generator a.
  const std::size_t nn = n_deg * n_deg;
  Matrix constraints(f, 0, nn);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const CliffordElement a = alg.basis(1u << i);
    const Matrix la = left_action(a), lja = left_action(j(a));
    Matrix block(f, nn, nn);
    for (std::size_t p = 0; p < n_deg; ++p)
      for (std::size_t q = 0; q < n_deg; ++q)
        for (std::size_t r = 0; r < n_deg; ++r) {
          block(p * n_deg + q, r * n_deg + q) += la(r, p);
          block(p * n_deg + q, p * n_deg + r) -= lja(r, q);
        }
    constraints = stack(constraints, block);
  }
  const Matrix sols = kernel(constraints);
  if (sols.rows() == 0) fail(ErrorKind::InternalError, "no form is adjoint to J_tau");
  Matrix g(f, n_deg, n_deg);
  for (std::size_t p = 0; p < n_deg; ++p)
    for (std::size_t q = 0; q < n_deg; ++q) g(p, q) = sols(0, p * n_deg + q);

  std::vector<Vec> cols;
  for (const auto& v : orthogonal_basis(BilinearForm{g})) cols.push_back(sqrt(bilinear(g, v, v)).inverse() * v);
  const Matrix p = Matrix::from_columns(f, n_deg, cols);
  const auto pinv = inverse(p);
  if (!pinv) fail(ErrorKind::InternalError, "orthonormal basis is singular");

  MatrixIso iso{alg, n_deg, {}, true, false, true};
  for (std::uint32_t s = 0; s < alg.dim(); ++s) iso.images.push_back(*pinv * left_action(alg.basis(s)) * p);

  for (std::uint32_t s = 0; s < alg.dim() && iso.multiplicative; ++s)
    for (std::uint32_t t = 0; t < alg.dim() && iso.multiplicative; ++t)
      iso.multiplicative = iso.images[s] * iso.images[t] == iso.apply(alg.basis(s) * alg.basis(t));
  std::vector<Vec> flat;
  for (const auto& m : iso.images) {
    Vec v;
    for (std::size_t r = 0; r < n_deg; ++r)
      for (std::size_t c = 0; c < n_deg; ++c) v.push_back(m(r, c));
    flat.push_back(std::move(v));
  }
  iso.bijective = rank(Matrix::from_rows(f, nn, flat)) == alg.dim();
  for (std::uint32_t s = 0; s < alg.dim() && iso.transpose_compatible; ++s)
    iso.transpose_compatible = iso.apply(j(alg.basis(s))) == iso.images[s].transpose();
  return iso;
}

}  // namespace detail

inline MatrixIso explicit_matrix_iso(const Isometry& tau) {
  detail::require_residual_fixed(tau);
  if (tau.field().kind() != FieldKind::Galois2)
    fail(ErrorKind::UnsupportedField, "explicit isomorphisms are built over finite fields only");
  if (!transpose_iso_criterion(tau).holds()) fail(ErrorKind::CriterionFails, "q(r(tau)) is not contained in F^2");
  return detail::build_matrix_iso(tau);
}

/// Runs the construction without consulting the criterion; true when it
/// yields a verified isomorphism.
inline bool explicit_matrix_iso_exists(const Isometry& tau) {
  detail::require_residual_fixed(tau);
  if (tau.field().kind() != FieldKind::Galois2)
    fail(ErrorKind::UnsupportedField, "explicit isomorphisms are built over finite fields only");
  try {
    return detail::build_matrix_iso(tau).verified();
  } catch (const Error&) {
    return false;
  }
}

/// For a symmetric X with X^2 = c I: whether c is a square (which must hold).
inline bool square_scalar_check(const Matrix& x, const Element& c) {
  if (!x.is_square() || !(x == x.transpose())) fail(ErrorKind::NotSymmetric, "matrix is not symmetric");
  if (!(x * x == c * Matrix::identity(x.field(), x.rows())))
    fail(ErrorKind::NotScalarSquare, "X^2 is not the given scalar matrix");
  return is_square(c);
}

/// g v g^-1 = tau(v) for every basis vector v.
inline bool conjugation_holds(const Isometry& tau, const CliffordElement& g) {
  const auto ginv = clifford_inverse(g);
  if (!ginv) return false;
  const CliffordAlgebra& alg = g.algebra();
  for (std::size_t i = 0; i < tau.dim(); ++i) {
    const Vec e = tau.space().unit(i);
    if (!(g * alg.vector(e) * *ginv == alg.vector(tau(e)))) return false;
  }
  return true;
}

/// g = 1 + w x for the normal basis (x, y, w, z) of an interchange isometry.
inline CliffordElement goldman_element(const Isometry& tau) {
  detail::require_char2(tau);
  if (!is_interchange(tau)) fail(ErrorKind::NotInterchange, "isometry is not an interchange isometry");
  const auto nb = interchange_normal_basis(tau);
  const CliffordAlgebra alg(tau.space().form());
  CliffordElement g = alg.one() + alg.vector(nb[2]) * alg.vector(nb[0]);
  if (!conjugation_holds(tau, g)) fail(ErrorKind::InternalError, "Goldman element does not induce tau");
  return g;
}

/// A basis (u1, v1), b(u1, v1) = 1, of a regular plane V1 with
/// V = V1 + tau(V1) orthogonally: V1 = span(y, x + z) for the normal basis.
inline std::pair<Vec, Vec> interchange_swap_plane(const Isometry& tau) {
  detail::require_char2(tau);
  const auto nb = interchange_normal_basis(tau);
  return {nb[1], nb[0] + nb[3]};
}

/// g = 1 + (u1 + tau(u1)) (v1 + tau(v1)) for a plane V1 = span(u1, v1) with
/// b(u1, v1) = 1, V1 perpendicular to tau(V1) and V = V1 + tau(V1).
inline CliffordElement goldman_element_from_plane(const Isometry& tau, const Vec& u1, const Vec& v1) {
  detail::require_char2(tau);
  if (!is_interchange(tau)) fail(ErrorKind::NotInterchange, "isometry is not an interchange isometry");
  const QuadraticSpace& space = tau.space();
  const Field f = tau.field();
  const Vec tu = tau(u1), tv = tau(v1);
  bool ok = space.eval_b(u1, v1).is_one() && Subspace::span(f, tau.dim(), {u1, v1, tu, tv}).dim() == 4;
  for (const auto* a : {&u1, &v1})
    for (const auto* b : {&tu, &tv}) ok = ok && space.eval_b(*a, *b).is_zero();
  if (!ok) fail(ErrorKind::PreconditionViolated, "plane is not swapped orthogonally by tau");
  const CliffordAlgebra alg(space.form());
  CliffordElement g = alg.one() + alg.vector(u1 + tu) * alg.vector(v1 + tv);
  if (!conjugation_holds(tau, g)) fail(ErrorKind::InternalError, "Goldman element does not induce tau");
  return g;
}

enum class FactorKind { IdentityPlane, Reflection, Interchange };

inline const char* to_string(FactorKind k) {
  switch (k) {
    case FactorKind::IdentityPlane: return "identity";
    case FactorKind::Reflection: return "reflection";
    case FactorKind::Interchange: return "interchange";
  }
  return "?";
}

struct TensorFactor {
  FactorKind kind;
  Subspace summand;
  Isometry restricted;  // tau on the summand, in summand-basis coordinates
};

struct TensorWitness {
  std::vector<TensorFactor> factors;
  bool homomorphic = false;       // each C(q|V_i) -> C(q) is an algebra map
  bool commuting = false;         // images of different factors commute
  bool bijective = false;         // tensor basis images are a basis of C(q)
  bool involution_compatible = false;

  bool verified() const { return homomorphic && commuting && bijective && involution_compatible; }
};

/// (C(q), J_tau) = (C(q|W_1), J_id) x ... x (C(q|V_m), J_{tau_m}) for the
/// decomposition of tau with W split into regular planes; the natural map
/// from the tensor product is checked to be an isomorphism of algebras with
/// involution.
inline TensorWitness tensor_decomposition_witness(const Isometry& tau) {
  detail::require_involution(tau);
  const QuadraticSpace& space = tau.space();
  const Field f = tau.field();
  const Decomposition d = decompose(tau);

  TensorWitness w;
  for (const auto& [e, h] : regular_planes(space, d.W())) {
    const Subspace plane = Subspace::span(f, tau.dim(), {e, h});
    w.factors.push_back({FactorKind::IdentityPlane, plane, restrict_isometry(tau, plane)});
  }
  for (const auto& b : d.blocks()) {
    const Subspace& s = summand(b);
    const FactorKind kind = std::holds_alternative<InterchangeBlock>(b) ? FactorKind::Interchange : FactorKind::Reflection;
    w.factors.push_back({kind, s, restrict_isometry(tau, s)});
  }

  const CliffordAlgebra alg(space.form());
  const AlgebraInvolution j = natural_involution(tau, alg);
  w.homomorphic = w.commuting = w.involution_compatible = true;
  std::vector<std::vector<CliffordElement>> images;
  for (const auto& fac : w.factors) {
    std::vector<CliffordElement> gens;
    for (const auto& v : fac.summand.vectors()) gens.push_back(alg.vector(v));
    const CliffordAlgebra sub(fac.restricted.space().form());
    const AlgebraInvolution jsub = natural_involution(fac.restricted, sub);
    std::vector<CliffordElement> img;
    for (std::uint32_t m = 0; m < sub.dim(); ++m) img.push_back(detail::monomial(alg, gens, m));
    auto map = [&](const CliffordElement& x) {
      CliffordElement r = alg.zero();
      for (std::uint32_t m = 0; m < sub.dim(); ++m)
        if (!x.coeff(m).is_zero()) r = r + x.coeff(m) * img[m];
      return r;
    };
    for (std::uint32_t a = 0; a < sub.dim(); ++a) {
      for (std::uint32_t b = 0; b < sub.dim(); ++b)
        w.homomorphic = w.homomorphic && map(sub.basis(a) * sub.basis(b)) == img[a] * img[b];
      w.involution_compatible = w.involution_compatible && j(img[a]) == map(jsub(sub.basis(a)));
    }
    images.push_back(std::move(img));
  }
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b)
      for (std::size_t i = 0; i < w.factors[a].summand.dim(); ++i)
        for (std::size_t k = 0; k < w.factors[b].summand.dim(); ++k) {
          const auto& x = images[a][1u << i];
          const auto& y = images[b][1u << k];
          w.commuting = w.commuting && x * y == y * x;
        }

  std::vector<Vec> rows{alg.one().coefficients()};
  for (const auto& img : images) {
    std::vector<Vec> next;
    for (const auto& r : rows)
      for (const auto& m : img) next.push_back((alg.from_coefficients(r) * m).coefficients());
    rows = std::move(next);
  }
  w.bijective = rows.size() == alg.dim() && rank(Matrix::from_rows(f, alg.dim(), rows)) == alg.dim();
  return w;
}

}  // namespace wallform
