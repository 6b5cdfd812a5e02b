#pragma once

// Decomposition of isometries with (tau - id)^2 = 0 into an identity part W and
// an orthogonal sum of interchange isometries (alternating Wall form) or of
// 2-dimensional reflections (nonalternating Wall form, characteristic 2).

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wallform/wall.hpp"

namespace wallform {

/// tau restricted to the regular plane span(u, v) is the reflection along u;
/// tau(v) - v = u.
struct ReflectionBlock {
  Vec u, v;
  Subspace plane;
};

/// (x, y, w, z) is a hyperbolic basis of space4 with tau(x) = x, tau(w) = w,
/// tau(y) = y + w and tau(z) = z - x.
struct InterchangeBlock {
  Vec x, y, w, z;
  Subspace space4;
};

using Block = std::variant<ReflectionBlock, InterchangeBlock>;

inline const Subspace& summand(const Block& b) {
  return std::visit([](const auto& blk) -> const Subspace& {
    if constexpr (std::is_same_v<std::decay_t<decltype(blk)>, ReflectionBlock>) return blk.plane;
    else return blk.space4;
  }, b);
}

inline std::vector<Vec> block_vectors(const Block& b) {
  if (const auto* r = std::get_if<ReflectionBlock>(&b)) return {r->u, r->v};
  const auto& i = std::get<InterchangeBlock>(b);
  return {i.x, i.y, i.w, i.z};
}

namespace detail {

inline void require_unipotent2(const Isometry& tau) {
  if (!is_unipotent2(tau)) fail(ErrorKind::NotUnipotent2, "(tau - id)^2 != 0");
}

/// Some y in `within` with (tau - id) y = target.
inline std::optional<Vec> preimage_within(const Isometry& tau, const Vec& target, const Subspace& within) {
  if (within.dim() == 0) {
    if (is_zero(target)) return zero_vec(tau.field(), tau.dim());
    return std::nullopt;
  }
  const auto c = solve(tau.displacement() * within.basis().transpose(), target);
  if (!c) return std::nullopt;
  return within.combine(*c);
}

}  // namespace detail

/// A complement W of r(tau) in k(tau). W is regular and tau = id_W + tau|W^perp.
inline Subspace complement_W(const Isometry& tau) {
  detail::require_unipotent2(tau);
  return complement_in(residual_space(tau), fixed_space(tau));
}

/// The regular plane through u on which tau acts as the reflection along u.
/// Needs characteristic 2, u in r(tau) and omega(u, u) != 0. The preimage of u
/// is taken inside `within` (default: the whole space).
inline ReflectionBlock reflection_block(const Isometry& tau, const Vec& u, const std::optional<Subspace>& within = {}) {
  if (tau.field().characteristic() != 2)
    fail(ErrorKind::CharacteristicNot2, "reflection blocks are only constructed in characteristic 2");
  const QuadraticSpace& space = tau.space();
  if (!residual_space(tau).contains(u)) fail(ErrorKind::NotInResidual, "u is not in r(tau)");
  const auto v = detail::preimage_within(tau, u, within.value_or(Subspace::whole(tau.field(), tau.dim())));
  if (!v) fail(ErrorKind::InternalError, "no preimage of u inside the working subspace");
  // omega(u, u) = b(u, v) for any v with tau(v) - v = u.
  if (space.eval_b(u, *v).is_zero()) fail(ErrorKind::ZeroDiagonal, "omega(u, u) = 0");

  ReflectionBlock blk{u, *v, Subspace::span(tau.field(), tau.dim(), {u, *v})};
  const Isometry ref = reflection(space, u);
  if (!is_regular(space, blk.plane) || tau(u) != ref(u) || tau(*v) != ref(*v))
    fail(ErrorKind::InternalError, "reflection block invariants violated");
  return blk;
}

/// The 4-dimensional regular tau-invariant subspace whose residual space is
/// span(x, w), for a hyperbolic pair omega(x, w) = 1 = -omega(w, x) of the
/// Wall form. Preimages are taken inside `within` and normalized so that
/// (x, y, w, z) is hyperbolic.
inline InterchangeBlock interchange_block(const Isometry& tau, const Vec& x, const Vec& w,
                                          const std::optional<Subspace>& within = {}) {
  detail::require_unipotent2(tau);
  const QuadraticSpace& space = tau.space();
  const Field f = tau.field();
  const Subspace r = residual_space(tau);
  if (!r.contains(x) || !r.contains(w)) fail(ErrorKind::NotInResidual, "pair is not in r(tau)");
  const Subspace where = within.value_or(Subspace::whole(f, tau.dim()));
  // w = tau(y) - y and x = z - tau(z).
  const auto y0 = detail::preimage_within(tau, w, where);
  const auto z0 = detail::preimage_within(tau, -x, where);
  if (!y0 || !z0) fail(ErrorKind::InternalError, "preimage unsolvable inside the working subspace");
  Vec y = *y0, z = *z0;

  const Element wxx = space.eval_b(x, -z), www = space.eval_b(w, y);
  const Element wxw = space.eval_b(x, y), wwx = space.eval_b(w, -z);
  if (!wxx.is_zero() || !www.is_zero() || !wxw.is_one() || wwx != -f.one())
    fail(ErrorKind::NotHyperbolicPair, "omega restricted to (x, w) is not the hyperbolic plane");

  y = y - space.eval_q(y) * x;
  const Element gamma = -space.eval_b(y, z);
  const Element delta = -space.eval_q(z);
  z = z + gamma * x + delta * w;

  InterchangeBlock blk{x, y, w, z, Subspace::span(f, tau.dim(), {x, y, w, z})};
  const std::array<const Vec*, 4> basis{&blk.x, &blk.y, &blk.w, &blk.z};
  bool ok = blk.space4.dim() == 4 && is_regular(space, blk.space4);
  for (std::size_t i = 0; i < 4 && ok; ++i) {
    ok = space.eval_q(*basis[i]).is_zero();
    for (std::size_t j = i + 1; j < 4 && ok; ++j) {
      const bool paired = (i == 0 && j == 1) || (i == 2 && j == 3);
      ok = space.eval_b(*basis[i], *basis[j]) == (paired ? f.one() : f.zero());
    }
  }
  ok = ok && tau(x) == x && tau(w) == w && tau(blk.y) == blk.y + w && tau(blk.z) == blk.z - x;
  if (!ok) fail(ErrorKind::InternalError, "interchange block invariants violated");
  return blk;
}

class Decomposition {
 public:
  Decomposition(Isometry tau, Subspace w, std::vector<Block> blocks, std::size_t s, bool alternating)
      : tau_(std::move(tau)), w_(std::move(w)), blocks_(std::move(blocks)), s_(s), alternating_(alternating) {}

  const Isometry& tau() const { return tau_; }
  const Subspace& W() const { return w_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t m() const { return blocks_.size(); }
  /// dim r(tau).
  std::size_t s() const { return s_; }
  bool alternating() const { return alternating_; }

  /// The matrix defined by the block data alone: identity on W, the
  /// reflection / interchange relations on each block.
  Matrix reassemble() const {
    const Field f = tau_.field();
    const std::size_t n = tau_.dim();
    const QuadraticSpace& space = tau_.space();
    std::vector<Vec> basis, images;
    for (const auto& v : w_.vectors()) {
      basis.push_back(v);
      images.push_back(v);
    }
    for (const auto& b : blocks_) {
      if (const auto* r = std::get_if<ReflectionBlock>(&b)) {
        const Element c = space.eval_b(r->u, r->v) / space.eval_q(r->u);
        basis.push_back(r->u);
        images.push_back(-r->u);
        basis.push_back(r->v);
        images.push_back(r->v - c * r->u);
      } else {
        const auto& i = std::get<InterchangeBlock>(b);
        basis.insert(basis.end(), {i.x, i.y, i.w, i.z});
        images.insert(images.end(), {i.x, i.y + i.w, i.w, i.z - i.x});
      }
    }
    const Matrix p = Matrix::from_columns(f, n, basis);
    const auto pinv = inverse(p);
    if (!pinv) fail(ErrorKind::InternalError, "decomposition summands do not span V");
    return Matrix::from_columns(f, n, images) * *pinv;
  }

  /// Every structural invariant of the decomposition; nullopt when all hold,
  /// otherwise a description of the first violation.
  std::optional<std::string> validate() const {
    const QuadraticSpace& space = tau_.space();
    std::vector<Subspace> parts{w_};
    for (const auto& b : blocks_) parts.push_back(summand(b));
    std::size_t total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total += parts[i].dim();
      if (!is_regular(space, parts[i])) return "summand " + std::to_string(i) + " is not regular";
      for (const auto& v : parts[i].vectors())
        if (!parts[i].contains(tau_(v))) return "summand " + std::to_string(i) + " is not tau-invariant";
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        for (const auto& a : parts[i].vectors())
          for (const auto& b : parts[j].vectors())
            if (!space.eval_b(a, b).is_zero()) return "summands " + std::to_string(i) + ", " + std::to_string(j) + " not orthogonal";
    }
    if (total != tau_.dim()) return std::string("summand dimensions do not add up");
    for (const auto& v : w_.vectors())
      if (tau_(v) != v) return std::string("tau is not the identity on W");
    for (const auto& b : blocks_) {
      if (alternating_ != std::holds_alternative<InterchangeBlock>(b)) return std::string("block kind does not match Wall form");
      if (const auto* r = std::get_if<ReflectionBlock>(&b)) {
        if (space.eval_q(r->u).is_zero() || !r->plane.contains(r->u) || r->plane.dim() != 2)
          return std::string("reflection block malformed");
      }
    }
    if (m() != (alternating_ ? s_ / 2 : s_)) return std::string("block count law violated");
    if (reassemble() != tau_.matrix()) return std::string("reassembled matrix differs from tau");
    return std::nullopt;
  }

 private:
  Isometry tau_;
  Subspace w_;
  std::vector<Block> blocks_;
  std::size_t s_;
  bool alternating_;
};

/// V = W + V_1 + ... + V_m, built block by block inside the running orthogonal
/// complement. Hyperbolic pairs / orthogonal bases of the Wall form are taken
/// in the order produced by hyperbolic_basis_alternating / orthogonal_basis.
inline Decomposition decompose(const Isometry& tau) {
  detail::require_unipotent2(tau);
  const QuadraticSpace& space = tau.space();
  const Subspace w = complement_W(tau);
  Subspace rest = orthogonal_complement(space, w);
  const WallForm wf = wall_form(tau);
  const bool alternating = wf.form().is_alternating();
  std::vector<Block> blocks;

  auto shrink = [&](const Subspace& part) { rest = intersect(rest, orthogonal_complement(space, part)); };

  if (alternating) {
    for (const auto& [xc, wc] : hyperbolic_basis_alternating(wf.form())) {
      const Vec x = wf.to_ambient(xc), wv = wf.to_ambient(wc);
      if (!rest.contains(x) || !rest.contains(wv)) fail(ErrorKind::InternalError, "hyperbolic pair left the working complement");
      auto blk = interchange_block(tau, x, wv, rest);
      shrink(blk.space4);
      blocks.emplace_back(std::move(blk));
    }
  } else {
    for (const auto& uc : orthogonal_basis(wf.form())) {
      const Vec u = wf.to_ambient(uc);
      if (!rest.contains(u)) fail(ErrorKind::InternalError, "orthogonal basis vector left the working complement");
      auto blk = reflection_block(tau, u, rest);
      shrink(blk.plane);
      blocks.emplace_back(std::move(blk));
    }
  }
  if (rest.dim() != 0) fail(ErrorKind::InternalError, "decomposition did not exhaust W^perp");
  return Decomposition(tau, w, std::move(blocks), wf.dim(), alternating);
}

/// In characteristic 2: tau is of interchanging kind iff its Wall form is alternating.
inline bool is_interchanging_kind(const Isometry& tau) {
  if (tau.field().characteristic() != 2) fail(ErrorKind::CharacteristicNot2, "interchanging kind is a characteristic-2 notion");
  detail::require_unipotent2(tau);
  return wall_form(tau).form().is_alternating();
}

/// Hyperbolic basis (x, y, w, z) with (x, w) a basis of k(tau), tau(y) = y + w
/// and tau(z) = z - x.
inline std::array<Vec, 4> interchange_normal_basis(const Isometry& tau) {
  if (!is_interchange(tau)) fail(ErrorKind::NotInterchange, "isometry is not an interchange isometry");
  const WallForm wf = wall_form(tau);
  const auto pairs = hyperbolic_basis_alternating(wf.form());
  if (pairs.size() != 1) fail(ErrorKind::InternalError, "interchange Wall form is not a single hyperbolic plane");
  const auto blk = interchange_block(tau, wf.to_ambient(pairs[0].first), wf.to_ambient(pairs[0].second));
  return {blk.x, blk.y, blk.w, blk.z};
}

}  // namespace wallform
