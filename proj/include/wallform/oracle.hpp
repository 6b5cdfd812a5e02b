#pragma once

// Brute-force enumeration of orthogonal groups over small finite fields and
// exhaustive theorem verification over the enumerated elements.
//
// Enumeration runs on a compact byte representation (field elements as
// indices into precomputed tables); elements are converted to library
// Isometry objects only when a check needs them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "wallform/clifford.hpp"

namespace wallform {

namespace compact {

/// Finite field arithmetic on element indices (Field::element numbering).
class Arith {
 public:
  explicit Arith(Field f) : field_(f) {
    if (!f.is_finite() || f.order() > 256) fail(ErrorKind::TooLarge, "field is not a small finite field");
    q_ = f.order();
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.resize(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      const Element ea = f.element(a);
      neg_[a] = static_cast<std::uint8_t>((-ea).index());
      if (!ea.is_zero()) inv_[a] = static_cast<std::uint8_t>(ea.inverse().index());
      for (unsigned b = 0; b < q_; ++b) {
        const Element eb = f.element(b);
        add_[a * q_ + b] = static_cast<std::uint8_t>((ea + eb).index());
        mul_[a * q_ + b] = static_cast<std::uint8_t>((ea * eb).index());
      }
    }
    one_ = static_cast<std::uint8_t>(f.one().index());
  }

  Field field() const { return field_; }
  unsigned order() const { return q_; }
  std::uint8_t one() const { return one_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }

 private:
  Field field_;
  unsigned q_ = 0;
  std::uint8_t one_ = 1;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

/// Row-major n x n matrix of element indices; columns are images of basis vectors.
using Mat = std::string;
using CVec = std::vector<std::uint8_t>;

class Space {
 public:
  explicit Space(const QuadraticSpace& s) : space_(s), f_(s.field()), n_(s.dim()) {
    if (n_ > 8) fail(ErrorKind::TooLarge, "dimension too large for enumeration");
    count_ = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      count_ *= f_.order();
      if (count_ > (1u << 16)) fail(ErrorKind::TooLarge, "vector space too large for enumeration");
    }
    upper_.resize(n_ * n_);
    gram_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        upper_[i * n_ + j] = static_cast<std::uint8_t>(s.qmat()(i, j).index());
        gram_[i * n_ + j] = static_cast<std::uint8_t>(s.gram()(i, j).index());
      }
    vecs_.resize(count_ * n_);
    qv_.resize(count_);
    for (std::size_t idx = 0; idx < count_; ++idx) {
      std::size_t r = idx;
      for (std::size_t i = 0; i < n_; ++i) {
        vecs_[idx * n_ + i] = static_cast<std::uint8_t>(r % f_.order());
        r /= f_.order();
      }
      qv_[idx] = q(&vecs_[idx * n_]);
    }
  }

  const QuadraticSpace& space() const { return space_; }
  const Arith& arith() const { return f_; }
  std::size_t dim() const { return n_; }
  std::size_t vector_count() const { return count_; }
  const std::uint8_t* vec(std::size_t idx) const { return &vecs_[idx * n_]; }
  std::uint8_t q_of(std::size_t idx) const { return qv_[idx]; }
  std::uint8_t gram(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }

  std::size_t index(const std::uint8_t* v) const {
    std::size_t idx = 0;
    for (std::size_t i = n_; i-- > 0;) idx = idx * f_.order() + v[i];
    return idx;
  }

  std::uint8_t q(const std::uint8_t* v) const {
    std::uint8_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!v[i]) continue;
      std::uint8_t row = 0;
      for (std::size_t j = i; j < n_; ++j) row = f_.add(row, f_.mul(upper_[i * n_ + j], v[j]));
      s = f_.add(s, f_.mul(v[i], row));
    }
    return s;
  }

  std::uint8_t b(const std::uint8_t* x, const std::uint8_t* y) const {
    std::uint8_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!x[i]) continue;
      std::uint8_t row = 0;
      for (std::size_t j = 0; j < n_; ++j) row = f_.add(row, f_.mul(gram_[i * n_ + j], y[j]));
      s = f_.add(s, f_.mul(x[i], row));
    }
    return s;
  }

  Mat identity() const {
    Mat m(n_ * n_, '\0');
    for (std::size_t i = 0; i < n_; ++i) m[i * n_ + i] = static_cast<char>(f_.one());
    return m;
  }

  std::uint8_t at(const Mat& m, std::size_t i, std::size_t j) const { return static_cast<std::uint8_t>(m[i * n_ + j]); }

  void apply(const Mat& m, const std::uint8_t* v, std::uint8_t* out) const {
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint8_t s = 0;
      for (std::size_t j = 0; j < n_; ++j) s = f_.add(s, f_.mul(at(m, i, j), v[j]));
      out[i] = s;
    }
  }

  Mat mul(const Mat& a, const Mat& b) const {
    Mat c(n_ * n_, '\0');
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint8_t s = 0;
        for (std::size_t k = 0; k < n_; ++k) s = f_.add(s, f_.mul(at(a, i, k), at(b, k, j)));
        c[i * n_ + j] = static_cast<char>(s);
      }
    return c;
  }

  Mat minus_identity(const Mat& a) const {
    Mat d = a;
    for (std::size_t i = 0; i < n_; ++i) d[i * n_ + i] = static_cast<char>(f_.sub(at(a, i, i), f_.one()));
    return d;
  }

  bool is_zero(const Mat& m) const {
    return std::all_of(m.begin(), m.end(), [](char c) { return c == 0; });
  }

  bool is_unipotent2(const Mat& m) const {
    const Mat d = minus_identity(m);
    return is_zero(mul(d, d));
  }

  bool is_involution(const Mat& m) const { return mul(m, m) == identity(); }

  /// q(M e_j) = q(e_j) and b(M e_i, M e_j) = b(e_i, e_j).
  bool is_isometry(const Mat& m) const {
    std::vector<CVec> cols(n_, CVec(n_));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) cols[j][i] = at(m, i, j);
    for (std::size_t j = 0; j < n_; ++j) {
      if (q(cols[j].data()) != upper_[j * n_ + j]) return false;
      for (std::size_t i = 0; i < j; ++i)
        if (b(cols[i].data(), cols[j].data()) != gram_[i * n_ + j]) return false;
    }
    return true;
  }

  Mat from_matrix(const Matrix& m) const {
    Mat c(n_ * n_, '\0');
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) c[i * n_ + j] = static_cast<char>(m(i, j).index());
    return c;
  }

  Matrix to_matrix(const Mat& c) const {
    Matrix m(f_.field(), n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = f_.field().element(at(c, i, j));
    return m;
  }

  Isometry to_isometry(const Mat& c) const { return make_isometry(space_, to_matrix(c)); }

  Vec to_vec(const std::uint8_t* v) const {
    Vec r;
    for (std::size_t i = 0; i < n_; ++i) r.push_back(f_.field().element(v[i]));
    return r;
  }

 private:
  QuadraticSpace space_;
  Arith f_;
  std::size_t n_;
  std::size_t count_ = 1;
  std::vector<std::uint8_t> upper_, gram_, vecs_, qv_;
};

/// Row-reduced rank of a list of vectors.
inline std::size_t rank(const Space& s, std::vector<CVec> rows) {
  const Arith& f = s.arith();
  const std::size_t n = s.dim();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const std::uint8_t inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint8_t k = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    ++r;
  }
  return r;
}

/// A subspace given by a basis and the membership set of all its vectors.
struct SubspaceEntry {
  std::vector<CVec> basis;
  std::vector<bool> members;
};

/// All proper nonzero subspaces that are regular for the polar form,
/// generated from reduced row-echelon shapes.
inline std::vector<SubspaceEntry> regular_proper_subspaces(const Space& s) {
  const Arith& f = s.arith();
  const std::size_t n = s.dim();
  const unsigned q = f.order();
  std::vector<SubspaceEntry> out;
  for (std::uint32_t pivmask = 1; pivmask + 1 < (1u << n); ++pivmask) {
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n; ++c)
      if ((pivmask >> c) & 1u) pivots.push_back(c);
    const std::size_t d = pivots.size();
    // Free slots: row i, column c > pivots[i], c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t c = pivots[i] + 1; c < n; ++c)
        if (!((pivmask >> c) & 1u)) slots.emplace_back(i, c);
    std::vector<std::uint8_t> vals(slots.size(), 0);
    while (true) {
      std::vector<CVec> basis(d, CVec(n, 0));
      for (std::size_t i = 0; i < d; ++i) basis[i][pivots[i]] = f.one();
      for (std::size_t k = 0; k < slots.size(); ++k) basis[slots[k].first][slots[k].second] = vals[k];
      std::vector<CVec> g(d, CVec(n, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g[i][j] = s.b(basis[i].data(), basis[j].data());
      // Rank of the restricted Gram matrix, padded rows are length n.
      if (rank(s, g) == d) {
        SubspaceEntry e{basis, std::vector<bool>(s.vector_count(), false)};
        std::size_t total = 1;
        for (std::size_t i = 0; i < d; ++i) total *= q;
        CVec v(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
          std::fill(v.begin(), v.end(), 0);
          std::size_t r = idx;
          for (std::size_t i = 0; i < d; ++i) {
            const std::uint8_t c = static_cast<std::uint8_t>(r % q);
            r /= q;
            for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(c, basis[i][j]));
          }
          e.members[s.index(v.data())] = true;
        }
        out.push_back(std::move(e));
      }
      std::size_t k = 0;
      while (k < vals.size() && ++vals[k] == q) vals[k++] = 0;
      if (k == vals.size()) break;
    }
  }
  return out;
}

/// tau preserves some proper nonzero regular subspace (equivalently splits as
/// an orthogonal sum of two nontrivial restrictions).
inline bool is_decomposable(const Space& s, const std::vector<SubspaceEntry>& regular, const Mat& m) {
  CVec img(s.dim());
  for (const auto& e : regular) {
    bool invariant = true;
    for (const auto& v : e.basis) {
      s.apply(m, v.data(), img.data());
      if (!e.members[s.index(img.data())]) {
        invariant = false;
        break;
      }
    }
    if (invariant) return true;
  }
  return false;
}

/// Search for a hyperbolic basis (x, y, w, z) with (x, w) a basis of k(tau),
/// tau(y) = y + w and tau(z) = z - x. Returns the basis if one exists.
inline std::optional<std::array<CVec, 4>> find_normal_basis(const Space& s, const Mat& m) {
  if (s.dim() != 4) return std::nullopt;
  const Arith& f = s.arith();
  const std::size_t count = s.vector_count();
  const std::size_t n = 4;
  std::vector<std::size_t> disp(count);
  std::vector<std::size_t> fixed;
  CVec img(n), d(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    s.apply(m, s.vec(idx), img.data());
    for (std::size_t i = 0; i < n; ++i) d[i] = f.sub(img[i], s.vec(idx)[i]);
    disp[idx] = s.index(d.data());
    if (disp[idx] == 0) fixed.push_back(idx);
  }
  if (fixed.size() != std::size_t{f.order()} * f.order()) return std::nullopt;
  const std::uint8_t one = f.one();
  for (std::size_t xi : fixed) {
    if (xi == 0 || s.q_of(xi) != 0) continue;
    const std::uint8_t* x = s.vec(xi);
    CVec negx(n);
    for (std::size_t i = 0; i < n; ++i) negx[i] = f.neg(x[i]);
    const std::size_t negxi = s.index(negx.data());
    for (std::size_t wi : fixed) {
      const std::uint8_t* w = s.vec(wi);
      if (wi == 0 || s.q_of(wi) != 0 || s.b(x, w) != 0) continue;
      if (rank(s, {CVec(x, x + n), CVec(w, w + n)}) != 2) continue;
      for (std::size_t yi = 0; yi < count; ++yi) {
        if (disp[yi] != wi || s.q_of(yi) != 0) continue;
        const std::uint8_t* y = s.vec(yi);
        if (s.b(x, y) != one || s.b(w, y) != 0) continue;
        for (std::size_t zi = 0; zi < count; ++zi) {
          if (disp[zi] != negxi || s.q_of(zi) != 0) continue;
          const std::uint8_t* z = s.vec(zi);
          if (s.b(w, z) != one || s.b(x, z) != 0 || s.b(y, z) != 0) continue;
          return std::array<CVec, 4>{CVec(x, x + n), CVec(y, y + n), CVec(w, w + n), CVec(z, z + n)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace compact

enum class GroupMethod { Auto, Exhaustive, Closure };

inline const char* to_string(GroupMethod m) {
  switch (m) {
    case GroupMethod::Auto: return "auto";
    case GroupMethod::Exhaustive: return "exhaustive-matrix-scan";
    case GroupMethod::Closure: return "generator-closure";
  }
  return "?";
}

/// Exhaustive scans are allowed up to |F|^(n^2) matrices; closures up to this many elements.
inline constexpr std::uint64_t kMaxScanMatrices = std::uint64_t{1} << 24;
inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 21;

class GroupEnumeration {
 public:
  GroupEnumeration(std::shared_ptr<const compact::Space> s, GroupMethod m, std::vector<compact::Mat> elems)
      : s_(std::move(s)), method_(m), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
  }

  const QuadraticSpace& space() const { return s_->space(); }
  const compact::Space& compact_space() const { return *s_; }
  GroupMethod method() const { return method_; }
  std::size_t size() const { return elems_.size(); }
  /// Elements in canonical (byte-lexicographic) order.
  const std::vector<compact::Mat>& elements() const { return elems_; }
  Isometry isometry(std::size_t i) const { return s_->to_isometry(elems_[i]); }

  bool contains(const Matrix& m) const { return std::binary_search(elems_.begin(), elems_.end(), s_->from_matrix(m)); }

 private:
  std::shared_ptr<const compact::Space> s_;
  GroupMethod method_;
  std::vector<compact::Mat> elems_;
};

inline bool scan_feasible(const QuadraticSpace& space) {
  if (!space.field().is_finite()) return false;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < space.dim() * space.dim(); ++i) {
    total *= space.field().order();
    if (total > kMaxScanMatrices) return false;
  }
  return true;
}

namespace detail {

// Column-by-column backtracking: column j ranges over vectors v with
// q(v) = q(e_j) and b(c_i, v) = b(e_i, e_j) for the columns already chosen.
// This visits exactly the matrices a full scan with make_isometry accepts.
inline std::vector<compact::Mat> scan_isometries(const compact::Space& s) {
  const std::size_t n = s.dim();
  std::vector<std::vector<std::size_t>> by_q(s.arith().order());
  for (std::size_t idx = 0; idx < s.vector_count(); ++idx) by_q[s.q_of(idx)].push_back(idx);
  std::vector<std::uint8_t> diag(n);
  const Matrix& u = s.space().qmat();
  for (std::size_t j = 0; j < n; ++j) diag[j] = static_cast<std::uint8_t>(u(j, j).index());

  std::vector<compact::Mat> out;
  std::vector<std::size_t> cols(n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      compact::Mat m(n * n, '\0');
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) m[i * n + c] = static_cast<char>(s.vec(cols[c])[i]);
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t idx : by_q[diag[j]]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) ok = s.b(s.vec(cols[i]), s.vec(idx)) == s.gram(i, j);
      if (!ok) continue;
      cols[j] = idx;
      rec(j + 1);
    }
  };
  rec(0);
  return out;
}

inline compact::Mat compact_reflection(const compact::Space& s, const std::uint8_t* u) {
  const auto& f = s.arith();
  const std::size_t n = s.dim();
  const std::uint8_t inv = f.inv(s.q(u));
  compact::Mat m = s.identity();
  compact::CVec e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0);
    e[j] = f.one();
    const std::uint8_t c = f.mul(inv, s.b(u, e.data()));
    for (std::size_t i = 0; i < n; ++i)
      m[i * n + j] = static_cast<char>(f.sub(static_cast<std::uint8_t>(m[i * n + j]), f.mul(c, u[i])));
  }
  return m;
}

inline compact::Mat compact_eichler(const compact::Space& s, const std::uint8_t* x, const std::uint8_t* w) {
  const auto& f = s.arith();
  const std::size_t n = s.dim();
  const std::uint8_t qw = s.q(w);
  compact::Mat m = s.identity();
  compact::CVec e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0);
    e[j] = f.one();
    const std::uint8_t bx = s.b(e.data(), x), bw = s.b(e.data(), w);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint8_t v = static_cast<std::uint8_t>(m[i * n + j]);
      v = f.add(v, f.mul(bx, w[i]));
      v = f.sub(v, f.mul(bw, x[i]));
      v = f.sub(v, f.mul(f.mul(qw, bx), x[i]));
      m[i * n + j] = static_cast<char>(v);
    }
  }
  return m;
}

// Subgroup generated by all reflections and all Eichler transformations. A
// candidate generator is adjoined only when it lies outside the current
// closure; new elements are multiplied by every generator, old elements only
// by the new one.
inline std::vector<compact::Mat> closure_isometries(const compact::Space& s) {
  const std::size_t count = s.vector_count();
  std::vector<compact::Mat> elems{s.identity()};
  std::unordered_set<compact::Mat> seen{s.identity()};
  std::vector<compact::Mat> gens;

  auto adjoin = [&](const compact::Mat& g) {
    if (seen.count(g)) return;
    gens.push_back(g);
    std::vector<compact::Mat> work;
    for (const auto& e : elems) {
      compact::Mat p = s.mul(e, g);
      if (seen.insert(p).second) work.push_back(std::move(p));
    }
    while (!work.empty()) {
      compact::Mat e = std::move(work.back());
      work.pop_back();
      for (const auto& h : gens) {
        compact::Mat p = s.mul(e, h);
        if (seen.insert(p).second) work.push_back(std::move(p));
      }
      elems.push_back(std::move(e));
      if (elems.size() > kMaxGroupOrder) fail(ErrorKind::TooLarge, "group closure exceeds the enumeration limit");
    }
  };

  for (std::size_t u = 1; u < count; ++u)
    if (s.q_of(u) != 0) adjoin(compact_reflection(s, s.vec(u)));
  for (std::size_t x = 1; x < count; ++x) {
    if (s.q_of(x) != 0) continue;
    for (std::size_t w = 0; w < count; ++w)
      if (s.b(s.vec(x), s.vec(w)) == 0) adjoin(compact_eichler(s, s.vec(x), s.vec(w)));
  }
  return elems;
}

}  // namespace detail

inline GroupEnumeration enumerate_orthogonal_group(const QuadraticSpace& space, GroupMethod method = GroupMethod::Auto) {
  if (!space.field().is_finite()) fail(ErrorKind::TooLarge, "only finite fields can be enumerated");
  auto s = std::make_shared<const compact::Space>(space);
  if (method == GroupMethod::Auto) method = scan_feasible(space) ? GroupMethod::Exhaustive : GroupMethod::Closure;
  if (method == GroupMethod::Exhaustive) {
    if (!scan_feasible(space)) fail(ErrorKind::TooLarge, "matrix scan exceeds 2^24 candidates");
    auto elems = detail::scan_isometries(*s);
    return GroupEnumeration(s, method, std::move(elems));
  }
  auto elems = detail::closure_isometries(*s);
  return GroupEnumeration(s, method, std::move(elems));
}

inline std::vector<Isometry> enumerate_unipotent2(const GroupEnumeration& g) {
  std::vector<Isometry> out;
  for (const auto& m : g.elements())
    if (g.compact_space().is_unipotent2(m)) out.push_back(g.compact_space().to_isometry(m));
  return out;
}

inline std::vector<Isometry> enumerate_unipotent2(const QuadraticSpace& space, GroupMethod method = GroupMethod::Auto) {
  return enumerate_unipotent2(enumerate_orthogonal_group(space, method));
}

struct VerifyReport {
  std::string theorem;
  std::size_t group_order = 0;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> examples;  // first few counterexamples

  void merge(const VerifyReport& o) {
    checked += o.checked;
    failed += o.failed;
    for (const auto& e : o.examples)
      if (examples.size() < kMaxExamples) examples.push_back(e);
  }

  static constexpr std::size_t kMaxExamples = 5;
};

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"char",  "classify", "clif", "defint", "final", "g",
                                            "res",   "tauid",    "totimes", "vprime", "wall"};
  return ids;
}

namespace detail {

inline std::string matrix_label(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

/// Every vector of a subspace over a finite field.
inline std::vector<Vec> all_vectors(const Subspace& s) {
  const Field f = s.field();
  std::vector<Vec> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < s.dim(); ++i) total *= f.order();
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec c;
    std::size_t r = idx;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      c.push_back(f.element(static_cast<std::uint32_t>(r % f.order())));
      r /= f.order();
    }
    out.push_back(s.dim() ? s.combine(c) : zero_vec(f, s.ambient_dim()));
  }
  return out;
}

// Per-element checks: nullopt = not applicable, "" = pass, otherwise a failure description.
using ElementCheck = std::function<std::optional<std::string>(const compact::Mat&, const Isometry&)>;

}  // namespace detail

/// Wall-form axioms for one isometry: omega nondegenerate, omega(u, u) = -q(u)
/// on every listed u in r(tau), and the Gram matrix independent of the
/// preimages (each preimage shifted by a fixed vector).
inline std::string check_wall_axioms(const Isometry& tau, const std::vector<Vec>& probes) {
  const WallForm wf = wall_form(tau);
  if (!wf.form().is_nondegenerate()) return "Wall form degenerate";
  for (const auto& u : probes)
    if (!(wf.evaluate(u, u) == -tau.space().eval_q(u))) return "omega(u,u) != -q(u)";
  const auto k = fixed_space(tau).vectors();
  if (!k.empty()) {
    auto ys = wf.preimages();
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = ys[j] + k[j % k.size()];
    if (!(wf.gram_with_preimages(ys) == wf.gram())) return "Wall form depends on preimages";
  }
  return "";
}

/// Runs the checks attached to a theorem id over every applicable group element.
inline VerifyReport exhaustive_verify(const std::string& theorem, const GroupEnumeration& group) {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem) == ids.end()) fail(ErrorKind::UnknownTheorem, "unknown theorem id: " + theorem);
  const compact::Space& cs = group.compact_space();
  const QuadraticSpace& space = group.space();
  const Field f = space.field();
  const bool char2 = f.characteristic() == 2;

  VerifyReport rep{theorem, group.size(), 0, 0, {}};
  auto record = [&](std::optional<std::string> outcome, const std::string& label) {
    if (!outcome) return;
    ++rep.checked;
    if (!outcome->empty()) {
      ++rep.failed;
      if (rep.examples.size() < VerifyReport::kMaxExamples) rep.examples.push_back(label + ": " + *outcome);
    }
  };

  if (theorem == "totimes") {
    // Every symmetric 2x2 and 3x3 matrix with scalar square, plus f(x) for x in
    // r(tau) under the explicit isomorphism of each interchange isometry.
    if (char2) {
      for (std::size_t d : {2u, 3u}) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = i; j < d; ++j) slots.emplace_back(i, j);
        std::uint64_t total = 1;
        for (std::size_t k = 0; k < slots.size(); ++k) total *= f.order();
        if (total > (1u << 16)) continue;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
          Matrix x(f, d, d);
          std::uint64_t r = idx;
          for (const auto& [i, j] : slots) {
            x(i, j) = x(j, i) = f.element(static_cast<std::uint32_t>(r % f.order()));
            r /= f.order();
          }
          const Matrix sq = x * x;
          if (!(sq == sq(0, 0) * Matrix::identity(f, d))) continue;
          record(square_scalar_check(x, sq(0, 0)) ? "" : "scalar square is not in F^2", detail::matrix_label(x));
        }
      }
    }
    for (const auto& m : group.elements()) {
      if (!char2 || space.dim() != 4 || !cs.is_unipotent2(m)) continue;
      const Isometry tau = cs.to_isometry(m);
      if (!is_interchange(tau)) continue;
      const MatrixIso iso = explicit_matrix_iso(tau);
      for (const auto& u : residual_space(tau).vectors()) {
        const Matrix fx = iso.apply(iso.algebra.vector(u));
        const Element c = tau.space().eval_q(u);
        bool ok = fx * fx == c * Matrix::identity(f, iso.degree) && square_scalar_check(fx, c);
        record(ok ? "" : "f(x)^2 is not a square scalar", detail::matrix_label(tau.matrix()));
      }
    }
    return rep;
  }

  std::vector<compact::SubspaceEntry> regular;
  if (theorem == "defint" && space.dim() == 4) regular = compact::regular_proper_subspaces(cs);

  detail::ElementCheck check;
  if (theorem == "wall") {
    check = [&](const compact::Mat&, const Isometry& tau) -> std::optional<std::string> {
      return check_wall_axioms(tau, detail::all_vectors(residual_space(tau)));
    };
  } else if (theorem == "classify") {
    check = [&](const compact::Mat&, const Isometry& tau) -> std::optional<std::string> {
      const WallClass c = classify(wall_form(tau));
      if (c.symmetric != is_involution(tau)) return "symmetric != (tau^2 = id)";
      if (c.antisymmetric != is_unipotent2(tau)) return "antisymmetric != ((tau-id)^2 = 0)";
      return "";
    };
  } else if (theorem == "tauid") {
    check = [&](const compact::Mat&, const Isometry& tau) -> std::optional<std::string> {
      const bool a = is_unipotent2(tau);
      const Subspace r = residual_space(tau);
      const bool b = fixed_space(tau).contains(r);
      const bool c = is_totally_singular(tau.space(), r);
      if (a != b || b != c) return "conditions disagree";
      return "";
    };
  } else if (theorem == "defint") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (space.dim() != 4) return std::nullopt;
      const bool interchange = is_interchange(tau);
      const bool normal = compact::find_normal_basis(cs, m).has_value();
      const bool indecomposable_u2 = cs.is_unipotent2(m) && !compact::is_decomposable(cs, regular, m);
      if (interchange != normal || normal != indecomposable_u2) return "equivalence fails";
      if (interchange) {
        const auto nb = interchange_normal_basis(tau);
        if (!(tau(nb[1]) == nb[1] + nb[2]) || !(tau(nb[3]) == nb[3] - nb[0])) return "normal basis relations fail";
      }
      return "";
    };
  } else if (theorem == "char") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (!cs.is_unipotent2(m)) return std::nullopt;
      const Decomposition d = decompose(tau);
      if (auto err = d.validate()) return *err;
      if (!(d.reassemble() == tau.matrix())) return "reassembly differs";
      const std::size_t s = residual_space(tau).dim();
      if (d.m() != (d.alternating() ? s / 2 : s)) return "block count law";
      return "";
    };
  } else if (theorem == "vprime") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (!cs.is_unipotent2(m)) return std::nullopt;
      const Subspace w = complement_W(tau);
      const Subspace r = residual_space(tau);
      const Subspace k = fixed_space(tau);
      if (!(w + r == k) || intersect(w, r).dim() != 0) return "W is not a complement of r in k";
      if (!is_regular(tau.space(), w)) return "W not regular";
      const Subspace wp = orthogonal_complement(tau.space(), w);
      if (wp.dim() != 2 * r.dim()) return "dim W^perp != 2 dim r";
      const Isometry tp = restrict_isometry(tau, wp);
      const Subspace rp = residual_space(tp), kp = fixed_space(tp);
      if (!(rp == kp)) return "k(tau') != r(tau')";
      std::vector<Vec> amb;
      for (const auto& c : rp.vectors()) amb.push_back(wp.combine(c));
      if (!(Subspace::span(f, tau.dim(), amb) == r)) return "r(tau') != r(tau)";
      return "";
    };
  } else if (theorem == "res") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (!char2 || !cs.is_involution(m)) return std::nullopt;
      const bool orth = involution_type(natural_involution(tau)) == InvolutionType::Orthogonal;
      if (orth != (residual_space(tau) == fixed_space(tau))) return "type disagrees with r = k";
      return "";
    };
  } else if (theorem == "clif") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (!char2 || !cs.is_involution(m) || !(residual_space(tau) == fixed_space(tau))) return std::nullopt;
      const WallForm wf = wall_form(tau);
      if (!phi_subalgebra(tau).verified()) return "Phi properties fail";
      const PfisterDescriptor p = pfister_invariant(tau);
      if (wf.form().is_alternating()) {
        for (const auto& g : p.generators)
          if (!g.is_one()) return "alternating case generator != 1";
        return "";
      }
      std::vector<Vec> basis;
      for (const auto& c : orthogonal_basis(wf.form())) basis.push_back(wf.to_ambient(c));
      if (!alternating_generators_check(tau, basis).holds) return "not alternating generators";
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (!(p.generators[i] == tau.space().eval_q(basis[i]))) return "generator != q(u_i)";
      return "";
    };
  } else if (theorem == "final") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (!char2 || !cs.is_involution(m) || !(residual_space(tau) == fixed_space(tau))) return std::nullopt;
      const TransposeCriterion c = transpose_iso_criterion(tau);
      if (c.holds() != explicit_matrix_iso_exists(tau)) return "explicit isomorphism disagrees with criterion";
      return "";
    };
  } else if (theorem == "g") {
    check = [&](const compact::Mat& m, const Isometry& tau) -> std::optional<std::string> {
      if (space.dim() != 4 || !cs.is_unipotent2(m) || !is_interchange(tau)) return std::nullopt;
      if (!conjugation_holds(tau, goldman_element(tau))) return "g = 1 + wx fails";
      if (char2) {
        const auto [u1, v1] = interchange_swap_plane(tau);
        if (!conjugation_holds(tau, goldman_element_from_plane(tau, u1, v1))) return "plane construction fails";
      }
      return "";
    };
  }

  for (const auto& m : group.elements()) {
    const Isometry tau = cs.to_isometry(m);
    std::optional<std::string> outcome;
    try {
      outcome = check(m, tau);
    } catch (const Error& e) {
      outcome = e.what();
    }
    record(outcome, detail::matrix_label(tau.matrix()));
  }
  return rep;
}

inline VerifyReport exhaustive_verify(const std::string& theorem, const QuadraticSpace& space,
                                      GroupMethod method = GroupMethod::Auto) {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem) == ids.end()) fail(ErrorKind::UnknownTheorem, "unknown theorem id: " + theorem);
  return exhaustive_verify(theorem, enumerate_orthogonal_group(space, method));
}

}  // namespace wallform
