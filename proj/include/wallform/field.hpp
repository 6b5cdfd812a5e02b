#pragma once

// Exact arithmetic in GF(p) (odd p <= 97), GF(2^k) (k <= 8) and the rational
// function field GF(2)(t), together with square-class queries.

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wallform/error.hpp"

namespace wallform {

/// Polynomial over GF(2), bit i is the coefficient of t^i. Fixed capacity of
/// 192 coefficients, which covers the product of two degree-64 polynomials.
class Gf2Poly {
 public:
  static constexpr int kWords = 3;
  static constexpr int kBits = 64 * kWords;

  constexpr Gf2Poly() = default;
  constexpr explicit Gf2Poly(std::uint64_t low) { w_[0] = low; }

  static Gf2Poly monomial(int d) {
    if (d < 0 || d >= kBits) fail(ErrorKind::FieldOverflow, "monomial degree out of range");
    Gf2Poly p;
    p.w_[d / 64] = std::uint64_t{1} << (d % 64);
    return p;
  }

  bool is_zero() const { return (w_[0] | w_[1] | w_[2]) == 0; }
  bool is_one() const { return w_[0] == 1 && w_[1] == 0 && w_[2] == 0; }

  /// -1 for the zero polynomial.
  int degree() const {
    for (int i = kWords - 1; i >= 0; --i)
      if (w_[i] != 0) return 64 * i + 63 - std::countl_zero(w_[i]);
    return -1;
  }

  bool bit(int i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void flip(int i) { w_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  std::uint64_t word(int i) const { return w_[i]; }

  Gf2Poly shifted_left(int s) const {
    Gf2Poly r;
    if (s >= kBits) return r;
    const int ws = s / 64, bs = s % 64;
    for (int i = kWords - 1; i >= ws; --i) {
      std::uint64_t v = w_[i - ws] << bs;
      if (bs != 0 && i - ws - 1 >= 0) v |= w_[i - ws - 1] >> (64 - bs);
      r.w_[i] = v;
    }
    return r;
  }

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = a.w_[i] ^ b.w_[i];
    return r;
  }

  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
    const int da = a.degree(), db = b.degree();
    if (da < 0 || db < 0) return {};
    if (da + db >= kBits) fail(ErrorKind::FieldOverflow, "GF(2)[t] product exceeds capacity");
    Gf2Poly r;
    for (int i = 0; i <= da; ++i)
      if (a.bit(i)) r = r + b.shifted_left(i);
    return r;
  }

  /// Quotient and remainder; b must be nonzero.
  static std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b) {
    const int db = b.degree();
    if (db < 0) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    Gf2Poly q, r = a;
    for (int d = r.degree(); d >= db; d = r.degree()) {
      q.flip(d - db);
      r = r + b.shifted_left(d - db);
    }
    return {q, r};
  }

  static Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
      Gf2Poly r = divmod(a, b).second;
      a = b;
      b = r;
    }
    return a;
  }

  /// True iff only even powers of t occur, i.e. the polynomial lies in GF(2)[t^2].
  bool has_only_even_terms() const {
    constexpr std::uint64_t kOdd = 0xAAAAAAAAAAAAAAAAull;
    return ((w_[0] | w_[1] | w_[2]) & kOdd) == 0;
  }

  /// For p in GF(2)[t^2], returns the r with r^2 = p.
  Gf2Poly half_exponents() const {
    Gf2Poly r;
    for (int i = 0, d = degree(); i <= d; i += 2)
      if (bit(i)) r.flip(i / 2);
    return r;
  }

  std::string to_string(char var) const {
    const int d = degree();
    if (d < 0) return "0";
    std::string s;
    for (int i = d; i >= 0; --i) {
      if (!bit(i)) continue;
      if (!s.empty()) s += '+';
      if (i == 0) s += '1';
      else if (i == 1) s += var;
      else s += std::string(1, var) + "^" + std::to_string(i);
    }
    return s;
  }

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

enum class FieldKind { Prime, Galois2, RationalFunction };

/// Largest degree allowed for numerator or denominator of a GF(2)(t) element.
inline constexpr int kMaxRationalDegree = 64;

class Element;

namespace detail {

struct FieldData {
  FieldKind kind;
  unsigned p = 2;              // characteristic
  unsigned k = 1;              // extension degree for Galois2
  std::uint32_t modulus = 0;   // Galois2 modulus, bit i = coefficient of x^i
  std::uint32_t order = 0;     // 0 for the infinite field
  std::vector<std::uint8_t> mul;  // Galois2 multiplication table, order x order
  std::vector<std::uint8_t> inv;  // inverses (finite kinds)
};

inline std::uint32_t gf2_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned k) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << k)) a ^= modulus;
  }
  return r;
}

inline bool gf2_irreducible(std::uint32_t m) {
  const int deg = 31 - std::countl_zero(m);
  if (deg < 1) return false;
  for (std::uint32_t d = 2; d < (1u << (deg / 2 + 1)); ++d) {
    const int dd = 31 - std::countl_zero(d);
    if (dd < 1 || dd > deg / 2) continue;
    if (Gf2Poly::divmod(Gf2Poly(m), Gf2Poly(d)).second.is_zero()) return false;
  }
  return true;
}

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline const FieldData* intern(FieldKind kind, unsigned p, unsigned k, std::uint32_t modulus) {
  static std::mutex mu;
  static std::map<std::tuple<int, unsigned, unsigned, std::uint32_t>, std::unique_ptr<FieldData>> registry;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(static_cast<int>(kind), p, k, modulus);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second.get();

  auto d = std::make_unique<FieldData>();
  d->kind = kind;
  d->p = p;
  d->k = k;
  d->modulus = modulus;
  if (kind == FieldKind::Prime) {
    d->order = p;
    d->inv.assign(p, 0);
    for (unsigned a = 1; a < p; ++a)
      for (unsigned b = 1; b < p; ++b)
        if (a * b % p == 1) d->inv[a] = static_cast<std::uint8_t>(b);
  } else if (kind == FieldKind::Galois2) {
    d->order = 1u << k;
    d->mul.assign(std::size_t{d->order} * d->order, 0);
    d->inv.assign(d->order, 0);
    for (std::uint32_t a = 0; a < d->order; ++a)
      for (std::uint32_t b = 0; b < d->order; ++b) {
        const auto c = gf2_mulmod(a, b, modulus, k);
        d->mul[a * d->order + b] = static_cast<std::uint8_t>(c);
        if (c == 1) d->inv[a] = static_cast<std::uint8_t>(b);
      }
  }
  auto* raw = d.get();
  registry.emplace(key, std::move(d));
  return raw;
}

inline std::string strip_spaces(std::string_view s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r;
}

/// Parses "t^3+t+1"-style GF(2) polynomials in any single-letter variable
/// from `vars`. Coefficients are reduced mod 2 ("t+t" is 0).
inline Gf2Poly parse_gf2_poly(std::string_view text, std::string_view vars) {
  const std::string s = strip_spaces(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty polynomial");
  Gf2Poly acc;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find('+', i);
    if (j == std::string::npos) j = s.size();
    const std::string term = s.substr(i, j - i);
    if (term.empty()) fail(ErrorKind::ParseError, "empty term in '" + s + "'");
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      for (char c : term)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorKind::ParseError, "bad term '" + term + "'");
      if ((term.back() - '0') % 2 == 1) acc = acc + Gf2Poly(1);
    } else if (vars.find(term[0]) != std::string_view::npos) {
      int e = 1;
      if (term.size() > 1) {
        if (term[1] != '^' || term.size() < 3) fail(ErrorKind::ParseError, "bad term '" + term + "'");
        e = 0;
        for (std::size_t q = 2; q < term.size(); ++q) {
          if (!std::isdigit(static_cast<unsigned char>(term[q]))) fail(ErrorKind::ParseError, "bad exponent in '" + term + "'");
          e = e * 10 + (term[q] - '0');
          if (e >= Gf2Poly::kBits) fail(ErrorKind::ParseError, "exponent too large in '" + term + "'");
        }
      }
      acc = acc + Gf2Poly::monomial(e);
    } else {
      fail(ErrorKind::ParseError, "bad term '" + term + "'");
    }
    i = j + 1;
    if (j == s.size()) break;
  }
  return acc;
}

}  // namespace detail

/// Handle to an interned field descriptor. Copies are cheap and compare by identity.
class Field {
 public:
  Field() = default;

  static Field prime(unsigned p) {
    if (p == 2) return galois2(1);
    if (p > 97 || p % 2 == 0 || !detail::is_prime(p))
      fail(ErrorKind::UnsupportedField, "prime field needs an odd prime <= 97, got " + std::to_string(p));
    return Field(detail::intern(FieldKind::Prime, p, 1, 0));
  }

  static Field galois2(unsigned k, std::uint32_t modulus) {
    if (k < 1 || k > 8) fail(ErrorKind::UnsupportedField, "GF(2^k) needs 1 <= k <= 8");
    if (31 - std::countl_zero(modulus) != static_cast<int>(k) || !detail::gf2_irreducible(modulus))
      fail(ErrorKind::UnsupportedField, "modulus is not an irreducible polynomial of degree " + std::to_string(k));
    return Field(detail::intern(FieldKind::Galois2, 2, k, modulus));
  }

  /// GF(2^k) with the numerically smallest irreducible modulus.
  static Field galois2(unsigned k) {
    if (k < 1 || k > 8) fail(ErrorKind::UnsupportedField, "GF(2^k) needs 1 <= k <= 8");
    for (std::uint32_t m = 1u << k; m < (2u << k); ++m)
      if (detail::gf2_irreducible(m)) return galois2(k, m);
    fail(ErrorKind::InternalError, "no irreducible polynomial found");
  }

  static Field rational_function() { return Field(detail::intern(FieldKind::RationalFunction, 2, 0, 0)); }

  /// Accepts "gf(7)", "gf(4)", "gf(4;x^2+x+1)", "gf(2^3;x^3+x+1)", "gf2(t)".
  static Field parse(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    if (s == "gf2(t)") return rational_function();
    if (s.size() < 5 || s.substr(0, 3) != "gf(" || s.back() != ')')
      fail(ErrorKind::ParseError, "bad field literal '" + s + "'");
    const std::string inner = s.substr(3, s.size() - 4);
    const auto semi = inner.find(';');
    const std::string size_text = inner.substr(0, semi);
    unsigned long order = 0;
    try {
      const auto caret = size_text.find('^');
      if (caret != std::string::npos) {
        if (size_text.substr(0, caret) != "2") fail(ErrorKind::ParseError, "bad field size '" + size_text + "'");
        const unsigned long e = std::stoul(size_text.substr(caret + 1));
        if (e > 16) fail(ErrorKind::UnsupportedField, "field too large");
        order = 1ul << e;
      } else {
        std::size_t used = 0;
        order = std::stoul(size_text, &used);
        if (used != size_text.size()) fail(ErrorKind::ParseError, "bad field size '" + size_text + "'");
      }
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "bad field size '" + size_text + "'");
    }
    if (order >= 2 && (order & (order - 1)) == 0) {
      const unsigned k = static_cast<unsigned>(std::countr_zero(order));
      if (semi == std::string::npos) return galois2(k);
      const auto m = detail::parse_gf2_poly(inner.substr(semi + 1), "x");
      if (m.degree() > 31) fail(ErrorKind::UnsupportedField, "modulus degree too large");
      return galois2(k, static_cast<std::uint32_t>(m.word(0)));
    }
    if (semi != std::string::npos) fail(ErrorKind::ParseError, "modulus only allowed for fields of order 2^k");
    return prime(static_cast<unsigned>(order));
  }

  FieldKind kind() const { return d_->kind; }
  unsigned characteristic() const { return d_->p; }
  unsigned extension_degree() const { return d_->k; }
  std::uint32_t modulus() const { return d_->modulus; }
  bool is_finite() const { return d_->kind != FieldKind::RationalFunction; }
  /// Number of elements, 0 for GF(2)(t).
  std::uint32_t order() const { return d_->order; }
  bool valid() const { return d_ != nullptr; }

  std::string literal() const {
    switch (d_->kind) {
      case FieldKind::Prime: return "gf(" + std::to_string(d_->p) + ")";
      case FieldKind::Galois2:
        if (d_->k == 1) return "gf(2)";
        return "gf(" + std::to_string(d_->order) + ";" + Gf2Poly(d_->modulus).to_string('x') + ")";
      case FieldKind::RationalFunction: return "gf2(t)";
    }
    return "?";
  }

  inline Element zero() const;
  inline Element one() const;
  inline Element from_int(long long n) const;
  /// Element with the given index in 0..order()-1 (residue or bit pattern).
  inline Element element(std::uint32_t index) const;
  /// The indeterminate t of GF(2)(t).
  inline Element t() const;
  inline Element fraction(const Gf2Poly& num, const Gf2Poly& den) const;
  inline Element parse_element(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

  const detail::FieldData* data() const { return d_; }
  explicit Field(const detail::FieldData* d) : d_(d) {}

 private:
  const detail::FieldData* d_ = nullptr;
};

/// Immutable field element. Default-constructed elements are detached
/// placeholders and must be assigned before use.
class Element {
 public:
  Element() = default;

  Field field() const { return Field(f_); }
  bool attached() const { return f_ != nullptr; }

  bool is_zero() const { return f_->kind == FieldKind::RationalFunction ? num_.is_zero() : v_ == 0; }
  bool is_one() const {
    return f_->kind == FieldKind::RationalFunction ? (num_.is_one() && den_.is_one()) : v_ == 1;
  }

  /// Residue / bit pattern; finite fields only.
  std::uint32_t index() const { return v_; }
  const Gf2Poly& numerator() const { return num_; }
  const Gf2Poly& denominator() const { return den_; }

  friend Element operator+(const Element& a, const Element& b) {
    check_same(a, b);
    Element r(a.f_);
    switch (a.f_->kind) {
      case FieldKind::Prime: r.v_ = (a.v_ + b.v_) % a.f_->p; break;
      case FieldKind::Galois2: r.v_ = a.v_ ^ b.v_; break;
      case FieldKind::RationalFunction:
        if (a.den_ == b.den_) {
          r.num_ = a.num_ + b.num_;
          r.den_ = a.den_;
        } else {
          r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
          r.den_ = a.den_ * b.den_;
        }
        r.normalize();
        break;
    }
    return r;
  }

  Element operator-() const {
    Element r = *this;
    if (f_->kind == FieldKind::Prime) r.v_ = (f_->p - v_) % f_->p;
    return r;
  }

  friend Element operator-(const Element& a, const Element& b) { return a + (-b); }

  friend Element operator*(const Element& a, const Element& b) {
    check_same(a, b);
    Element r(a.f_);
    switch (a.f_->kind) {
      case FieldKind::Prime: r.v_ = a.v_ * b.v_ % a.f_->p; break;
      case FieldKind::Galois2: r.v_ = a.f_->mul[a.v_ * a.f_->order + b.v_]; break;
      case FieldKind::RationalFunction: {
        if (a.num_.is_zero() || b.num_.is_zero()) return r;
        // Cross-cancel first so the product is already in lowest terms.
        const Gf2Poly g1 = Gf2Poly::gcd(a.num_, b.den_);
        const Gf2Poly g2 = Gf2Poly::gcd(b.num_, a.den_);
        r.num_ = Gf2Poly::divmod(a.num_, g1).first * Gf2Poly::divmod(b.num_, g2).first;
        r.den_ = Gf2Poly::divmod(a.den_, g2).first * Gf2Poly::divmod(b.den_, g1).first;
        r.check_degree();
        break;
      }
    }
    return r;
  }

  Element inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    Element r(f_);
    if (f_->kind == FieldKind::RationalFunction) {
      r.num_ = den_;
      r.den_ = num_;
    } else {
      r.v_ = f_->inv[v_];
    }
    return r;
  }

  friend Element operator/(const Element& a, const Element& b) {
    check_same(a, b);
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    return a * b.inverse();
  }

  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  Element pow(std::uint64_t e) const {
    Element r = field().one(), b = *this;
    while (e != 0) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  std::string to_string() const {
    switch (f_->kind) {
      case FieldKind::Prime: return std::to_string(v_);
      case FieldKind::Galois2: return Gf2Poly(v_).to_string('w');
      case FieldKind::RationalFunction: {
        auto wrap = [](const Gf2Poly& p) {
          std::string s = p.to_string('t');
          return s.find('+') == std::string::npos ? s : "(" + s + ")";
        };
        if (den_.is_one()) return num_.to_string('t');
        return wrap(num_) + "/" + wrap(den_);
      }
    }
    return "?";
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.f_ == b.f_ && a.v_ == b.v_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::size_t hash() const {
    return (static_cast<std::size_t>(v_) * 0x9E3779B97F4A7C15ull) ^ num_.hash() ^ (den_.hash() << 1);
  }

 private:
  friend class Field;

  explicit Element(const detail::FieldData* f) : f_(f) {
    if (f->kind == FieldKind::RationalFunction) den_ = Gf2Poly(1);
  }

  static void check_same(const Element& a, const Element& b) {
    if (a.f_ != b.f_ || a.f_ == nullptr) fail(ErrorKind::DescriptorMismatch, "operands belong to different fields");
  }

  void check_degree() const {
    if (num_.degree() > kMaxRationalDegree || den_.degree() > kMaxRationalDegree)
      fail(ErrorKind::FieldOverflow, "GF(2)(t) element exceeds degree " + std::to_string(kMaxRationalDegree));
  }

  // Lowest terms; over GF(2) every nonzero polynomial is monic.
  void normalize() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = Gf2Poly(1);
      return;
    }
    const Gf2Poly g = Gf2Poly::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = Gf2Poly::divmod(num_, g).first;
      den_ = Gf2Poly::divmod(den_, g).first;
    }
    check_degree();
  }

  const detail::FieldData* f_ = nullptr;
  std::uint32_t v_ = 0;
  Gf2Poly num_, den_;
};

inline Element Field::zero() const { return Element(d_); }

inline Element Field::one() const { return from_int(1); }

inline Element Field::from_int(long long n) const {
  Element r(d_);
  switch (d_->kind) {
    case FieldKind::Prime: r.v_ = static_cast<std::uint32_t>(((n % d_->p) + d_->p) % d_->p); break;
    case FieldKind::Galois2: r.v_ = static_cast<std::uint32_t>(n & 1); break;
    case FieldKind::RationalFunction: r.num_ = Gf2Poly(static_cast<std::uint64_t>(n & 1)); break;
  }
  return r;
}

inline Element Field::element(std::uint32_t index) const {
  if (!is_finite() || index >= d_->order) fail(ErrorKind::PreconditionViolated, "element index out of range");
  Element r(d_);
  r.v_ = index;
  return r;
}

inline Element Field::t() const {
  if (d_->kind != FieldKind::RationalFunction) fail(ErrorKind::UnsupportedField, "t only exists in GF(2)(t)");
  Element r(d_);
  r.num_ = Gf2Poly(2);
  return r;
}

inline Element Field::fraction(const Gf2Poly& num, const Gf2Poly& den) const {
  if (d_->kind != FieldKind::RationalFunction) fail(ErrorKind::UnsupportedField, "fractions only exist in GF(2)(t)");
  Element r(d_);
  r.num_ = num;
  r.den_ = den;
  r.normalize();
  return r;
}

inline Element Field::parse_element(std::string_view text) const {
  const std::string s = detail::strip_spaces(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty element literal");
  switch (d_->kind) {
    case FieldKind::Prime: {
      try {
        std::size_t used = 0;
        const long long n = std::stoll(s, &used);
        if (used != s.size()) fail(ErrorKind::ParseError, "bad element '" + s + "'");
        return from_int(n);
      } catch (const std::logic_error&) {
        fail(ErrorKind::ParseError, "bad element '" + s + "'");
      }
    }
    case FieldKind::Galois2: {
      const Gf2Poly p = detail::parse_gf2_poly(s, "wxa");
      const Gf2Poly r = Gf2Poly::divmod(p, Gf2Poly(d_->modulus)).second;
      return element(static_cast<std::uint32_t>(r.word(0)));
    }
    case FieldKind::RationalFunction: {
      auto unwrap = [](std::string part) {
        if (part.size() >= 2 && part.front() == '(' && part.back() == ')') part = part.substr(1, part.size() - 2);
        return detail::parse_gf2_poly(part, "t");
      };
      int depth = 0;
      std::size_t slash = std::string::npos;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == '/' && depth == 0) slash = i;
      }
      if (slash == std::string::npos) return fraction(unwrap(s), Gf2Poly(1));
      const Gf2Poly den = unwrap(s.substr(slash + 1));
      if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
      return fraction(unwrap(s.substr(0, slash)), den);
    }
  }
  fail(ErrorKind::ParseError, "bad element '" + s + "'");
}

/// True iff some c in the field has c^2 = a.
inline bool is_square(const Element& a) {
  const Field f = a.field();
  switch (f.kind()) {
    case FieldKind::Galois2: return true;
    case FieldKind::Prime:
      return a.is_zero() || a.pow((f.characteristic() - 1) / 2).is_one();
    case FieldKind::RationalFunction:
      // f/g in lowest terms is a square iff f and g both lie in GF(2)[t^2].
      return a.numerator().has_only_even_terms() && a.denominator().has_only_even_terms();
  }
  return false;
}

/// Some c with c^2 = a. For GF(p) the smaller of the two residues is returned.
inline Element sqrt(const Element& a) {
  if (!is_square(a)) fail(ErrorKind::NotASquare, a.to_string() + " is not a square");
  const Field f = a.field();
  switch (f.kind()) {
    case FieldKind::Galois2: return a.pow(std::uint64_t{1} << (f.extension_degree() - 1));
    case FieldKind::Prime:
      for (std::uint32_t c = 0; c < f.characteristic(); ++c) {
        const Element e = f.element(c);
        if (e * e == a) return e;
      }
      break;
    case FieldKind::RationalFunction:
      return f.fraction(a.numerator().half_exponents(), a.denominator().half_exponents());
  }
  fail(ErrorKind::InternalError, "square root not found");
}

}  // namespace wallform

template <>
struct std::hash<wallform::Element> {
  std::size_t operator()(const wallform::Element& e) const noexcept { return e.hash(); }
};
