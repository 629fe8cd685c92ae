#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jwg/errors.hpp"

namespace jwg {

/// Field element, stored as its rank in [0, q).  The base-p digits of the
/// rank are the coefficients of the residue polynomial, constant term first.
struct Fe {
  uint32_t v = 0;

  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// GF(p^e) with an explicit monic irreducible modulus.  Immutable after
/// construction; all operations are pure, so one instance can be shared
/// freely across threads.
///
/// For small fields (q <= kTableLimit) full add/sub/mul/inv tables are built
/// once; larger fields fall back to digit-vector arithmetic.
class Field {
 public:
  static constexpr uint32_t kTableLimit = 1024;
  static constexpr uint32_t kMaxOrder = 1u << 16;

  Field(uint32_t p, uint32_t e) : Field(p, e, default_modulus(p, e)) {}

  Field(uint32_t p, uint32_t e, std::vector<uint32_t> modulus) : p_(p), e_(e) {
    if (!is_prime_u32(p)) raise(Errc::NotPrime, "p = " + std::to_string(p));
    if (e < 1) raise(Errc::DegreeMismatch, "e must be >= 1");
    uint64_t q = 1;
    for (uint32_t k = 0; k < e; ++k) {
      q *= p;
      if (q > kMaxOrder) raise(Errc::DegreeMismatch, "field order exceeds 2^16");
    }
    q_ = static_cast<uint32_t>(q);
    if (modulus.size() != e + 1)
      raise(Errc::DegreeMismatch, "modulus must have degree e = " + std::to_string(e));
    for (uint32_t c : modulus)
      if (c >= p) raise(Errc::DegreeMismatch, "modulus coefficient out of range");
    if (modulus.back() != 1) raise(Errc::DegreeMismatch, "modulus must be monic");
    if (!poly_irreducible(p, modulus))
      raise(Errc::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    mod_ = std::move(modulus);
    if (q_ <= kTableLimit) build_tables();
  }

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint32_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return mod_; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe elem(uint32_t rank) const {
    if (rank >= q_) raise(Errc::DegreeMismatch, "rank out of range");
    return Fe{rank};
  }

  /// All q elements in rank order.
  std::vector<Fe> enumerate() const {
    std::vector<Fe> out(q_);
    for (uint32_t r = 0; r < q_; ++r) out[r] = Fe{r};
    return out;
  }

  Fe add(Fe a, Fe b) const { return Fe{add_raw(a.v, b.v)}; }
  Fe sub(Fe a, Fe b) const { return Fe{sub_raw(a.v, b.v)}; }
  Fe neg(Fe a) const { return Fe{sub_raw(0, a.v)}; }
  Fe mul(Fe a, Fe b) const { return Fe{mul_raw(a.v, b.v)}; }

  Fe inv(Fe a) const {
    if (a.v == 0) raise(Errc::DivisionByZero, "inv(0)");
    if (tab_) return Fe{tab_->inv[a.v]};
    return pow(a, q_ - 2);
  }

  Fe pow(Fe a, uint64_t k) const {
    Fe acc = one();
    Fe base = a;
    while (k) {
      if (k & 1) acc = mul(acc, base);
      base = mul(base, base);
      k >>= 1;
    }
    return acc;
  }

  uint32_t add_raw(uint32_t a, uint32_t b) const {
    if (tab_) return tab_->add[a * q_ + b];
    return add_slow(a, b);
  }
  uint32_t sub_raw(uint32_t a, uint32_t b) const {
    if (tab_) return tab_->sub[a * q_ + b];
    return sub_slow(a, b);
  }
  uint32_t mul_raw(uint32_t a, uint32_t b) const {
    if (tab_) return tab_->mul[a * q_ + b];
    return mul_slow(a, b);
  }

  bool tabled() const { return tab_ != nullptr; }

  /// "7" for prime fields, "p^e/[c0,...,ce]" otherwise (constant-first).
  std::string description() const {
    std::ostringstream os;
    os << p_;
    if (e_ > 1) {
      os << '^' << e_ << '/';
      os << poly_string();
    }
    return os.str();
  }

  std::string poly_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t k = 0; k < mod_.size(); ++k) {
      if (k) os << ',';
      os << mod_[k];
    }
    os << ']';
    return os.str();
  }

  /// Parses "p", "p^e" or "p^e/[c0,...,ce]".  A bare composite prime power
  /// such as "9" is accepted and factored.
  static Field parse(std::string_view s) {
    auto fail = [&] { raise(Errc::InvalidGrid, "bad field description '" + std::string(s) + "'"); };
    size_t caret = s.find('^');
    size_t slash = s.find('/');
    auto to_u32 = [&](std::string_view t) -> uint32_t {
      if (t.empty()) fail();
      uint64_t v = 0;
      for (char c : t) {
        if (c < '0' || c > '9') fail();
        v = v * 10 + (c - '0');
        if (v > kMaxOrder) fail();
      }
      return static_cast<uint32_t>(v);
    };
    if (caret == std::string_view::npos) {
      if (slash != std::string_view::npos) fail();
      uint32_t n = to_u32(s);
      if (n < 2) fail();
      // factor as p^e; n must be a prime power
      uint32_t p = n;
      for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          p = d;
          break;
        }
      uint32_t e = 0;
      uint32_t rest = n;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (rest != 1) raise(Errc::NotPrime, std::to_string(n) + " is not a prime power");
      return Field(p, e);
    }
    uint32_t p = to_u32(s.substr(0, caret));
    std::string_view tail = s.substr(caret + 1);
    if (slash == std::string_view::npos) return Field(p, to_u32(tail));
    uint32_t e = to_u32(s.substr(caret + 1, slash - caret - 1));
    std::string_view poly = s.substr(slash + 1);
    if (poly.size() < 2 || poly.front() != '[' || poly.back() != ']') fail();
    poly.remove_prefix(1);
    poly.remove_suffix(1);
    std::vector<uint32_t> coeffs;
    while (!poly.empty()) {
      size_t comma = poly.find(',');
      coeffs.push_back(to_u32(poly.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      poly.remove_prefix(comma + 1);
    }
    return Field(p, e, std::move(coeffs));
  }

  /// Lexicographically smallest monic irreducible polynomial of degree e,
  /// ordered by the rank of its non-leading coefficient vector.
  static std::vector<uint32_t> default_modulus(uint32_t p, uint32_t e) {
    if (!is_prime_u32(p)) raise(Errc::NotPrime, "p = " + std::to_string(p));
    if (e < 1) raise(Errc::DegreeMismatch, "e must be >= 1");
    uint64_t count = 1;
    for (uint32_t k = 0; k < e; ++k) {
      count *= p;
      if (count > kMaxOrder) raise(Errc::DegreeMismatch, "field order exceeds 2^16");
    }
    for (uint64_t r = 0; r < count; ++r) {
      std::vector<uint32_t> cand(e + 1, 0);
      uint64_t t = r;
      for (uint32_t k = 0; k < e; ++k) {
        cand[k] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      cand[e] = 1;
      if (poly_irreducible(p, cand)) return cand;
    }
    raise(Errc::InternalInconsistency, "no irreducible polynomial found");
  }

 private:
  struct Tables {
    std::vector<uint16_t> add, sub, mul;
    std::vector<uint16_t> inv;
  };

  uint32_t p_ = 0, e_ = 0, q_ = 0;
  std::vector<uint32_t> mod_;
  std::shared_ptr<const Tables> tab_;

  void digits_of(uint32_t rank, uint32_t* out) const {
    for (uint32_t k = 0; k < e_; ++k) {
      out[k] = rank % p_;
      rank /= p_;
    }
  }

  uint32_t rank_of(const uint32_t* digits) const {
    uint32_t r = 0;
    for (uint32_t k = e_; k-- > 0;) r = r * p_ + digits[k];
    return r;
  }

  uint32_t add_slow(uint32_t a, uint32_t b) const {
    uint32_t da[32], db[32];
    digits_of(a, da);
    digits_of(b, db);
    for (uint32_t k = 0; k < e_; ++k) da[k] = (da[k] + db[k]) % p_;
    return rank_of(da);
  }

  uint32_t sub_slow(uint32_t a, uint32_t b) const {
    uint32_t da[32], db[32];
    digits_of(a, da);
    digits_of(b, db);
    for (uint32_t k = 0; k < e_; ++k) da[k] = (da[k] + p_ - db[k]) % p_;
    return rank_of(da);
  }

  uint32_t mul_slow(uint32_t a, uint32_t b) const {
    uint32_t da[32], db[32];
    digits_of(a, da);
    digits_of(b, db);
    // schoolbook product, then reduce by the monic modulus
    uint32_t prod[64] = {0};
    for (uint32_t i = 0; i < e_; ++i) {
      if (!da[i]) continue;
      for (uint32_t j = 0; j < e_; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (uint32_t d = 2 * e_ - 2 + 1; d-- > e_;) {
      uint32_t c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (uint32_t k = 0; k < e_; ++k) {
        uint32_t term = (c * mod_[k]) % p_;
        prod[d - e_ + k] = (prod[d - e_ + k] + p_ - term) % p_;
      }
    }
    return rank_of(prod);
  }

  void build_tables() {
    auto t = std::make_shared<Tables>();
    t->add.resize(size_t(q_) * q_);
    t->sub.resize(size_t(q_) * q_);
    t->mul.resize(size_t(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = 0; b < q_; ++b) {
        t->add[size_t(a) * q_ + b] = static_cast<uint16_t>(add_slow(a, b));
        t->sub[size_t(a) * q_ + b] = static_cast<uint16_t>(sub_slow(a, b));
        t->mul[size_t(a) * q_ + b] = static_cast<uint16_t>(mul_slow(a, b));
      }
    t->inv.resize(q_, 0);
    for (uint32_t a = 1; a < q_; ++a) {
      // a^(q-2) via the freshly built mul table
      uint32_t acc = 1, base = a;
      uint64_t k = q_ - 2;
      while (k) {
        if (k & 1) acc = t->mul[size_t(acc) * q_ + base];
        base = t->mul[size_t(base) * q_ + base];
        k >>= 1;
      }
      t->inv[a] = static_cast<uint16_t>(acc);
    }
    tab_ = std::move(t);
  }

  // divides lhs by rhs (monic not required), true iff remainder is zero
  static bool poly_divides(uint32_t p, const std::vector<uint32_t>& divisor,
                           std::vector<uint32_t> rem) {
    auto deg = [](const std::vector<uint32_t>& v) -> int {
      for (int d = static_cast<int>(v.size()) - 1; d >= 0; --d)
        if (v[d]) return d;
      return -1;
    };
    int dd = deg(divisor);
    uint32_t lead = divisor[dd];
    // inverse of lead mod p
    uint32_t li = 1;
    for (uint32_t x = 1; x < p; ++x)
      if ((lead * x) % p == 1) {
        li = x;
        break;
      }
    int dr;
    while ((dr = deg(rem)) >= dd) {
      uint32_t c = (rem[dr] * li) % p;
      for (int k = 0; k <= dd; ++k) {
        uint32_t term = (c * divisor[k]) % p;
        rem[dr - dd + k] = (rem[dr - dd + k] + p - term) % p;
      }
    }
    return deg(rem) < 0;
  }

  /// Trial division by every monic polynomial of degree <= e/2.
  static bool poly_irreducible(uint32_t p, const std::vector<uint32_t>& f) {
    uint32_t e = static_cast<uint32_t>(f.size()) - 1;
    if (e == 1) return true;
    for (uint32_t d = 1; 2 * d <= e; ++d) {
      uint64_t count = 1;
      for (uint32_t k = 0; k < d; ++k) count *= p;
      for (uint64_t r = 0; r < count; ++r) {
        std::vector<uint32_t> g(d + 1, 0);
        uint64_t t = r;
        for (uint32_t k = 0; k < d; ++k) {
          g[k] = static_cast<uint32_t>(t % p);
          t /= p;
        }
        g[d] = 1;
        if (poly_divides(p, g, f)) return false;
      }
    }
    return true;
  }
};

/// Smallest-rank generator of the multiplicative group.
inline Fe primitive_element(const Field& f) {
  uint32_t n = f.q() - 1;
  std::vector<uint32_t> prime_factors;
  uint32_t rest = n;
  for (uint32_t d = 2; d * d <= rest; ++d)
    if (rest % d == 0) {
      prime_factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  if (rest > 1) prime_factors.push_back(rest);
  for (uint32_t r = 1; r < f.q(); ++r) {
    Fe g{r};
    bool ok = true;
    for (uint32_t pf : prime_factors)
      if (f.pow(g, n / pf) == f.one()) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  raise(Errc::InternalInconsistency, "no primitive element found");
}

/// Multiplicative order of a nonzero element.
inline uint32_t element_order(const Field& f, Fe a) {
  if (a.v == 0) raise(Errc::DivisionByZero, "order of 0");
  Fe acc = a;
  uint32_t k = 1;
  while (acc != f.one()) {
    acc = f.mul(acc, a);
    ++k;
  }
  return k;
}

/// eta(a): 0 for a = 0, +1 for nonzero squares, -1 otherwise.  Odd q only.
inline int quadratic_character(const Field& f, Fe a) {
  if (f.p() == 2) raise(Errc::EvenCharacteristic, "quadratic character needs odd q");
  if (a.v == 0) return 0;
  Fe r = f.pow(a, (f.q() - 1) / 2);
  if (r == f.one()) return 1;
  if (r == f.neg(f.one())) return -1;
  raise(Errc::InternalInconsistency, "a^((q-1)/2) not in {1,-1}");
}

/// v(0) = q-1 and v(b) = -1 for nonzero b.
inline int64_t v_function(const Field& f, Fe b) {
  return b.v == 0 ? static_cast<int64_t>(f.q()) - 1 : -1;
}

/// tr(a) = a + a^p + ... + a^(p^(e-1)); lands in the prime subfield.
inline Fe absolute_trace(const Field& f, Fe a) {
  Fe acc = f.zero();
  Fe x = a;
  for (uint32_t k = 0; k < f.e(); ++k) {
    acc = f.add(acc, x);
    x = f.pow(x, f.p());
  }
  return acc;
}

/// Exhaustive count of (x1,x2) with a1*x1^2 + a2*x2^2 = b.  Odd q only.
inline uint64_t count_diagonal_quadratic(const Field& f, Fe a1, Fe a2, Fe b) {
  if (f.p() == 2) raise(Errc::EvenCharacteristic, "diagonal quadratic count needs odd q");
  if (a1.v == 0 || a2.v == 0) raise(Errc::PreconditionViolated, "a1, a2 must be nonzero");
  uint64_t count = 0;
  for (uint32_t x = 0; x < f.q(); ++x) {
    Fe lhs1 = f.mul(a1, f.mul(Fe{x}, Fe{x}));
    for (uint32_t y = 0; y < f.q(); ++y) {
      Fe lhs = f.add(lhs1, f.mul(a2, f.mul(Fe{y}, Fe{y})));
      if (lhs == b) ++count;
    }
  }
  return count;
}

/// Exhaustive count of (x1,x2) with x1^2 + x2^2 + x1*x2 + x1 + x2 + 1 = 0.
inline uint64_t count_conic_solutions(const Field& f) {
  uint64_t count = 0;
  for (uint32_t x = 0; x < f.q(); ++x)
    for (uint32_t y = 0; y < f.q(); ++y) {
      Fe xf{x}, yf{y};
      Fe s = f.add(f.mul(xf, xf), f.mul(yf, yf));
      s = f.add(s, f.mul(xf, yf));
      s = f.add(s, xf);
      s = f.add(s, yf);
      s = f.add(s, f.one());
      if (s == f.zero()) ++count;
    }
  return count;
}

/// Case-analysis value for the conic count: q + v(-8)*eta(-3) when p >= 5,
/// q in characteristic 3, and 1 for odd powers of 2.  Even powers of 2 have
/// no stated closed form (nullopt: report only).
inline std::optional<int64_t> conic_closed_form(const Field& f) {
  if (f.p() == 3) return static_cast<int64_t>(f.q());
  if (f.p() == 2) {
    if (f.e() % 2 == 1) return 1;
    return std::nullopt;
  }
  Fe m8 = f.neg(f.elem(8 % f.p()));
  Fe m3 = f.neg(f.elem(3 % f.p()));
  return static_cast<int64_t>(f.q()) + v_function(f, m8) * quadratic_character(f, m3);
}

}  // namespace jwg
