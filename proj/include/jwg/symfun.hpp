#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "jwg/errors.hpp"
#include "jwg/gf.hpp"
#include "jwg/linalg.hpp"

namespace jwg {

/// sigma_k(xs): elementary symmetric polynomial, with sigma_0 = 1,
/// sigma_{-1} = 0 and sigma_k = 0 for k > |xs| or k < -1.
inline Fe sigma(const Field& f, int k, std::span<const Fe> xs) {
  int n = static_cast<int>(xs.size());
  if (k == 0) return f.one();
  if (k < 0 || k > n) return f.zero();
  // sigma_k(x_1..x_t) = x_t * sigma_{k-1}(prefix) + sigma_k(prefix)
  std::vector<Fe> dp(static_cast<size_t>(k) + 1, f.zero());
  dp[0] = f.one();
  for (int t = 0; t < n; ++t) {
    int top = std::min(k, t + 1);
    for (int d = top; d >= 1; --d) dp[d] = f.add(dp[d], f.mul(xs[t], dp[d - 1]));
  }
  return dp[k];
}

/// sigma_{i,j}(xs) = sigma_i * sigma_{j+1} - sigma_j * sigma_{i+1}.
inline Fe sigma_pair(const Field& f, int i, int j, std::span<const Fe> xs) {
  return f.sub(f.mul(sigma(f, i, xs), sigma(f, j + 1, xs)),
               f.mul(sigma(f, j, xs), sigma(f, i + 1, xs)));
}

/// Row-exponent profile {0,...,l+1} \ {i,j} with 0 <= i < j <= l+1.
struct ExponentProfile {
  uint32_t l, i, j;

  ExponentProfile(uint32_t l_, uint32_t i_, uint32_t j_) : l(l_), i(i_), j(j_) {
    if (l < 1) raise(Errc::BadJumpIndices, "row budget must be >= 1");
    if (!(i < j && j <= l + 1)) raise(Errc::BadJumpIndices, "need 0 <= i < j <= l+1");
  }

  std::vector<uint32_t> row_exponents() const {
    std::vector<uint32_t> out;
    out.reserve(l);
    for (uint32_t e = 0; e <= l + 1; ++e)
      if (e != i && e != j) out.push_back(e);
    return out;
  }
};

/// Matrix with rows x^e for the given exponents, one column per x.
inline Matrix power_matrix(const Field& f, std::span<const uint32_t> exponents,
                           std::span<const Fe> xs) {
  Matrix m(static_cast<uint32_t>(exponents.size()), static_cast<uint32_t>(xs.size()));
  for (uint32_t r = 0; r < m.rows; ++r)
    for (uint32_t c = 0; c < m.cols; ++c) m.at(r, c) = f.pow(xs[c], exponents[r]);
  return m;
}

inline Matrix build_matrix(const Field& f, const ExponentProfile& prof, std::span<const Fe> xs) {
  auto exps = prof.row_exponents();
  return power_matrix(f, exps, xs);
}

namespace detail {

// Sign constant for the closed-form determinant, calibrated per (n, i, j) by
// comparing the direct determinant against the printed formula over a small
// odd-characteristic field.  Cached process-wide.
inline int closed_form_sign(uint32_t n, uint32_t i, uint32_t j);

}  // namespace detail

struct SignedDet {
  Fe value;  // closed-form determinant, equal to the direct one
  int sign;  // calibrated sign constant
};

/// Closed form for |M_{n,i,j}(x_1..x_n)|:
///     sign * (-1)^(i+j-1) * sigma_{n-i,n-j}(xs) * prod_{k<l} (x_l - x_k)
/// with `sign` the calibration constant reported alongside the value.
inline SignedDet closed_form_det(const Field& f, const ExponentProfile& prof,
                                 std::span<const Fe> xs) {
  if (xs.size() != prof.l)
    raise(Errc::NonSquareProfile, "closed form needs n = l distinct arguments");
  uint32_t n = prof.l;
  Fe s = sigma_pair(f, static_cast<int>(n) - static_cast<int>(prof.i),
                    static_cast<int>(n) - static_cast<int>(prof.j), xs);
  Fe prod = f.one();
  for (uint32_t l = 0; l < n; ++l)
    for (uint32_t k = 0; k < l; ++k) prod = f.mul(prod, f.sub(xs[l], xs[k]));
  Fe value = f.mul(s, prod);
  if ((prof.i + prof.j - 1) % 2 == 1) value = f.neg(value);
  int eps = detail::closed_form_sign(n, prof.i, prof.j);
  if (eps < 0) value = f.neg(value);
  return SignedDet{value, eps};
}

/// Distinct x_1..x_n with sigma_k(xs) != 0, built by greedy induction on the
/// degree: extend a valid prefix, picking the smallest unused rank that keeps
/// the target nonzero.  Requires q > n+1.
inline std::vector<Fe> search_sigma_nonzero(const Field& f, uint32_t n, uint32_t k) {
  if (k > n) raise(Errc::PreconditionViolated, "need 0 <= k <= n");
  if (n > f.q()) raise(Errc::SearchExhausted, "not enough field elements");
  std::vector<Fe> xs;
  xs.reserve(n);
  std::vector<bool> used(f.q(), false);
  // base: any n-k distinct elements (sigma_0 = 1)
  for (uint32_t r = 0; xs.size() < n - k; ++r) {
    xs.push_back(Fe{r});
    used[r] = true;
  }
  for (uint32_t t = n - k + 1; t <= n; ++t) {
    uint32_t degree = t - (n - k);
    bool found = false;
    for (uint32_t r = 0; r < f.q(); ++r) {
      if (used[r]) continue;
      xs.push_back(Fe{r});
      if (sigma(f, static_cast<int>(degree), xs) != f.zero()) {
        used[r] = true;
        found = true;
        break;
      }
      xs.pop_back();
    }
    if (!found) raise(Errc::SearchExhausted, "sigma search dead-ended (q too small)");
  }
  return xs;
}

namespace detail {

inline bool pair_target_nonzero(const Field& f, uint32_t n, uint32_t i, uint32_t j,
                                std::span<const Fe> xs) {
  return sigma_pair(f, static_cast<int>(n) - static_cast<int>(i),
                    static_cast<int>(n) - static_cast<int>(j), xs) != f.zero();
}

// Exhaustive fallback over distinct tuples in lexicographic rank order.
// Only reachable when the greedy induction cannot apply; bounded so that
// degenerate inputs terminate.
inline std::optional<std::vector<Fe>> pair_search_exhaustive(const Field& f, uint32_t n,
                                                             uint32_t i, uint32_t j,
                                                             std::optional<Fe> fixed_first) {
  if (f.q() > 16 || n == 0 || n > f.q()) return std::nullopt;
  uint64_t budget = 5'000'000;
  std::vector<Fe> xs(n, Fe{0});
  std::vector<bool> used(f.q(), false);
  // depth-first over distinct tuples
  std::vector<uint32_t> cursor(n, 0);
  size_t depth = 0;
  if (fixed_first) {
    xs[0] = *fixed_first;
    used[fixed_first->v] = true;
    depth = 1;
  }
  size_t base = depth;
  while (true) {
    if (depth == n) {
      if (pair_target_nonzero(f, n, i, j, xs)) return xs;
      if (--budget == 0 || depth == base) return std::nullopt;
      // backtrack
      --depth;
      used[xs[depth].v] = false;
      ++cursor[depth];
    }
    if (cursor[depth] >= f.q()) {
      if (depth == base) return std::nullopt;
      cursor[depth] = 0;
      --depth;
      used[xs[depth].v] = false;
      ++cursor[depth];
      continue;
    }
    uint32_t r = cursor[depth];
    if (used[r]) {
      ++cursor[depth];
      continue;
    }
    xs[depth] = Fe{r};
    used[r] = true;
    ++depth;
  }
}

}  // namespace detail

/// Distinct x_1..x_n with sigma_{n-i,n-j}(xs) != 0, optionally honoring a
/// fixed first element.  Follows the staged induction: a length-i base
/// prefix, single-sigma extensions up to length j-1, then paired extensions.
/// Each step evaluates candidates directly in rank order, which covers the
/// quadratic obstruction and its degenerate (linear) cases uniformly.
inline std::vector<Fe> search_sigma_pair_nonzero(const Field& f, uint32_t n, uint32_t i,
                                                 uint32_t j,
                                                 std::optional<Fe> fixed_first = std::nullopt) {
  if (!(i < j && j <= n + 1)) raise(Errc::BadJumpIndices, "need 0 <= i < j <= n+1");
  if (n == 0) raise(Errc::PreconditionViolated, "n must be >= 1");
  if (n > f.q()) raise(Errc::SearchExhausted, "not enough field elements");

  std::vector<Fe> xs;
  xs.reserve(n);
  std::vector<bool> used(f.q(), false);
  if (fixed_first) {
    xs.push_back(*fixed_first);
    used[fixed_first->v] = true;
  }

  // Staged targets per prefix length t: the base (t <= i) accepts anything
  // since sigma_0 = 1, lengths up to j-1 keep a single sigma nonzero, and
  // from j on the paired form itself.
  auto target_ok = [&](uint32_t t, std::span<const Fe> prefix) {
    if (t <= i) return true;
    if (t < j) return sigma(f, static_cast<int>(t - i), prefix) != f.zero();
    return detail::pair_target_nonzero(f, t, i, j, prefix);
  };

  bool dead_end = false;
  for (uint32_t t = 1; t <= n && !dead_end; ++t) {
    if (xs.size() >= t) {  // pinned by fixed_first
      if (!target_ok(t, std::span<const Fe>(xs).first(t))) dead_end = true;
      continue;
    }
    bool found = false;
    for (uint32_t r = 0; r < f.q(); ++r) {
      if (used[r]) continue;
      xs.push_back(Fe{r});
      if (target_ok(t, xs)) {
        used[r] = true;
        found = true;
        break;
      }
      xs.pop_back();
    }
    if (!found) dead_end = true;
  }

  if (!dead_end && xs.size() == n && detail::pair_target_nonzero(f, n, i, j, xs)) return xs;

  auto fallback = detail::pair_search_exhaustive(f, n, i, j, fixed_first);
  if (fallback) return *fallback;
  raise(Errc::SearchExhausted, "no tuple with nonzero paired sigma exists");
}

namespace detail {

inline int closed_form_sign(uint32_t n, uint32_t i, uint32_t j) {
  static std::mutex mu;
  static std::map<std::tuple<uint32_t, uint32_t, uint32_t>, int> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, i, j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // smallest odd prime large enough for the tuple search
  uint32_t p = 5;
  while (p <= n + 1 || !is_prime_u32(p)) ++p;
  Field f(p, 1);
  ExponentProfile prof(n, i, j);
  auto xs = search_sigma_pair_nonzero(f, n, i, j);
  Fe direct = determinant(f, build_matrix(f, prof, xs));

  Fe s = sigma_pair(f, static_cast<int>(n) - static_cast<int>(i),
                    static_cast<int>(n) - static_cast<int>(j), xs);
  Fe prod = f.one();
  for (uint32_t l = 0; l < n; ++l)
    for (uint32_t k = 0; k < l; ++k) prod = f.mul(prod, f.sub(xs[l], xs[k]));
  Fe printed = f.mul(s, prod);
  if ((i + j - 1) % 2 == 1) printed = f.neg(printed);

  int eps;
  if (direct == printed)
    eps = 1;
  else if (direct == f.neg(printed))
    eps = -1;
  else
    raise(Errc::InternalInconsistency, "closed-form determinant differs beyond sign");
  cache[key] = eps;
  return eps;
}

}  // namespace detail

}  // namespace jwg
