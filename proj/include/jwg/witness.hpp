#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jwg/errors.hpp"
#include "jwg/gf.hpp"
#include "jwg/graph.hpp"
#include "jwg/linalg.hpp"
#include "jwg/symfun.hpp"

namespace jwg {

enum class WalkKind : uint8_t { Path, Cycle };

/// Alternating point/line walk.  Paths have pairwise-distinct vertices;
/// cycles repeat the first vertex at the end and have even length >= 4.
struct Walk {
  WalkKind kind = WalkKind::Path;
  std::vector<VertexId> vertices;

  uint32_t length() const {
    return vertices.empty() ? 0 : static_cast<uint32_t>(vertices.size()) - 1;
  }
};

/// Full structural check: adjacency of every step, side alternation, and the
/// distinctness rules for the walk kind.  Throws on violation.
inline void validate_walk(const GraphSpec& s, const Walk& w) {
  if (w.vertices.empty()) raise(Errc::InternalInconsistency, "empty walk");
  for (size_t k = 0; k + 1 < w.vertices.size(); ++k) {
    if (w.vertices[k].side == w.vertices[k + 1].side)
      raise(Errc::InternalInconsistency, "walk does not alternate sides");
    if (!is_edge(s, w.vertices[k], w.vertices[k + 1]))
      raise(Errc::InternalInconsistency, "walk step is not an edge");
  }
  auto key = [](VertexId v) { return std::pair<int, uint64_t>(v.side == Side::Point ? 0 : 1, v.rank); };
  if (w.kind == WalkKind::Path) {
    std::map<std::pair<int, uint64_t>, int> seen;
    for (VertexId v : w.vertices)
      if (++seen[key(v)] > 1) raise(Errc::InternalInconsistency, "path repeats a vertex");
  } else {
    if (w.vertices.size() < 5 || w.vertices.front() != w.vertices.back())
      raise(Errc::InternalInconsistency, "cycle must close with length >= 4");
    if (w.length() % 2 != 0) raise(Errc::InternalInconsistency, "cycle length must be even");
    std::map<std::pair<int, uint64_t>, int> seen;
    for (size_t k = 0; k + 1 < w.vertices.size(); ++k)
      if (++seen[key(w.vertices[k])] > 1)
        raise(Errc::InternalInconsistency, "cycle repeats an interior vertex");
  }
}

namespace detail {

inline std::vector<Fe> line_through_point(const GraphSpec& s, std::span<const Fe> pc, Fe l1) {
  const Field& f = s.field;
  std::vector<Fe> lc(s.ncoord());
  lc[0] = l1;
  for (uint32_t k = 1; k < s.ncoord(); ++k)
    lc[k] = f.sub(f.mul(l1, f.pow(pc[0], s.exponents[k])), pc[k]);
  return lc;
}

inline std::vector<Fe> point_on_line(const GraphSpec& s, std::span<const Fe> lc, Fe p1) {
  const Field& f = s.field;
  std::vector<Fe> pc(s.ncoord());
  pc[0] = p1;
  for (uint32_t k = 1; k < s.ncoord(); ++k)
    pc[k] = f.sub(f.mul(lc[0], f.pow(p1, s.exponents[k])), lc[k]);
  return pc;
}

// L + t * (1, x^(e_2), ..., x^(e_{m+1}))
inline std::vector<Fe> advance_line(const GraphSpec& s, std::span<const Fe> lc, Fe x, Fe t) {
  const Field& f = s.field;
  std::vector<Fe> out(s.ncoord());
  out[0] = f.add(lc[0], t);
  for (uint32_t k = 1; k < s.ncoord(); ++k)
    out[k] = f.add(lc[k], f.mul(t, f.pow(x, s.exponents[k])));
  return out;
}

// Cuts every loop out of a walk: whenever a vertex repeats, the segment
// between the two occurrences is removed.  Endpoints are preserved.
inline void splice_repeats(std::vector<VertexId>& v) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, uint64_t>, size_t> first;
    for (size_t k = 0; k < v.size(); ++k) {
      std::pair<int, uint64_t> key(v[k].side == Side::Point ? 0 : 1, v[k].rank);
      auto it = first.find(key);
      if (it != first.end()) {
        v.erase(v.begin() + static_cast<ptrdiff_t>(it->second) + 1,
                v.begin() + static_cast<ptrdiff_t>(k) + 1);
        changed = true;
        break;
      }
      first.emplace(key, k);
    }
  }
}

inline void require_jumped(const GraphSpec& s) {
  if (s.origin != Origin::Jumped)
    raise(Errc::NotJumpedOrigin, "construction needs a jumped exponent list");
}

inline void require_path_precondition(const GraphSpec& s) {
  require_jumped(s);
  if (!(s.m < s.q() - 2))
    raise(Errc::PreconditionViolated, "path construction needs m < q-2");
}

// [L_1, P_1, L_2, ..., L_{s+1}] from a start line and (x_h, t_h) steps.
inline std::vector<VertexId> build_line_chain(const GraphSpec& s, std::vector<Fe> cur,
                                              std::span<const std::pair<Fe, Fe>> steps) {
  std::vector<VertexId> verts;
  verts.push_back(vertex_from_coords(s, Side::Line, cur));
  for (auto [x, t] : steps) {
    verts.push_back(vertex_from_coords(s, Side::Point, point_on_line(s, cur, x)));
    cur = advance_line(s, cur, x, t);
    verts.push_back(vertex_from_coords(s, Side::Line, cur));
  }
  return verts;
}

}  // namespace detail

/// Path between two lines of length at most 2(m+1): solve the step system on
/// a tuple with nonzero paired sigma, drop the zero steps, and validate.
inline Walk path_between_lines(const GraphSpec& s, VertexId la, VertexId lb) {
  if (la.side != Side::Line || lb.side != Side::Line)
    raise(Errc::WrongSide, "path_between_lines needs two lines");
  if (la == lb) return Walk{WalkKind::Path, {la}};
  detail::require_path_precondition(s);
  const Field& f = s.field;
  uint32_t n = s.m + 1;
  auto xs = search_sigma_pair_nonzero(f, n, s.i, s.j);
  Matrix m = power_matrix(f, s.exponents, xs);
  auto ca = coords(s, la);
  auto cb = coords(s, lb);
  std::vector<Fe> delta(s.ncoord());
  for (uint32_t k = 0; k < s.ncoord(); ++k) delta[k] = f.sub(cb[k], ca[k]);
  auto t = solve_unique(f, m, delta);
  std::vector<std::pair<Fe, Fe>> steps;
  for (uint32_t h = 0; h < n; ++h)
    if (t[h] != f.zero()) steps.emplace_back(xs[h], t[h]);
  auto verts = detail::build_line_chain(s, ca, steps);
  if (verts.back() != lb) raise(Errc::InternalInconsistency, "line path missed its target");
  detail::splice_repeats(verts);
  Walk w{WalkKind::Path, std::move(verts)};
  validate_walk(s, w);
  return w;
}

/// Path between two points of length at most 2(m+1).  The first coordinates
/// of the endpoints pin x_1 and x_{m+2}; the telescoped coefficient system
/// is solved on the inner tuple with the last coefficient set to zero.
inline Walk path_between_points(const GraphSpec& s, VertexId pa, VertexId pb) {
  if (pa.side != Side::Point || pb.side != Side::Point)
    raise(Errc::WrongSide, "path_between_points needs two points");
  if (pa == pb) return Walk{WalkKind::Path, {pa}};
  detail::require_path_precondition(s);
  const Field& f = s.field;
  uint32_t n = s.m + 1;
  auto ca = coords(s, pa);
  auto cb = coords(s, pb);
  auto xs = search_sigma_pair_nonzero(f, n, s.i, s.j, ca[0]);
  Matrix m = power_matrix(f, s.exponents, xs);
  std::vector<Fe> rhs(s.ncoord(), f.zero());
  for (uint32_t k = 1; k < s.ncoord(); ++k) rhs[k] = f.sub(cb[k], ca[k]);
  auto coeff = solve_unique(f, m, rhs);
  // line first-coordinates: u_1 = -c_1, u_h = u_{h-1} - c_h
  std::vector<Fe> u(n);
  u[0] = f.neg(coeff[0]);
  for (uint32_t h = 1; h < n; ++h) u[h] = f.sub(u[h - 1], coeff[h]);
  std::vector<VertexId> verts;
  verts.push_back(pa);
  std::vector<Fe> cur = ca;
  for (uint32_t h = 0; h < n; ++h) {
    auto lc = detail::line_through_point(s, cur, u[h]);
    verts.push_back(vertex_from_coords(s, Side::Line, lc));
    Fe next_x = (h + 1 < n) ? xs[h + 1] : cb[0];
    cur = detail::point_on_line(s, lc, next_x);
    verts.push_back(vertex_from_coords(s, Side::Point, cur));
  }
  if (verts.back() != pb) raise(Errc::InternalInconsistency, "point path missed its target");
  detail::splice_repeats(verts);
  Walk w{WalkKind::Path, std::move(verts)};
  validate_walk(s, w);
  return w;
}

/// Odd path from a point to a line of length at most 2(m+1)+1.  The tuple
/// search pins x_1 = p_1, so the line chain from a chosen neighbor of P
/// passes through P; the walk starts there.
inline Walk path_point_to_line(const GraphSpec& s, VertexId p, VertexId l) {
  if (p.side != Side::Point || l.side != Side::Line)
    raise(Errc::WrongSide, "path_point_to_line needs a point and a line");
  if (is_edge(s, p, l)) return Walk{WalkKind::Path, {p, l}};
  detail::require_path_precondition(s);
  const Field& f = s.field;
  uint32_t n = s.m + 1;
  auto pc = coords(s, p);
  auto xs = search_sigma_pair_nonzero(f, n, s.i, s.j, pc[0]);
  auto start = detail::line_through_point(s, pc, f.zero());
  auto lc = coords(s, l);
  std::vector<Fe> delta(s.ncoord());
  for (uint32_t k = 0; k < s.ncoord(); ++k) delta[k] = f.sub(lc[k], start[k]);
  Matrix m = power_matrix(f, s.exponents, xs);
  auto t = solve_unique(f, m, delta);
  std::vector<std::pair<Fe, Fe>> steps;
  for (uint32_t h = 0; h < n; ++h) steps.emplace_back(xs[h], t[h]);
  auto verts = detail::build_line_chain(s, start, steps);
  if (verts.size() < 2 || verts[1] != p)
    raise(Errc::InternalInconsistency, "pinned first coordinate did not recover the point");
  if (verts.back() != l) raise(Errc::InternalInconsistency, "mixed path missed its target");
  verts.erase(verts.begin());
  detail::splice_repeats(verts);
  Walk w{WalkKind::Path, std::move(verts)};
  validate_walk(s, w);
  return w;
}

/// The explicit 8-cycle that exists in every member of the family (q >= 2):
/// first coordinates alternate 0,1,0,1 and the step sizes are 1,1,-1,-1.
inline Walk eight_cycle(const GraphSpec& s) {
  const Field& f = s.field;
  uint32_t nc = s.ncoord();
  Fe one = f.one(), neg1 = f.neg(f.one()), two = f.add(f.one(), f.one());
  auto fill = [&](Fe first, Fe rest) {
    std::vector<Fe> c(nc, rest);
    c[0] = first;
    return c;
  };
  auto P1 = vertex_from_coords(s, Side::Point, fill(f.zero(), f.zero()));
  auto P2 = vertex_from_coords(s, Side::Point, fill(one, one));
  auto P3 = vertex_from_coords(s, Side::Point, fill(f.zero(), neg1));
  auto P4 = vertex_from_coords(s, Side::Point, fill(one, f.zero()));
  auto L1 = vertex_from_coords(s, Side::Line, fill(f.zero(), f.zero()));
  auto L2 = vertex_from_coords(s, Side::Line, fill(one, f.zero()));
  auto L3 = vertex_from_coords(s, Side::Line, fill(two, one));
  auto L4 = vertex_from_coords(s, Side::Line, fill(one, one));
  Walk w{WalkKind::Cycle, {L1, P1, L2, P2, L3, P3, L4, P4, L1}};
  validate_walk(s, w);
  return w;
}

/// Scans distinct pairs (a, b) in rank order for a rank-1 step matrix, which
/// forces a^e = b^e on every row exponent; the 4-cycle then uses steps
/// (1, -1).  Absent when no such pair exists.
inline std::optional<Walk> four_cycle_search(const GraphSpec& s) {
  const Field& f = s.field;
  for (uint32_t a = 0; a < s.q(); ++a)
    for (uint32_t b = a + 1; b < s.q(); ++b) {
      std::vector<Fe> xs = {Fe{a}, Fe{b}};
      if (matrix_rank(f, power_matrix(f, s.exponents, xs)) > 1) continue;
      std::vector<std::pair<Fe, Fe>> steps = {{Fe{a}, f.one()}, {Fe{b}, f.neg(f.one())}};
      auto verts = detail::build_line_chain(s, std::vector<Fe>(s.ncoord(), f.zero()), steps);
      Walk w{WalkKind::Cycle, std::move(verts)};
      validate_walk(s, w);
      return w;
    }
  return std::nullopt;
}

/// Scans distinct triples (a, b, c) in rank order for a step matrix of rank
/// at most 2 whose kernel contains an all-nonzero vector; that vector,
/// normalized to leading coordinate 1, gives the 6-cycle steps.
inline std::optional<Walk> six_cycle_search(const GraphSpec& s) {
  const Field& f = s.field;
  for (uint32_t a = 0; a < s.q(); ++a)
    for (uint32_t b = a + 1; b < s.q(); ++b)
      for (uint32_t c = b + 1; c < s.q(); ++c) {
        std::vector<Fe> xs = {Fe{a}, Fe{b}, Fe{c}};
        Matrix m = power_matrix(f, s.exponents, xs);
        if (matrix_rank(f, m) > 2) continue;
        auto basis = nullspace_basis(f, m);
        auto all_nonzero = [&](const std::vector<Fe>& v) {
          for (Fe x : v)
            if (x == f.zero()) return false;
          return true;
        };
        std::optional<std::vector<Fe>> found;
        for (const auto& v : basis)
          if (all_nonzero(v)) {
            found = v;
            break;
          }
        if (!found && basis.size() == 2) {
          for (uint32_t lam = 1; lam < s.q() && !found; ++lam) {
            std::vector<Fe> v(3);
            for (int k = 0; k < 3; ++k) v[k] = f.add(basis[0][k], f.mul(Fe{lam}, basis[1][k]));
            if (all_nonzero(v)) found = v;
          }
        }
        if (!found) continue;
        Fe scale = f.inv((*found)[0]);
        std::vector<Fe> t(3);
        for (int k = 0; k < 3; ++k) t[k] = f.mul((*found)[k], scale);
        std::vector<std::pair<Fe, Fe>> steps = {{Fe{a}, t[0]}, {Fe{b}, t[1]}, {Fe{c}, t[2]}};
        auto verts = detail::build_line_chain(s, std::vector<Fe>(s.ncoord(), f.zero()), steps);
        Walk w{WalkKind::Cycle, std::move(verts)};
        validate_walk(s, w);
        return w;
      }
  return std::nullopt;
}

enum class PredStatus : uint8_t { Asserted, Inconsistent, Uncovered };

inline const char* pred_status_name(PredStatus s) {
  switch (s) {
    case PredStatus::Asserted: return "asserted";
    case PredStatus::Inconsistent: return "inconsistent";
    case PredStatus::Uncovered: return "uncovered";
  }
  return "?";
}

/// Girth value claimed by the published classification for this family,
/// with a rule tag and a trust status.  `inconsistent` marks cells where the
/// stated classification conflicts with a checkable construction (the
/// empirical value is reported instead of asserted); `uncovered` marks cells
/// the classification does not address.
struct GirthPrediction {
  uint32_t value = 8;
  std::string source;
  PredStatus status = PredStatus::Uncovered;
};

inline GirthPrediction predicted_girth(const GraphSpec& s) {
  detail::require_jumped(s);
  uint32_t q = s.q(), i = s.i, j = s.j, m = s.m;
  bool three_divides = (q - 1) % 3 == 0;
  auto A = [](uint32_t v, std::string src) {
    return GirthPrediction{v, std::move(src), PredStatus::Asserted};
  };
  auto X = [](uint32_t v, std::string src) {
    return GirthPrediction{v, std::move(src), PredStatus::Inconsistent};
  };
  if (m == 1) {
    if (i == 1 && j == 3) {
      if (q % 2 == 1) return A(4, "m=1: (1,3), odd q");
      if (q == 2)
        return X(6, "m=1: (1,3), char 2; a 6-cycle needs three distinct first coordinates"
                    " and q=2 has only two");
      return A(6, "m=1: (1,3), char 2");
    }
    if (i == 1 && j == 2) {
      if (three_divides) return A(4, "m=1: (1,2), 3 | q-1");
      if (q == 2)
        return X(6, "m=1: (1,2), 3 does not divide q-1; a 6-cycle needs three distinct"
                    " first coordinates and q=2 has only two");
      return A(6, "m=1: (1,2), 3 does not divide q-1");
    }
    // (2,3)
    if (q == 2 || q == 3)
      return X(8, "m=1: (2,3), q in {2,3}; stated under a conflicting label (m=2 vs m=1)");
    return A(6, "m=1: (2,3), q > 3");
  }
  if (m == 2) {
    bool q_odd_pow2 = s.field.p() == 2 && s.field.e() % 2 == 1;
    if ((i == 1 && j == 2) || (i == 2 && j == 3)) {
      std::string cell = i == 1 ? "(1,2)" : "(2,3)";
      if (q == 3 || q_odd_pow2) return A(8, "m=2: " + cell + ", q = 3 or an odd power of 2");
      return A(6, "m=2: " + cell + ", remaining q");
    }
    if (i == 1 && j == 3) {
      if (q % 2 == 1) return A(4, "m=2: (1,3), odd q");
      return A(8, "m=2: (1,3), char 2");
    }
    if (i == 1 && j == 4) {
      if (q == 2 || q == 3 || q == 5) return A(8, "m=2: (1,4), q in {2,3,5}");
      return A(6, "m=2: (1,4), q > 5");
    }
    if (i == 2 && j == 4) {
      if (q == 2) return A(8, "m=2: (2,4), q = 2");
      return A(6, "m=2: (2,4), q > 2");
    }
    return GirthPrediction{8, "m=2: (3,4) not covered; 8 is only the general upper bound",
                           PredStatus::Uncovered};
  }
  // m >= 3
  if (three_divides && i == 1 && j == 4) {
    if (m <= 4) return A(6, "m in 3..4: (1,4) with 3 | q-1");
    if (m == 5)
      return X(6, "m=5: (1,4) listed as an exception, but the cube-root witness triple has"
                  " full rank there (row exponent 7 = 1 mod 3)");
  }
  if (three_divides && i == 2 && j == 5) {
    if (m <= 5) return A(6, "m in 3..5: (2,5) with 3 | q-1");
    if (m == 6)
      return X(6, "m=6: (2,5) listed as an exception, but the cube-root witness triple has"
                  " full rank there");
  }
  if (i == 2 && j == 4 && m == 3 && q % 2 == 1)
    return X(8, "m=3: (2,4) falls under the blanket 8, but the rank-2 triple (0,s,-s)"
                " yields a 6-cycle for odd q");
  if (i == 2 && j == 3 && m == 3 && (q - 1) % 4 == 0)
    return X(8, "m=3: (2,3) falls under the blanket 8, but a fourth-root coset triple has"
                " rank 2 when 4 | q-1; a 6-cycle exists");
  return A(8, "m>=3: general case");
}

/// Independent girth oracle: 4 if a 4-cycle scan succeeds, else 6 if a
/// 6-cycle scan succeeds, else 8 on the strength of the validated explicit
/// 8-cycle.
inline uint32_t algebraic_girth(const GraphSpec& s) {
  if (four_cycle_search(s)) return 4;
  if (six_cycle_search(s)) return 6;
  eight_cycle(s);  // validates; throws if the family invariant ever broke
  return 8;
}

}  // namespace jwg
