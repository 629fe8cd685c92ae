#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "jwg/errors.hpp"
#include "jwg/gf.hpp"

namespace jwg {

enum class Side : uint8_t { Point, Line };

/// Vertex handle: a side tag plus the rank of the coordinate vector in
/// [0, q^(m+1)), base-q digits with the first coordinate least significant.
struct VertexId {
  Side side = Side::Point;
  uint64_t rank = 0;

  friend constexpr bool operator==(VertexId, VertexId) = default;
};

inline VertexId point(uint64_t rank) { return VertexId{Side::Point, rank}; }
inline VertexId line(uint64_t rank) { return VertexId{Side::Line, rank}; }

enum class Origin : uint8_t { Jumped, Custom };

/// One bipartite graph: points and lines are copies of F_q^(m+1), a point P
/// and line L are adjacent when l_k + p_k = l_1 * p_1^(e_k) for k = 2..m+1.
/// Adjacency is implicit; neighbors are generated on demand.
struct GraphSpec {
  Field field;
  uint32_t m;
  std::vector<uint32_t> exponents;  // m+1 entries, exponents[0] = 0, strictly increasing
  Origin origin;
  uint32_t i, j;       // jump positions, valid when origin == Jumped
  uint64_t side_size;  // q^(m+1)

  uint32_t q() const { return field.q(); }
  uint32_t ncoord() const { return m + 1; }
};

namespace detail {

inline uint64_t checked_pow(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  for (uint32_t k = 0; k < exp; ++k) {
    if (r > (uint64_t(1) << 62) / base) raise(Errc::BadExponents, "vertex space overflows");
    r *= base;
  }
  return r;
}

}  // namespace detail

inline GraphSpec custom_spec(Field field, std::vector<uint32_t> exponents) {
  if (exponents.size() < 2 || exponents[0] != 0)
    raise(Errc::BadExponents, "exponent list must start at 0 and have length >= 2");
  for (size_t k = 1; k < exponents.size(); ++k)
    if (exponents[k] <= exponents[k - 1]) raise(Errc::BadExponents, "exponents must increase");
  uint32_t m = static_cast<uint32_t>(exponents.size()) - 1;
  uint64_t side = detail::checked_pow(field.q(), m + 1);
  return GraphSpec{std::move(field), m, std::move(exponents), Origin::Custom, 0, 0, side};
}

/// J_m(q, i, j): monomial exponents {0,...,m+2} \ {i, j}.
inline GraphSpec jumped_spec(Field field, uint32_t m, uint32_t i, uint32_t j) {
  if (m < 1) raise(Errc::BadJumpIndices, "m must be >= 1");
  if (!(1 <= i && i < j && j <= m + 2))
    raise(Errc::BadJumpIndices, "need 1 <= i < j <= m+2");
  std::vector<uint32_t> exps;
  exps.reserve(m + 1);
  for (uint32_t e = 0; e <= m + 2; ++e)
    if (e != i && e != j) exps.push_back(e);
  GraphSpec s = custom_spec(std::move(field), std::move(exps));
  s.origin = Origin::Jumped;
  s.i = i;
  s.j = j;
  return s;
}

inline std::vector<Fe> coords(const GraphSpec& s, VertexId v) {
  if (v.rank >= s.side_size) raise(Errc::DegreeMismatch, "vertex rank out of range");
  std::vector<Fe> out(s.ncoord());
  uint64_t r = v.rank;
  for (uint32_t k = 0; k < s.ncoord(); ++k) {
    out[k] = Fe{static_cast<uint32_t>(r % s.q())};
    r /= s.q();
  }
  return out;
}

inline uint64_t coords_rank(const GraphSpec& s, std::span<const Fe> cs) {
  if (cs.size() != s.ncoord()) raise(Errc::DegreeMismatch, "coordinate count mismatch");
  uint64_t r = 0;
  for (uint32_t k = s.ncoord(); k-- > 0;) r = r * s.q() + cs[k].v;
  return r;
}

inline VertexId vertex_from_coords(const GraphSpec& s, Side side, std::span<const Fe> cs) {
  return VertexId{side, coords_rank(s, cs)};
}

/// The q lines through a point, one per l_1 in rank order:
/// l_k = l_1 * p_1^(e_k) - p_k.
inline std::vector<VertexId> point_neighbors(const GraphSpec& s, VertexId p) {
  if (p.side != Side::Point) raise(Errc::WrongSide, "point_neighbors needs a Point");
  const Field& f = s.field;
  auto pc = coords(s, p);
  std::vector<Fe> powers(s.ncoord());
  for (uint32_t k = 1; k < s.ncoord(); ++k) powers[k] = f.pow(pc[0], s.exponents[k]);
  std::vector<VertexId> out;
  out.reserve(s.q());
  std::vector<Fe> lc(s.ncoord());
  for (uint32_t l1 = 0; l1 < s.q(); ++l1) {
    lc[0] = Fe{l1};
    for (uint32_t k = 1; k < s.ncoord(); ++k) lc[k] = f.sub(f.mul(Fe{l1}, powers[k]), pc[k]);
    out.push_back(vertex_from_coords(s, Side::Line, lc));
  }
  return out;
}

/// The q points on a line, one per p_1 in rank order:
/// p_k = l_1 * p_1^(e_k) - l_k.
inline std::vector<VertexId> line_neighbors(const GraphSpec& s, VertexId l) {
  if (l.side != Side::Line) raise(Errc::WrongSide, "line_neighbors needs a Line");
  const Field& f = s.field;
  auto lc = coords(s, l);
  std::vector<VertexId> out;
  out.reserve(s.q());
  std::vector<Fe> pc(s.ncoord());
  for (uint32_t p1 = 0; p1 < s.q(); ++p1) {
    pc[0] = Fe{p1};
    for (uint32_t k = 1; k < s.ncoord(); ++k)
      pc[k] = f.sub(f.mul(lc[0], f.pow(Fe{p1}, s.exponents[k])), lc[k]);
    out.push_back(vertex_from_coords(s, Side::Point, pc));
  }
  return out;
}

inline bool is_edge(const GraphSpec& s, VertexId a, VertexId b) {
  if (a.side == b.side) raise(Errc::SameSide, "is_edge needs opposite sides");
  VertexId p = a.side == Side::Point ? a : b;
  VertexId l = a.side == Side::Line ? a : b;
  const Field& f = s.field;
  auto pc = coords(s, p);
  auto lc = coords(s, l);
  for (uint32_t k = 1; k < s.ncoord(); ++k) {
    Fe rhs = f.mul(lc[0], f.pow(pc[0], s.exponents[k]));
    if (f.add(lc[k], pc[k]) != rhs) return false;
  }
  return true;
}

struct GraphCounts {
  uint64_t vertices = 0;
  uint64_t edges = 0;
};

inline GraphCounts counts(const GraphSpec& s) {
  return GraphCounts{2 * s.side_size, s.side_size * s.q()};
}

enum class EdgeFormat { EdgeList, Dimacs };

/// Edge list, one record per edge sorted by (point rank, line rank).
/// EdgeList:  "# jwg q=<q> p=<p> e=<e> poly=<ranks> m=<m> i=<i> j=<j>"
///            then "P <rank> L <rank>" lines.
/// Dimacs:    "p edge <V> <E>" then "e <point+1> <line+offset+1>" with the
///            line ranks offset by q^(m+1).
inline void export_edgelist(const GraphSpec& s, std::ostream& os, EdgeFormat format) {
  if (format == EdgeFormat::EdgeList) {
    os << "# jwg q=" << s.q() << " p=" << s.field.p() << " e=" << s.field.e()
       << " poly=" << s.field.poly_string() << " m=" << s.m;
    if (s.origin == Origin::Jumped) {
      os << " i=" << s.i << " j=" << s.j;
    } else {
      os << " exps=[";
      for (size_t k = 0; k < s.exponents.size(); ++k)
        os << (k ? "," : "") << s.exponents[k];
      os << ']';
    }
    os << '\n';
  } else {
    auto c = counts(s);
    os << "p edge " << c.vertices << ' ' << c.edges << '\n';
  }
  std::vector<uint64_t> nbr;
  nbr.reserve(s.q());
  for (uint64_t pr = 0; pr < s.side_size; ++pr) {
    nbr.clear();
    for (VertexId l : point_neighbors(s, point(pr))) nbr.push_back(l.rank);
    std::sort(nbr.begin(), nbr.end());
    for (uint64_t lr : nbr) {
      if (format == EdgeFormat::EdgeList)
        os << "P " << pr << " L " << lr << '\n';
      else
        os << "e " << pr + 1 << ' ' << s.side_size + lr + 1 << '\n';
    }
  }
  if (!os) raise(Errc::IoError, "edge list write failed");
}

inline void export_edgelist(const GraphSpec& s, const std::string& path, EdgeFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open " + path);
  export_edgelist(s, out, format);
}

}  // namespace jwg
