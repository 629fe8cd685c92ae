#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "jwg/errors.hpp"
#include "jwg/graph.hpp"

namespace jwg {

namespace detail {

// Rank-level neighbor generator used by all BFS sweeps.  Vertices are flat
// indices: points at [0, half), lines at [half, 2*half).  Coordinates are
// decoded once per expanded vertex; the inner loop is table lookups plus one
// multiply-add per coordinate.
struct Walker {
  const Field* f;
  uint32_t q, nc;
  uint64_t half;
  std::vector<uint32_t> powE;  // powE[x*nc + k] = rank of x^(e_k), k >= 1
  std::vector<uint64_t> qpow;  // q^k

  explicit Walker(const GraphSpec& s)
      : f(&s.field), q(s.q()), nc(s.ncoord()), half(s.side_size) {
    if (2 * half > std::numeric_limits<uint32_t>::max())
      raise(Errc::PreconditionViolated, "graph too large for BFS metrics");
    powE.resize(size_t(q) * nc);
    for (uint32_t x = 0; x < q; ++x)
      for (uint32_t k = 1; k < nc; ++k)
        powE[size_t(x) * nc + k] = f->pow(Fe{x}, s.exponents[k]).v;
    qpow.resize(nc);
    uint64_t r = 1;
    for (uint32_t k = 0; k < nc; ++k, r *= q) qpow[k] = r;
  }

  uint64_t nvertices() const { return 2 * half; }

  void decode(uint64_t rank, uint32_t* digits) const {
    for (uint32_t k = 0; k < nc; ++k) {
      digits[k] = static_cast<uint32_t>(rank % q);
      rank /= q;
    }
  }

  // All q neighbors of the flat vertex with the given decoded digits.
  void neighbors(bool is_point, const uint32_t* digits, uint64_t* out) const {
    if (is_point) {
      const uint32_t* pw = &powE[size_t(digits[0]) * nc];
      for (uint32_t l1 = 0; l1 < q; ++l1) {
        uint64_t r = l1;
        for (uint32_t k = 1; k < nc; ++k)
          r += uint64_t(f->sub_raw(f->mul_raw(l1, pw[k]), digits[k])) * qpow[k];
        out[l1] = half + r;
      }
    } else {
      uint32_t l1 = digits[0];
      for (uint32_t p1 = 0; p1 < q; ++p1) {
        const uint32_t* pw = &powE[size_t(p1) * nc];
        uint64_t r = p1;
        for (uint32_t k = 1; k < nc; ++k)
          r += uint64_t(f->sub_raw(f->mul_raw(l1, pw[k]), digits[k])) * qpow[k];
        out[p1] = r;
      }
    }
  }
};

constexpr uint16_t kUnreached = 0xffff;

struct BfsScratch {
  std::vector<uint16_t> dist;
  std::vector<uint32_t> queue;
  std::vector<uint64_t> nbr;
  std::vector<uint32_t> digits;

  void prepare(const Walker& w) {
    dist.assign(w.nvertices(), kUnreached);
    queue.clear();
    queue.reserve(w.nvertices());
    nbr.resize(w.q);
    digits.resize(w.nc);
  }
};

struct BfsStats {
  uint32_t max_dist = 0;
  uint64_t visited = 0;
};

// Plain BFS from one root.  `stop_at` (if not npos) ends the search early
// once that flat vertex is reached.
inline BfsStats bfs(const Walker& w, BfsScratch& sc, uint64_t root,
                    uint64_t stop_at = ~uint64_t(0)) {
  sc.prepare(w);
  sc.dist[root] = 0;
  sc.queue.push_back(static_cast<uint32_t>(root));
  BfsStats st;
  st.visited = 1;
  for (size_t head = 0; head < sc.queue.size(); ++head) {
    uint64_t u = sc.queue[head];
    uint16_t du = sc.dist[u];
    st.max_dist = du;
    if (u == stop_at) break;
    bool is_point = u < w.half;
    w.decode(is_point ? u : u - w.half, sc.digits.data());
    w.neighbors(is_point, sc.digits.data(), sc.nbr.data());
    if (du + 1 >= kUnreached) raise(Errc::PreconditionViolated, "BFS depth limit exceeded");
    uint16_t dv = static_cast<uint16_t>(du + 1);
    for (uint32_t t = 0; t < w.q; ++t) {
      uint64_t v = sc.nbr[t];
      if (sc.dist[v] == kUnreached) {
        sc.dist[v] = dv;
        sc.queue.push_back(static_cast<uint32_t>(v));
        ++st.visited;
      }
    }
  }
  return st;
}

// Shortest cycle through `root` determined from BFS cross edges, capped by
// `bound`: expansion stops as soon as no cycle shorter than `bound` can be
// found.  Returns bound if nothing shorter exists.  Bipartite structure is
// assumed: a scanned neighbor sits exactly one level away, so a vertex with
// two or more back-neighbors closes a cycle of twice its depth, and an
// already-visited forward neighbor closes one of twice its depth plus two.
inline uint32_t shortest_cycle_through(const Walker& w, BfsScratch& sc, uint64_t root,
                                       uint32_t bound) {
  sc.prepare(w);
  sc.dist[root] = 0;
  sc.queue.push_back(static_cast<uint32_t>(root));
  uint32_t best = bound;
  for (size_t head = 0; head < sc.queue.size(); ++head) {
    uint64_t u = sc.queue[head];
    uint32_t du = sc.dist[u];
    if (2 * du >= best) break;  // even a back cross edge here cannot improve
    bool is_point = u < w.half;
    w.decode(is_point ? u : u - w.half, sc.digits.data());
    w.neighbors(is_point, sc.digits.data(), sc.nbr.data());
    uint16_t dv = static_cast<uint16_t>(du + 1);
    uint32_t back = 0;
    for (uint32_t t = 0; t < w.q; ++t) {
      uint64_t v = sc.nbr[t];
      uint16_t d = sc.dist[v];
      if (d == kUnreached) {
        sc.dist[v] = dv;
        sc.queue.push_back(static_cast<uint32_t>(v));
      } else if (d == du - 1) {
        ++back;  // one of these is the tree parent
      } else {
        // forward cross edge into an already-discovered vertex
        if (2 * du + 2 < best) best = 2 * du + 2;
      }
    }
    if (back >= 2 && 2 * du < best) best = 2 * du;
    if (best <= 4) break;
  }
  return best;
}

inline unsigned effective_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace detail

/// Distances from one root to every reachable vertex.
struct BfsDistances {
  uint64_t half = 0;
  std::vector<uint16_t> dist;

  std::optional<uint32_t> at(VertexId v) const {
    uint64_t flat = (v.side == Side::Point ? 0 : half) + v.rank;
    if (flat >= dist.size() || dist[flat] == detail::kUnreached) return std::nullopt;
    return dist[flat];
  }

  uint64_t reached() const {
    uint64_t n = 0;
    for (uint16_t d : dist)
      if (d != detail::kUnreached) ++n;
    return n;
  }
};

inline BfsDistances bfs_distances(const GraphSpec& s, VertexId root) {
  detail::Walker w(s);
  detail::BfsScratch sc;
  uint64_t flat = (root.side == Side::Point ? 0 : w.half) + root.rank;
  detail::bfs(w, sc, flat);
  return BfsDistances{w.half, std::move(sc.dist)};
}

inline uint32_t components(const GraphSpec& s) {
  detail::Walker w(s);
  detail::BfsScratch sc;
  std::vector<bool> seen(w.nvertices(), false);
  uint32_t n = 0;
  for (uint64_t v = 0; v < w.nvertices(); ++v) {
    if (seen[v]) continue;
    ++n;
    detail::bfs(w, sc, v);
    for (uint32_t u : sc.queue) seen[u] = true;
  }
  return n;
}

inline std::optional<uint32_t> distance_between(const GraphSpec& s, VertexId a, VertexId b) {
  detail::Walker w(s);
  detail::BfsScratch sc;
  uint64_t fa = (a.side == Side::Point ? 0 : w.half) + a.rank;
  uint64_t fb = (b.side == Side::Point ? 0 : w.half) + b.rank;
  detail::bfs(w, sc, fa, fb);
  if (sc.dist[fb] == detail::kUnreached) return std::nullopt;
  return sc.dist[fb];
}

/// Distance from the all-zero line to the line with coordinates `delta`.
/// By the path system this equals distance(L, L + delta) for every L; the
/// test suite checks that empirically.
inline std::optional<uint32_t> line_difference_profile(const GraphSpec& s,
                                                       std::span<const Fe> delta) {
  return distance_between(s, line(0), line(coords_rank(s, delta)));
}

/// Exact diameter via BFS from every vertex on both sides; nullopt when the
/// graph is disconnected.  Root-parallel: the max-eccentricity reduction is
/// order-independent, so the worker count never changes the result.
inline std::optional<uint32_t> diameter_exact(const GraphSpec& s, unsigned threads = 0) {
  detail::Walker w(s);
  {
    detail::BfsScratch sc;
    auto st = detail::bfs(w, sc, 0);
    if (st.visited != w.nvertices()) return std::nullopt;
  }
  unsigned nt = detail::effective_threads(threads);
  uint64_t n = w.nvertices();
  if (nt > n) nt = static_cast<unsigned>(n);
  std::vector<uint32_t> partial(nt, 0);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      detail::BfsScratch sc;
      uint32_t best = 0;
      for (uint64_t root = t; root < n; root += nt) {
        auto st = detail::bfs(w, sc, root);
        if (st.max_dist > best) best = st.max_dist;
      }
      partial[t] = best;
    });
  }
  for (auto& th : pool) th.join();
  uint32_t d = 0;
  for (uint32_t b : partial) d = std::max(d, b);
  return d;
}

/// Lower bound on the diameter from BFS over a deterministic sample of
/// roots (evenly strided over both sides).  nullopt when disconnected.
inline std::optional<uint32_t> diameter_sampled(const GraphSpec& s, uint64_t max_roots,
                                                unsigned threads = 0) {
  detail::Walker w(s);
  uint64_t n = w.nvertices();
  if (max_roots == 0) max_roots = 1;
  uint64_t stride = n / max_roots;
  if (stride == 0) stride = 1;
  std::vector<uint64_t> roots;
  for (uint64_t r = 0; r < n && roots.size() < max_roots; r += stride) roots.push_back(r);
  unsigned nt = detail::effective_threads(threads);
  if (nt > roots.size()) nt = static_cast<unsigned>(roots.size());
  std::vector<uint32_t> partial(nt, 0);
  std::atomic<bool> disconnected{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      detail::BfsScratch sc;
      uint32_t best = 0;
      for (size_t k = t; k < roots.size(); k += nt) {
        auto st = detail::bfs(w, sc, roots[k]);
        if (st.visited != n) disconnected.store(true);
        if (st.max_dist > best) best = st.max_dist;
      }
      partial[t] = best;
    });
  }
  for (auto& th : pool) th.join();
  if (disconnected.load()) return std::nullopt;
  uint32_t d = 0;
  for (uint32_t b : partial) d = std::max(d, b);
  return d;
}

/// Exact girth: the minimum over point-side roots of the shortest cycle
/// through the root (every cycle alternates sides, so point roots suffice).
/// Early exit at 4, the bipartite minimum.  nullopt when acyclic.
inline std::optional<uint32_t> girth_exact(const GraphSpec& s) {
  detail::Walker w(s);
  detail::BfsScratch sc;
  // no cycle can be longer than the vertex count; use it as the open bound
  uint32_t no_cycle = static_cast<uint32_t>(std::min<uint64_t>(w.nvertices() + 2, 0xfff0));
  uint32_t best = no_cycle;
  for (uint64_t root = 0; root < w.half; ++root) {
    best = detail::shortest_cycle_through(w, sc, root, best);
    if (best <= 4) break;
  }
  if (best == no_cycle) return std::nullopt;
  return best;
}

/// Degree check: every sampled vertex must have exactly q distinct
/// neighbors.  Exhaustive when 2*q^(m+1) <= exhaustive_cap, otherwise a
/// deterministic evenly-strided sample of `sample` vertices per side.
inline std::optional<uint32_t> regular_degree(const GraphSpec& s,
                                              uint64_t exhaustive_cap = 10'000,
                                              uint64_t sample = 1'000) {
  detail::Walker w(s);
  std::vector<uint64_t> nbr(s.q());
  std::vector<uint32_t> digits(s.ncoord());
  auto degree_ok = [&](uint64_t flat) {
    bool is_point = flat < w.half;
    w.decode(is_point ? flat : flat - w.half, digits.data());
    w.neighbors(is_point, digits.data(), nbr.data());
    std::sort(nbr.begin(), nbr.end());
    return std::adjacent_find(nbr.begin(), nbr.end()) == nbr.end();
  };
  uint64_t n = w.nvertices();
  if (n <= exhaustive_cap) {
    for (uint64_t v = 0; v < n; ++v)
      if (!degree_ok(v)) return std::nullopt;
  } else {
    uint64_t per_side = std::max<uint64_t>(1, sample / 2);
    uint64_t stride = std::max<uint64_t>(1, w.half / per_side);
    for (uint64_t r = 0; r < w.half; r += stride) {
      if (!degree_ok(r)) return std::nullopt;
      if (!degree_ok(w.half + r)) return std::nullopt;
    }
  }
  return s.q();
}

/// Aggregate structural invariants for one spec.
struct InvariantResult {
  uint32_t components = 0;
  std::optional<uint32_t> diameter;  // nullopt = infinite (disconnected)
  bool diameter_is_lower_bound = false;
  std::optional<uint32_t> girth;  // nullopt = acyclic
  std::optional<uint32_t> regular_degree;  // nullopt = not regular
  uint64_t elapsed_ms = 0;
};

struct InvariantOptions {
  unsigned threads = 0;
  bool sample_diameter = false;
  uint64_t sample_roots = 64;
};

inline InvariantResult invariants(const GraphSpec& s, const InvariantOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  InvariantResult r;
  r.regular_degree = regular_degree(s);
  r.components = components(s);
  if (r.components == 1) {
    r.diameter = opt.sample_diameter ? diameter_sampled(s, opt.sample_roots, opt.threads)
                                     : diameter_exact(s, opt.threads);
    r.diameter_is_lower_bound = opt.sample_diameter;
  }
  r.girth = girth_exact(s);
  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

}  // namespace jwg
