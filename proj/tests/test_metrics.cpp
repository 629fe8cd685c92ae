#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "jwg/graph.hpp"
#include "jwg/metrics.hpp"

using namespace jwg;

namespace {

Field make_q(uint32_t q) {
  uint32_t p = q, e = 1;
  for (uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      e = 0;
      for (uint32_t r = q; r > 1; r /= d) ++e;
      break;
    }
  return Field(p, e);
}

// girth oracle: for every edge (u,v), remove it and measure dist(u,v)+1.
// Independent of the BFS cross-edge rule; only usable on small graphs.
std::optional<uint32_t> girth_edge_removal_oracle(const GraphSpec& s) {
  uint64_t half = s.side_size;
  auto flat = [&](VertexId v) { return (v.side == Side::Point ? 0 : half) + v.rank; };
  std::vector<std::vector<uint64_t>> adj(2 * half);
  for (uint64_t pr = 0; pr < half; ++pr)
    for (VertexId l : point_neighbors(s, point(pr))) {
      adj[pr].push_back(flat(l));
      adj[flat(l)].push_back(pr);
    }
  uint32_t best = 0xffffffff;
  for (uint64_t u = 0; u < half; ++u)
    for (uint64_t v : adj[u]) {
      // BFS from u to v avoiding the direct edge (one copy)
      std::vector<uint32_t> dist(2 * half, 0xffffffff);
      std::vector<uint64_t> queue = {u};
      dist[u] = 0;
      bool skipped = false;
      for (size_t h = 0; h < queue.size(); ++h) {
        uint64_t x = queue[h];
        for (uint64_t y : adj[x]) {
          if (x == u && y == v && !skipped) {
            skipped = true;
            continue;
          }
          if (dist[y] == 0xffffffff) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
      }
      if (dist[v] != 0xffffffff) best = std::min(best, dist[v] + 1);
    }
  if (best == 0xffffffff) return std::nullopt;
  return best;
}

}  // namespace

TEST_CASE("bfs distances") {
  auto s = jumped_spec(Field(5, 1), 1, 1, 3);
  auto d = bfs_distances(s, point(7));
  CHECK(d.at(point(7)) == 0);
  // odd levels are lines, even levels are points
  for (uint64_t r = 0; r < s.side_size; ++r) {
    if (auto dp = d.at(point(r))) CHECK(*dp % 2 == 0);
    if (auto dl = d.at(line(r))) CHECK(*dl % 2 == 1);
  }
  CHECK(d.reached() == counts(s).vertices);  // m+2 < q: connected
}

TEST_CASE("components") {
  CHECK(components(jumped_spec(Field(7, 1), 2, 1, 3)) == 1);
  CHECK(components(jumped_spec(Field(5, 1), 1, 1, 2)) == 1);
  // m+2 >= q: no stated prediction, just record and cross-check with invariants
  auto s = jumped_spec(Field(3, 1), 2, 1, 2);
  uint32_t c = components(s);
  CHECK(c >= 1);
  auto inv = invariants(s);
  CHECK(inv.components == c);
  CHECK((c > 1) == !inv.diameter.has_value());
}

TEST_CASE("diameter examples") {
  CHECK(diameter_exact(jumped_spec(Field(3, 1), 1, 2, 3)) == 4);   // classical m=1
  CHECK(diameter_exact(jumped_spec(Field(7, 1), 2, 2, 4)) == 6);
  CHECK(diameter_exact(jumped_spec(Field(5, 1), 1, 1, 3)) == 4);
  CHECK(diameter_exact(jumped_spec(Field(5, 1), 1, 2, 3)) == 4);
  // bound holds on a few assorted connected cells
  for (auto [q, m, i, j] : {std::array<uint32_t, 4>{7, 1, 1, 2}, {8, 2, 1, 4}, {9, 1, 2, 3}}) {
    auto s = jumped_spec(make_q(q), m, i, j);
    auto d = diameter_exact(s);
    REQUIRE(d.has_value());
    CHECK(*d <= 2 * (m + 1));
  }
}

TEST_CASE("diameter worker count does not change the result") {
  auto s = jumped_spec(Field(5, 1), 2, 1, 3);
  auto d1 = diameter_exact(s, 1);
  auto d2 = diameter_exact(s, 2);
  auto d3 = diameter_exact(s, 3);
  CHECK(d1 == d2);
  CHECK(d2 == d3);
}

TEST_CASE("sampled diameter is a lower bound") {
  auto s = jumped_spec(Field(5, 1), 1, 1, 3);
  auto full = diameter_exact(s);
  auto sampled = diameter_sampled(s, 8);
  REQUIRE(full.has_value());
  REQUIRE(sampled.has_value());
  CHECK(*sampled <= *full);
}

TEST_CASE("girth examples") {
  CHECK(girth_exact(jumped_spec(Field(5, 1), 1, 1, 3)) == 4);
  CHECK(girth_exact(jumped_spec(Field(5, 1), 1, 2, 3)) == 6);
  CHECK(girth_exact(jumped_spec(Field(2, 3), 2, 1, 2)) == 8);
  // q=2 collapses all m=1 members to one 8-cycle
  CHECK(girth_exact(jumped_spec(Field(2, 1), 1, 1, 2)) == 8);
  CHECK(girth_exact(jumped_spec(Field(2, 1), 1, 1, 3)) == 8);
  // the classical m=1 member at q=3 carries a 6-cycle
  CHECK(girth_exact(jumped_spec(Field(3, 1), 1, 2, 3)) == 6);
}

TEST_CASE("girth against the edge-removal oracle on small graphs") {
  for (auto [q, m, i, j] : {std::array<uint32_t, 4>{2, 1, 1, 2}, {3, 1, 1, 2}, {3, 1, 1, 3},
                            {3, 1, 2, 3}, {4, 1, 1, 2}, {4, 1, 2, 3}, {5, 1, 1, 3},
                            {3, 2, 1, 3}, {3, 2, 2, 4}, {4, 2, 2, 3}}) {
    auto s = jumped_spec(make_q(q), m, i, j);
    CHECK(girth_exact(s) == girth_edge_removal_oracle(s));
  }
}

TEST_CASE("girth parity") {
  for (auto [q, m, i, j] : {std::array<uint32_t, 4>{2, 2, 1, 2}, {3, 2, 2, 3}, {4, 1, 1, 2},
                            {5, 2, 1, 4}, {7, 1, 1, 2}}) {
    auto g = girth_exact(jumped_spec(make_q(q), m, i, j));
    REQUIRE(g.has_value());
    CHECK(*g % 2 == 0);
  }
}

TEST_CASE("distance_between") {
  auto s = jumped_spec(Field(7, 1), 2, 2, 4);
  auto nb = point_neighbors(s, point(5));
  CHECK(distance_between(s, point(5), nb[2]) == 1);
  CHECK(distance_between(s, point(0), point(0)) == 0);
  // same side means even distance
  std::mt19937 rng(7);
  std::uniform_int_distribution<uint64_t> d(0, s.side_size - 1);
  for (int t = 0; t < 10; ++t) {
    auto dist = distance_between(s, point(d(rng)), point(d(rng)));
    REQUIRE(dist.has_value());
    CHECK(*dist % 2 == 0);
  }
  // the distance-6 pair behind the exact-diameter family
  std::vector<Fe> delta(s.ncoord(), s.field.zero());
  delta.back() = s.field.one();
  CHECK(distance_between(s, line(0), line(coords_rank(s, delta))) == 6);
}

TEST_CASE("distance symmetry") {
  auto s = jumped_spec(Field(5, 1), 1, 1, 2);
  std::mt19937 rng(11);
  std::uniform_int_distribution<uint64_t> d(0, s.side_size - 1);
  for (int t = 0; t < 20; ++t) {
    VertexId u = t % 2 ? point(d(rng)) : line(d(rng));
    VertexId v = t % 3 ? point(d(rng)) : line(d(rng));
    CHECK(distance_between(s, u, v) == distance_between(s, v, u));
  }
}

TEST_CASE("line difference profile") {
  auto s = jumped_spec(Field(5, 1), 1, 1, 2);  // the (m, m+1) family member
  std::vector<Fe> zero(s.ncoord(), s.field.zero());
  CHECK(line_difference_profile(s, zero) == 0);

  std::vector<Fe> e1 = zero;
  e1[0] = s.field.one();
  CHECK(line_difference_profile(s, e1) == 2);  // both lines pass through the zero point

  std::vector<Fe> last = zero;
  last.back() = s.field.one();
  CHECK(line_difference_profile(s, last) == 2 * (s.m + 1));

  auto s2 = jumped_spec(Field(7, 1), 2, 2, 3);
  std::vector<Fe> last2(s2.ncoord(), s2.field.zero());
  last2.back() = s2.field.one();
  CHECK(line_difference_profile(s2, last2) == 6);
}

TEST_CASE("distance between lines depends only on the difference") {
  auto s = jumped_spec(Field(5, 1), 1, 1, 3);
  const Field& f = s.field;
  std::mt19937 rng(23);
  std::uniform_int_distribution<uint64_t> dr(0, s.side_size - 1);
  for (uint64_t delta_rank : {1ull, 7ull, 12ull, 24ull}) {
    auto delta = coords(s, line(delta_rank));
    auto base = line_difference_profile(s, delta);
    for (int t = 0; t < 10; ++t) {
      uint64_t lrank = dr(rng);
      auto lc = coords(s, line(lrank));
      std::vector<Fe> shifted(s.ncoord());
      for (uint32_t k = 0; k < s.ncoord(); ++k) shifted[k] = f.add(lc[k], delta[k]);
      CHECK(distance_between(s, line(lrank), line(coords_rank(s, shifted))) == base);
    }
  }
}

TEST_CASE("regular degree check") {
  CHECK(regular_degree(jumped_spec(Field(5, 1), 1, 1, 3)) == 5);
  CHECK(regular_degree(jumped_spec(Field(2, 2), 2, 1, 4)) == 4);
  // sampled path on a larger cell
  CHECK(regular_degree(jumped_spec(Field(7, 1), 3, 1, 4), 100, 64) == 7);
}

TEST_CASE("invariants bundle") {
  auto inv = invariants(jumped_spec(Field(5, 1), 1, 1, 3));
  CHECK(inv.components == 1);
  CHECK(inv.diameter == 4);
  CHECK(!inv.diameter_is_lower_bound);
  CHECK(inv.girth == 4);
  CHECK(inv.regular_degree == 5);

  InvariantOptions opt;
  opt.sample_diameter = true;
  opt.sample_roots = 10;
  auto inv2 = invariants(jumped_spec(Field(5, 1), 1, 1, 3), opt);
  CHECK(inv2.diameter_is_lower_bound);
  REQUIRE(inv2.diameter.has_value());
  CHECK(*inv2.diameter <= 4);
}
