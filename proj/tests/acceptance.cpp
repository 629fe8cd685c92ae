// Acceptance harness: runs every stated verification criterion over the
// reference grid and prints one PASS/FAIL line per criterion.
//
// Grid G0: q in {2,3,4,5,7,8,9}, m in {1,2,3}, all 1 <= i < j <= m+2,
// subject to 2*q^(m+1) <= 1e5.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "jwg/gf.hpp"
#include "jwg/graph.hpp"
#include "jwg/linalg.hpp"
#include "jwg/metrics.hpp"
#include "jwg/report.hpp"
#include "jwg/symfun.hpp"
#include "jwg/witness.hpp"

using namespace jwg;

namespace {

struct Cell {
  uint32_t q, m, i, j;
};

std::vector<Field> g0_fields() {
  std::vector<Field> out;
  for (const char* qd : {"2", "3", "4", "5", "7", "8", "9"}) out.push_back(Field::parse(qd));
  return out;
}

std::vector<Cell> g0_cells() {
  std::vector<Cell> cells;
  for (const Field& f : g0_fields())
    for (uint32_t m = 1; m <= 3; ++m) {
      uint64_t side = 1;
      for (uint32_t k = 0; k <= m; ++k) side *= f.q();
      if (2 * side > 100'000) continue;
      for (uint32_t i = 1; i <= m + 1; ++i)
        for (uint32_t j = i + 1; j <= m + 2; ++j) cells.push_back({f.q(), m, i, j});
    }
  return cells;
}

const Field& field_for(uint32_t q) {
  static std::map<uint32_t, Field> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, Field::parse(std::to_string(q))).first;
  return it->second;
}

GraphSpec spec_for(const Cell& c) { return jumped_spec(field_for(c.q), c.m, c.i, c.j); }

std::string cell_name(const Cell& c) {
  std::ostringstream os;
  os << "J_" << c.m << "(" << c.q << "," << c.i << "," << c.j << ")";
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& msg) {
    pass = false;
    notes.push_back(msg);
  }
  void note(const std::string& msg) { notes.push_back(msg); }
};

// diameters are reused across criteria 3, 4 and 5; computed once
std::map<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>, std::optional<uint32_t>>
    diameter_cache;

std::optional<uint32_t> diameter_of(const Cell& c) {
  auto key = std::make_tuple(c.q, c.m, c.i, c.j);
  auto it = diameter_cache.find(key);
  if (it == diameter_cache.end())
    it = diameter_cache.emplace(key, diameter_exact(spec_for(c))).first;
  return it->second;
}

Outcome criterion_regularity() {
  Outcome o;
  for (const Cell& c : g0_cells()) {
    auto deg = regular_degree(spec_for(c));
    if (deg != c.q) o.fail(cell_name(c) + ": degree check failed");
  }
  return o;
}

Outcome criterion_connectivity() {
  Outcome o;
  for (const Cell& c : g0_cells()) {
    if (c.m + 2 >= c.q) continue;
    if (components(spec_for(c)) != 1) o.fail(cell_name(c) + ": not connected");
  }
  return o;
}

Outcome criterion_diameter_bound() {
  Outcome o;
  for (const Cell& c : g0_cells()) {
    if (!(c.m < c.q - 2)) continue;
    auto d = diameter_of(c);
    if (!d) {
      o.fail(cell_name(c) + ": disconnected inside the connected range");
      continue;
    }
    if (*d > 2 * (c.m + 1))
      o.fail(cell_name(c) + ": diameter " + std::to_string(*d) + " exceeds " +
             std::to_string(2 * (c.m + 1)));
  }
  return o;
}

Outcome criterion_diameter_exact() {
  Outcome o;
  const std::vector<std::pair<Cell, uint32_t>> concrete = {
      {{5, 1, 1, 3}, 4}, {{5, 1, 2, 3}, 4}, {{7, 2, 2, 4}, 6},
      {{7, 2, 3, 4}, 6}, {{7, 2, 2, 3}, 6}, {{7, 3, 3, 5}, 8}};
  for (const auto& [c, expect] : concrete) {
    auto d = diameter_of(c);
    if (d != expect)
      o.fail(cell_name(c) + ": diameter " + (d ? std::to_string(*d) : "inf") +
             ", required " + std::to_string(expect));
  }
  // family-wide equality across the grid
  for (const Cell& c : g0_cells()) {
    if (!(c.m < c.q - 2)) continue;
    bool family = (c.i == c.m && c.j == c.m + 2) || (c.i == c.m + 1 && c.j == c.m + 2) ||
                  (c.i == c.m && c.j == c.m + 1);
    if (!family) continue;
    auto d = diameter_of(c);
    if (d != 2 * (c.m + 1))
      o.fail(cell_name(c) + ": family diameter " + (d ? std::to_string(*d) : "inf") +
             " != " + std::to_string(2 * (c.m + 1)));
  }
  return o;
}

Outcome criterion_wenger_specialization() {
  Outcome o;
  if (diameter_of({3, 1, 2, 3}) != 4) o.fail("J_1(3,2,3): diameter != 4");
  if (diameter_of({5, 2, 3, 4}) != 6) o.fail("J_2(5,3,4): diameter != 6");
  return o;
}

Outcome criterion_girth_table() {
  Outcome o;
  const std::vector<std::pair<Cell, uint32_t>> table = {
      {{5, 1, 1, 3}, 4}, {{4, 1, 1, 2}, 4}, {{2, 1, 1, 3}, 6}, {{5, 1, 1, 2}, 6},
      {{5, 1, 2, 3}, 6}, {{3, 1, 2, 3}, 8}, {{5, 2, 1, 3}, 4}, {{4, 2, 1, 3}, 8},
      {{5, 2, 1, 2}, 6}, {{8, 2, 1, 2}, 8}, {{3, 2, 2, 3}, 8}, {{4, 2, 2, 3}, 6},
      {{5, 2, 1, 4}, 8}, {{7, 2, 1, 4}, 6}, {{3, 2, 2, 4}, 6}, {{2, 2, 2, 4}, 8},
      {{4, 3, 1, 4}, 6}, {{5, 3, 1, 4}, 8}, {{4, 3, 2, 5}, 6}, {{5, 3, 2, 5}, 8}};
  std::set<std::string> failed_cells;
  for (const auto& [c, expect] : table) {
    auto g = girth_exact(spec_for(c));
    if (g != expect) {
      std::string msg = cell_name(c) + ": girth " + (g ? std::to_string(*g) : "acyclic") +
                        ", required " + std::to_string(expect);
      uint32_t alg = algebraic_girth(spec_for(c));
      msg += " (independent cycle search also measures " + std::to_string(alg) + ")";
      o.fail(msg);
      failed_cells.insert(cell_name(c));
    }
  }
  if (failed_cells == std::set<std::string>{"J_1(2,1,3)", "J_1(3,2,3)"})
    o.note("both failing cells are known defects in the stated table: a 2-regular"
           " 8-vertex member cannot reach girth 6, and J_1(3,2,3) carries an explicit"
           " validated 6-cycle; the required values are unattainable");
  return o;
}

Outcome criterion_oracle_equivalence() {
  Outcome o;
  for (const Cell& c : g0_cells()) {
    uint64_t q3 = uint64_t(c.q) * c.q * c.q;
    if (q3 > 2000) continue;
    auto s = spec_for(c);
    auto bfs = girth_exact(s);
    uint32_t alg = algebraic_girth(s);
    if (!bfs || *bfs != alg)
      o.fail(cell_name(c) + ": BFS girth " + (bfs ? std::to_string(*bfs) : "acyclic") +
             " != algebraic " + std::to_string(alg));
  }
  return o;
}

Outcome criterion_determinant_identity() {
  Outcome o;
  // exhaustive: n <= 4, all tuples over GF(q <= 5), all 1 <= i < j <= n+1
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field& f = field_for(q);
    for (uint32_t n = 1; n <= 4; ++n) {
      uint64_t total = 1;
      for (uint32_t t = 0; t < n; ++t) total *= q;
      for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t j = i + 1; j <= n + 1; ++j) {
          ExponentProfile prof(n, i, j);
          for (uint64_t code = 0; code < total; ++code) {
            std::vector<Fe> xs(n);
            uint64_t cc = code;
            for (uint32_t t = 0; t < n; ++t) {
              xs[t] = Fe{static_cast<uint32_t>(cc % q)};
              cc /= q;
            }
            if (determinant(f, build_matrix(f, prof, xs)) !=
                closed_form_det(f, prof, xs).value) {
              o.fail("mismatch at n=" + std::to_string(n) + " q=" + std::to_string(q) +
                     " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")");
              return o;
            }
          }
        }
    }
  }
  // 1000 random larger instances
  std::mt19937 rng(20240501);
  std::vector<Field> fields = {Field(7, 1), Field(2, 3), Field(3, 2), Field(11, 1),
                               Field(13, 1)};
  for (int trial = 0; trial < 1000; ++trial) {
    const Field& f = fields[trial % fields.size()];
    uint32_t n = 5 + trial % 3;  // 5..7
    std::uniform_int_distribution<uint32_t> dr(0, f.q() - 1);
    std::vector<Fe> xs(n);
    for (auto& x : xs) x = Fe{dr(rng)};
    std::uniform_int_distribution<uint32_t> di(1, n);
    uint32_t i = di(rng);
    std::uniform_int_distribution<uint32_t> dj(i + 1, n + 1);
    uint32_t j = dj(rng);
    ExponentProfile prof(n, i, j);
    if (determinant(f, build_matrix(f, prof, xs)) != closed_form_det(f, prof, xs).value) {
      o.fail("random instance mismatch at trial " + std::to_string(trial));
      return o;
    }
  }
  return o;
}

Outcome criterion_sigma_searches() {
  Outcome o;
  size_t corner_count = 0;
  for (const char* qd : {"2", "3", "4", "5", "7", "8", "9", "11"}) {
    Field f = Field::parse(qd);
    if (f.q() < 3) continue;  // n <= q-2 needs q >= 3
    for (uint32_t n = 1; n <= f.q() - 2; ++n) {
      for (uint32_t k = 0; k <= n; ++k) {
        auto xs = search_sigma_nonzero(f, n, k);
        std::set<uint32_t> d;
        for (Fe x : xs) d.insert(x.v);
        if (d.size() != n || sigma(f, static_cast<int>(k), xs) == f.zero()) {
          o.fail("single-sigma search failed at q=" + std::string(qd) +
                 " n=" + std::to_string(n) + " k=" + std::to_string(k));
          return o;
        }
      }
      for (uint32_t i = 0; i <= n; ++i)
        for (uint32_t j = i + 1; j <= n + 1; ++j) {
          auto check = [&](std::optional<Fe> pin) -> bool {
            auto xs = search_sigma_pair_nonzero(f, n, i, j, pin);
            std::set<uint32_t> d;
            for (Fe x : xs) d.insert(x.v);
            if (d.size() != n) return false;
            if (pin && xs[0] != *pin) return false;
            return sigma_pair(f, static_cast<int>(n) - static_cast<int>(i),
                              static_cast<int>(n) - static_cast<int>(j), xs) != f.zero();
          };
          if (!check(std::nullopt)) {
            o.fail("pair search failed at q=" + std::string(qd) + " n=" + std::to_string(n) +
                   " (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")");
            return o;
          }
          for (uint32_t r = 0; r < f.q(); ++r) {
            if (i == 0 && r == 0) {
              // the paired sigma with target degree n factors through the
              // full product, which dies on a pinned zero; the search must
              // report exhaustion rather than fabricate a tuple
              ++corner_count;
              try {
                search_sigma_pair_nonzero(f, n, i, j, Fe{0});
                o.fail("pinned-zero corner unexpectedly succeeded at q=" +
                       std::string(qd) + " n=" + std::to_string(n));
                return o;
              } catch (const Error& e) {
                if (e.code() != Errc::SearchExhausted) {
                  o.fail("pinned-zero corner raised the wrong error");
                  return o;
                }
              }
              continue;
            }
            if (!check(Fe{r})) {
              o.fail("pinned pair search failed at q=" + std::string(qd) +
                     " n=" + std::to_string(n) + " (i,j)=(" + std::to_string(i) + "," +
                     std::to_string(j) + ") x1=" + std::to_string(r));
              return o;
            }
          }
        }
    }
  }
  o.note("pinned x1=0 with i=0 is impossible (the paired sigma is identically zero); " +
         std::to_string(corner_count) + " such corners verified to report exhaustion");
  return o;
}

Outcome criterion_quadratic_counts() {
  Outcome o;
  for (const char* qd : {"3", "5", "7", "9"}) {
    Field f = Field::parse(qd);
    for (uint32_t a1 = 1; a1 < f.q(); ++a1)
      for (uint32_t a2 = 1; a2 < f.q(); ++a2)
        for (uint32_t b = 0; b < f.q(); ++b) {
          int64_t predicted =
              f.q() + v_function(f, Fe{b}) *
                          quadratic_character(f, f.neg(f.mul(Fe{a1}, Fe{a2})));
          if (static_cast<int64_t>(count_diagonal_quadratic(f, Fe{a1}, Fe{a2}, Fe{b})) !=
              predicted) {
            o.fail("diagonal count mismatch at q=" + std::string(qd));
            return o;
          }
        }
  }
  for (const char* qd : {"2", "3", "5", "7", "8", "9", "11", "27", "32"}) {
    Field f = Field::parse(qd);
    auto closed = conic_closed_form(f);
    if (!closed) {
      o.fail(std::string("no stated conic value for q=") + qd);
      continue;
    }
    if (static_cast<int64_t>(count_conic_solutions(f)) != *closed)
      o.fail("conic count mismatch at q=" + std::string(qd) + ": counted " +
             std::to_string(count_conic_solutions(f)) + ", stated " + std::to_string(*closed));
  }
  return o;
}

Outcome criterion_constructive_paths() {
  Outcome o;
  for (const Cell& c : g0_cells()) {
    if (!(c.m < c.q - 2)) continue;
    auto s = spec_for(c);
    std::mt19937 rng(1000003u * c.q + 101u * c.m + 11u * c.i + c.j);
    std::uniform_int_distribution<uint64_t> dr(0, s.side_size - 1);
    for (int t = 0; t < 100; ++t) {
      VertexId a, b;
      Walk w;
      uint32_t bound;
      switch (t % 3) {
        case 0:
          a = line(dr(rng));
          b = line(dr(rng));
          w = path_between_lines(s, a, b);
          bound = 2 * (c.m + 1);
          break;
        case 1:
          a = point(dr(rng));
          b = point(dr(rng));
          w = path_between_points(s, a, b);
          bound = 2 * (c.m + 1);
          break;
        default:
          a = point(dr(rng));
          b = line(dr(rng));
          w = path_point_to_line(s, a, b);
          bound = 2 * (c.m + 1) + 1;
          break;
      }
      if (w.vertices.front() != a || w.vertices.back() != b) {
        o.fail(cell_name(c) + ": endpoints not honored");
        return o;
      }
      if (w.length() > bound) {
        o.fail(cell_name(c) + ": constructed length " + std::to_string(w.length()) +
               " exceeds " + std::to_string(bound));
        return o;
      }
      auto d = distance_between(s, a, b);
      if (!d || w.length() < *d) {
        o.fail(cell_name(c) + ": constructed walk shorter than the BFS distance");
        return o;
      }
    }
  }
  return o;
}

Outcome criterion_flagged_anomalies() {
  Outcome o;
  // the m=6 exception cell: fields must be populated and reported, not asserted
  GridSpec g6;
  g6.fields = {Field(2, 2)};
  g6.m_min = g6.m_max = 6;
  g6.ij_filter = {{std::make_pair(2u, 5u)}};
  g6.limits.sample_diameter = true;
  g6.limits.sample_roots = 8;
  auto rec6 = run_grid(g6);
  if (rec6.size() != 1) {
    o.fail("J_6(4,2,5) record missing");
    return o;
  }
  const auto& r6 = rec6[0];
  if (r6.girth_predicted_status != "inconsistent")
    o.fail("J_6(4,2,5): status not flagged inconsistent");
  if (!r6.girth_predicted.has_value() || r6.girth_predicted.value != 6)
    o.fail("J_6(4,2,5): stated girth not populated");
  if (!r6.girth_bfs.has_value())
    o.fail("J_6(4,2,5): empirical girth not populated");
  else
    o.note("J_6(4,2,5): stated 6, measured " + std::to_string(r6.girth_bfs.value));
  if (r6.girth_agrees != Agreement::Finding) o.fail("J_6(4,2,5): not reported as a finding");
  if (record_hard_failure(r6)) o.fail("J_6(4,2,5): flagged cell treated as a hard failure");

  // the mislabeled m=1 (2,3) statement at q = 2, 3
  GridSpec gl;
  gl.fields = {Field(2, 1), Field(3, 1)};
  gl.m_min = gl.m_max = 1;
  gl.ij_filter = {{std::make_pair(2u, 3u)}};
  auto recl = run_grid(gl);
  if (recl.size() != 2) {
    o.fail("label-conflict records missing");
    return o;
  }
  for (const auto& r : recl) {
    if (r.girth_predicted_status != "inconsistent")
      o.fail("J_1(" + std::to_string(r.q) + ",2,3): label conflict not flagged");
    if (!r.girth_bfs.has_value() || !r.girth_predicted.has_value())
      o.fail("J_1(" + std::to_string(r.q) + ",2,3): fields not populated");
    else
      o.note("J_1(" + std::to_string(r.q) + ",2,3): stated " +
             std::to_string(r.girth_predicted.value) + ", measured " +
             std::to_string(r.girth_bfs.value));
    if (record_hard_failure(r)) o.fail("label-conflict cell treated as a hard failure");
  }

  // determinant sign calibration must be reported
  auto all = rec6;
  all.insert(all.end(), recl.begin(), recl.end());
  std::string findings = findings_text(all);
  if (findings.find("determinant sign calibration") == std::string::npos)
    o.fail("sign calibration missing from findings");
  auto sd = closed_form_det(field_for(5), ExponentProfile(2, 1, 3),
                            std::vector<Fe>{Fe{1}, Fe{2}});
  if (sd.sign != 1 && sd.sign != -1) o.fail("sign flag not calibrated");
  o.note(std::string("sign flag for (n,i,j)=(2,1,3) calibrates to ") +
         (sd.sign > 0 ? "+1" : "-1"));
  return o;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  struct Entry {
    int id;
    const char* title;
    Outcome (*fn)();
  };
  const std::vector<Entry> criteria = {
      {1, "regularity: every vertex has degree q", criterion_regularity},
      {2, "connectivity: one component when m+2 < q", criterion_connectivity},
      {3, "diameter upper bound 2(m+1) on the connected range", criterion_diameter_bound},
      {4, "exact diameter 2(m+1) for the three boundary families", criterion_diameter_exact},
      {5, "classical specialization diameters", criterion_wenger_specialization},
      {6, "girth table", criterion_girth_table},
      {7, "BFS girth equals algebraic girth", criterion_oracle_equivalence},
      {8, "closed-form determinant identity with calibrated sign", criterion_determinant_identity},
      {9, "sigma tuple searches succeed across the grid", criterion_sigma_searches},
      {10, "quadratic-form and conic solution counts", criterion_quadratic_counts},
      {11, "constructive paths: validated, bounded, never beat BFS", criterion_constructive_paths},
      {12, "flagged anomalies are reported, not failed", criterion_flagged_anomalies},
  };
  int failures = 0;
  for (const auto& entry : criteria) {
    Outcome o;
    try {
      o = entry.fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << entry.id << ": "
              << entry.title << "\n";
    for (const auto& note : o.notes) std::cout << "        - " << note << "\n";
    if (!o.pass) ++failures;
  }
  auto t1 = std::chrono::steady_clock::now();
  std::cout << (failures ? "ACCEPTANCE: FAIL (" : "ACCEPTANCE: PASS (")
            << (failures ? std::to_string(failures) + " criterion(s) failed, " : "")
            << "elapsed "
            << std::chrono::duration_cast<std::chrono::seconds>(t1 - t0).count() << "s)\n";
  return failures ? 1 : 0;
}
