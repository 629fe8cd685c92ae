#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "jwg/errors.hpp"
#include "jwg/graph.hpp"
#include "jwg/metrics.hpp"
#include "jwg/symfun.hpp"
#include "jwg/witness.hpp"

namespace jwg {

using Json = nlohmann::ordered_json;

/// One report cell: a number, or a marker for skipped/infinite/acyclic
/// values, or a sampled lower bound.
struct MetricCell {
  enum class Tag : uint8_t { Value, Skipped, Infinite, Acyclic, LowerBound, NotRegular };
  Tag tag = Tag::Skipped;
  uint64_t value = 0;

  static MetricCell val(uint64_t v) { return {Tag::Value, v}; }
  static MetricCell skipped() { return {Tag::Skipped, 0}; }
  static MetricCell infinite() { return {Tag::Infinite, 0}; }
  static MetricCell acyclic() { return {Tag::Acyclic, 0}; }
  static MetricCell lower_bound(uint64_t v) { return {Tag::LowerBound, v}; }
  static MetricCell not_regular() { return {Tag::NotRegular, 0}; }

  bool has_value() const { return tag == Tag::Value; }

  Json to_json() const {
    switch (tag) {
      case Tag::Value: return value;
      case Tag::Skipped: return "skipped";
      case Tag::Infinite: return "inf";
      case Tag::Acyclic: return "acyclic";
      case Tag::LowerBound: return ">=" + std::to_string(value);
      case Tag::NotRegular: return "not_regular";
    }
    return nullptr;
  }

  std::string to_csv() const {
    Json j = to_json();
    return j.is_string() ? j.get<std::string>() : j.dump();
  }
};

enum class Agreement : uint8_t { Confirmed, Violated, Finding, NA };

inline const char* agreement_name(Agreement a) {
  switch (a) {
    case Agreement::Confirmed: return "confirmed";
    case Agreement::Violated: return "violated";
    case Agreement::Finding: return "finding";
    case Agreement::NA: return "n/a";
  }
  return "?";
}

/// Computed-versus-predicted record for one (q, m, i, j) cell.
struct ReportRecord {
  uint32_t q = 0, p = 0, e = 0;
  std::vector<uint32_t> poly;
  uint32_t m = 0, i = 0, j = 0;
  uint64_t vertices = 0, edges = 0;
  MetricCell regular_degree, components, diameter;
  uint32_t diameter_bound = 0;
  Agreement diameter_agrees = Agreement::NA;
  MetricCell girth_bfs, girth_algebraic, girth_predicted;
  std::string girth_predicted_status;
  std::string girth_predicted_source;
  Agreement girth_agrees = Agreement::NA;
  Json witnesses = nullptr;
  uint64_t elapsed_ms = 0;
};

struct GridLimits {
  uint64_t max_vertices = 200'000;  // cells above this skip BFS metrics
  uint64_t sample_roots = 64;       // roots used when diameter is sampled
  unsigned threads = 0;             // 0 = hardware concurrency
  bool sample_diameter = false;     // report a BFS lower bound instead of the exact diameter
  bool include_witnesses = false;   // attach the girth witness cycle to each record
};

struct GridSpec {
  std::vector<Field> fields;
  uint32_t m_min = 1, m_max = 1;
  // nullopt = all pairs 1 <= i < j <= m+2; pairs outside a given m's range are skipped
  std::optional<std::vector<std::pair<uint32_t, uint32_t>>> ij_filter;
  GridLimits limits;
};

inline Json walk_to_json(const GraphSpec& s, const Walk& w) {
  Json verts = Json::array();
  for (VertexId v : w.vertices) {
    Json coords_json = Json::array();
    for (Fe c : coords(s, v)) coords_json.push_back(c.v);
    verts.push_back(Json{{"side", v.side == Side::Point ? "P" : "L"},
                         {"rank", v.rank},
                         {"coords", coords_json}});
  }
  return Json{{"kind", w.kind == WalkKind::Path ? "path" : "cycle"},
              {"length", w.length()},
              {"vertices", verts}};
}

namespace detail {

inline ReportRecord run_cell(const Field& field, uint32_t m, uint32_t i, uint32_t j,
                             const GridLimits& lim) {
  auto t0 = std::chrono::steady_clock::now();
  GraphSpec s = jumped_spec(field, m, i, j);
  ReportRecord r;
  r.q = field.q();
  r.p = field.p();
  r.e = field.e();
  r.poly = field.modulus();
  r.m = m;
  r.i = i;
  r.j = j;
  auto c = counts(s);
  r.vertices = c.vertices;
  r.edges = c.edges;
  r.diameter_bound = 2 * (m + 1);

  auto pred = predicted_girth(s);
  r.girth_predicted = MetricCell::val(pred.value);
  r.girth_predicted_status = pred_status_name(pred.status);
  r.girth_predicted_source = pred.source;

  if (s.q() <= 64) {
    if (auto w4 = four_cycle_search(s)) {
      r.girth_algebraic = MetricCell::val(4);
      if (lim.include_witnesses) r.witnesses = Json{{"girth_cycle", walk_to_json(s, *w4)}};
    } else if (auto w6 = six_cycle_search(s)) {
      r.girth_algebraic = MetricCell::val(6);
      if (lim.include_witnesses) r.witnesses = Json{{"girth_cycle", walk_to_json(s, *w6)}};
    } else {
      Walk w8 = eight_cycle(s);
      r.girth_algebraic = MetricCell::val(8);
      if (lim.include_witnesses) r.witnesses = Json{{"girth_cycle", walk_to_json(s, w8)}};
    }
  }

  bool run_bfs = c.vertices <= lim.max_vertices;
  if (run_bfs) {
    auto reg = regular_degree(s);
    r.regular_degree = reg ? MetricCell::val(*reg) : MetricCell::not_regular();
    uint32_t comp = components(s);
    r.components = MetricCell::val(comp);
    if (comp == 1) {
      if (lim.sample_diameter) {
        auto d = diameter_sampled(s, lim.sample_roots, lim.threads);
        r.diameter = d ? MetricCell::lower_bound(*d) : MetricCell::infinite();
      } else {
        auto d = diameter_exact(s, lim.threads);
        r.diameter = d ? MetricCell::val(*d) : MetricCell::infinite();
      }
    } else {
      r.diameter = MetricCell::infinite();
    }
    auto g = girth_exact(s);
    r.girth_bfs = g ? MetricCell::val(*g) : MetricCell::acyclic();
  }

  // bound check applies on the connected range m < q-2
  bool in_connected_range = m < field.q() - 2;
  if (!in_connected_range || !run_bfs || r.diameter.tag == MetricCell::Tag::Skipped) {
    r.diameter_agrees = Agreement::NA;
  } else if (r.diameter.tag == MetricCell::Tag::Infinite) {
    r.diameter_agrees = j <= m + 1 ? Agreement::Violated : Agreement::Finding;
  } else if (r.diameter.tag == MetricCell::Tag::LowerBound) {
    r.diameter_agrees =
        r.diameter.value > r.diameter_bound
            ? (j <= m + 1 ? Agreement::Violated : Agreement::Finding)
            : Agreement::NA;  // a lower bound within the bound proves nothing
  } else {
    if (r.diameter.value <= r.diameter_bound)
      r.diameter_agrees = Agreement::Confirmed;
    else
      r.diameter_agrees = j <= m + 1 ? Agreement::Violated : Agreement::Finding;
  }

  const MetricCell& empirical = r.girth_bfs.has_value() ? r.girth_bfs : r.girth_algebraic;
  if (!empirical.has_value()) {
    r.girth_agrees = Agreement::NA;
  } else if (pred.status == PredStatus::Uncovered) {
    r.girth_agrees = Agreement::NA;
  } else if (pred.status == PredStatus::Inconsistent) {
    r.girth_agrees = Agreement::Finding;
  } else {
    r.girth_agrees =
        empirical.value == pred.value ? Agreement::Confirmed : Agreement::Violated;
  }

  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return r;
}

}  // namespace detail

/// One record per (q, m, i, j) cell in ascending order.  Cells whose vertex
/// count exceeds the limit are still emitted, with skipped markers on the
/// BFS columns.
inline std::vector<ReportRecord> run_grid(const GridSpec& grid) {
  if (grid.m_min < 1 || grid.m_max < grid.m_min) raise(Errc::InvalidGrid, "bad m range");
  if (grid.fields.empty()) raise(Errc::InvalidGrid, "no fields in grid");
  if (grid.ij_filter) {
    for (auto [i, j] : *grid.ij_filter)
      if (!(1 <= i && i < j)) raise(Errc::InvalidGrid, "bad (i,j) pair in filter");
  }
  std::vector<Field> fields = grid.fields;
  std::sort(fields.begin(), fields.end(),
            [](const Field& a, const Field& b) { return a.q() < b.q(); });
  std::vector<ReportRecord> out;
  for (const Field& f : fields) {
    for (uint32_t m = grid.m_min; m <= grid.m_max; ++m) {
      std::vector<std::pair<uint32_t, uint32_t>> pairs;
      if (grid.ij_filter) {
        for (auto [i, j] : *grid.ij_filter)
          if (j <= m + 2) pairs.emplace_back(i, j);
      } else {
        for (uint32_t i = 1; i <= m + 1; ++i)
          for (uint32_t j = i + 1; j <= m + 2; ++j) pairs.emplace_back(i, j);
      }
      std::sort(pairs.begin(), pairs.end());
      for (auto [i, j] : pairs) out.push_back(detail::run_cell(f, m, i, j, grid.limits));
    }
  }
  return out;
}

inline bool record_hard_failure(const ReportRecord& r) {
  if (r.girth_bfs.has_value() && r.girth_algebraic.has_value() &&
      r.girth_bfs.value != r.girth_algebraic.value)
    return true;
  return r.diameter_agrees == Agreement::Violated;
}

inline bool has_hard_failure(const std::vector<ReportRecord>& records) {
  for (const auto& r : records)
    if (record_hard_failure(r)) return true;
  return false;
}

inline Json record_to_json(const ReportRecord& r) {
  Json poly = Json::array();
  for (uint32_t c : r.poly) poly.push_back(c);
  Json j;
  j["params"] = Json{{"q", r.q}, {"p", r.p}, {"e", r.e}, {"poly", poly},
                     {"m", r.m}, {"i", r.i}, {"j", r.j}};
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["regular_degree"] = r.regular_degree.to_json();
  j["components"] = r.components.to_json();
  j["diameter"] = r.diameter.to_json();
  j["diameter_bound"] = r.diameter_bound;
  j["diameter_agrees"] = agreement_name(r.diameter_agrees);
  j["girth_bfs"] = r.girth_bfs.to_json();
  j["girth_algebraic"] = r.girth_algebraic.to_json();
  j["girth_predicted"] = r.girth_predicted.to_json();
  j["girth_predicted_status"] = r.girth_predicted_status;
  j["girth_predicted_source"] = r.girth_predicted_source;
  j["girth_agrees"] = agreement_name(r.girth_agrees);
  j["witnesses"] = r.witnesses;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline void emit_json(const std::vector<ReportRecord>& records, std::ostream& os) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r));
  os << arr.dump(2) << '\n';
  if (!os) raise(Errc::IoError, "json write failed");
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void emit_csv(const std::vector<ReportRecord>& records, std::ostream& os) {
  os << "q,p,e,poly,m,i,j,vertices,edges,regular_degree,components,diameter,"
        "diameter_bound,diameter_agrees,girth_bfs,girth_algebraic,girth_predicted,"
        "girth_predicted_status,girth_predicted_source,girth_agrees,witnesses,elapsed_ms\r\n";
  for (const auto& r : records) {
    std::string poly = "[";
    for (size_t k = 0; k < r.poly.size(); ++k)
      poly += (k ? "," : "") + std::to_string(r.poly[k]);
    poly += "]";
    std::vector<std::string> cells = {
        std::to_string(r.q), std::to_string(r.p), std::to_string(r.e), poly,
        std::to_string(r.m), std::to_string(r.i), std::to_string(r.j),
        std::to_string(r.vertices), std::to_string(r.edges),
        r.regular_degree.to_csv(), r.components.to_csv(), r.diameter.to_csv(),
        std::to_string(r.diameter_bound), agreement_name(r.diameter_agrees),
        r.girth_bfs.to_csv(), r.girth_algebraic.to_csv(), r.girth_predicted.to_csv(),
        r.girth_predicted_status, r.girth_predicted_source, agreement_name(r.girth_agrees),
        r.witnesses.is_null() ? "" : r.witnesses.dump(), std::to_string(r.elapsed_ms)};
    for (size_t k = 0; k < cells.size(); ++k)
      os << (k ? "," : "") << detail::csv_quote(cells[k]);
    os << "\r\n";
  }
  if (!os) raise(Errc::IoError, "csv write failed");
}

/// Deterministic findings block for a finished grid: the calibrated
/// determinant signs for every profile size the grid touched, the cells
/// whose stated classification is flagged inconsistent, and range notes.
inline std::string findings_text(const std::vector<ReportRecord>& records) {
  std::ostringstream os;
  os << "findings:\n";
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> profiles;
  for (const auto& r : records) profiles.insert({r.m + 1, r.i, r.j});
  os << "  determinant sign calibration (profile n,i,j -> eps):";
  for (auto [n, i, j] : profiles)
    os << " (" << n << ',' << i << ',' << j << ")->"
       << (detail::closed_form_sign(n, i, j) > 0 ? "+1" : "-1");
  os << '\n';
  bool any_inconsistent = false;
  for (const auto& r : records) {
    if (r.girth_predicted_status != "inconsistent") continue;
    any_inconsistent = true;
    const MetricCell& emp = r.girth_bfs.has_value() ? r.girth_bfs : r.girth_algebraic;
    os << "  inconsistent classification at J_" << r.m << '(' << r.q << ',' << r.i << ','
       << r.j << "): stated girth " << r.girth_predicted.to_csv() << ", measured "
       << (emp.has_value() ? emp.to_csv() : std::string("(not computed)")) << " ["
       << r.girth_predicted_source << "]\n";
  }
  if (!any_inconsistent) os << "  no inconsistent classification cells in this grid\n";
  bool any_outer = false;
  for (const auto& r : records)
    if (r.j == r.m + 2) any_outer = true;
  if (any_outer)
    os << "  note: regularity/connectivity/diameter checks extend the stated range"
          " 1 <= i < j <= m+1 to j = m+2\n";
  return os.str();
}

}  // namespace jwg
