#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jwg/report.hpp"

namespace jwg {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "q=2,3,4;m=1-3;ij=all"  |  "ij=1:3,2:4"
inline void parse_grid_expr(const std::string& expr, GridSpec& grid) {
  for (const std::string& clause : split(expr, ';')) {
    if (clause.empty()) continue;
    size_t eq = clause.find('=');
    if (eq == std::string::npos) raise(Errc::InvalidGrid, "grid clause needs key=value");
    std::string key = clause.substr(0, eq);
    std::string value = clause.substr(eq + 1);
    if (key == "q") {
      for (const std::string& item : split(value, ','))
        grid.fields.push_back(Field::parse(item));
    } else if (key == "m") {
      size_t dash = value.find('-');
      if (dash == std::string::npos) {
        grid.m_min = grid.m_max = static_cast<uint32_t>(std::stoul(value));
      } else {
        grid.m_min = static_cast<uint32_t>(std::stoul(value.substr(0, dash)));
        grid.m_max = static_cast<uint32_t>(std::stoul(value.substr(dash + 1)));
      }
    } else if (key == "ij") {
      if (value == "all") {
        grid.ij_filter.reset();
      } else {
        std::vector<std::pair<uint32_t, uint32_t>> pairs;
        for (const std::string& item : split(value, ',')) {
          size_t colon = item.find(':');
          if (colon == std::string::npos) raise(Errc::InvalidGrid, "ij pair needs i:j");
          pairs.emplace_back(static_cast<uint32_t>(std::stoul(item.substr(0, colon))),
                             static_cast<uint32_t>(std::stoul(item.substr(colon + 1))));
        }
        grid.ij_filter = std::move(pairs);
      }
    } else {
      raise(Errc::InvalidGrid, "unknown grid key '" + key + "'");
    }
  }
}

struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;
  bool to_file = false;

  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) raise(Errc::IoError, "cannot open " + path);
      os = &file;
      to_file = true;
    }
  }
};

inline VertexId parse_vertex(const std::string& side, uint64_t rank) {
  if (side == "P" || side == "p") return point(rank);
  if (side == "L" || side == "l") return line(rank);
  raise(Errc::InvalidGrid, "vertex side must be P or L");
}

}  // namespace detail

/// Runs one CLI invocation; argv[0] is the program name.  Exit codes:
/// 0 success, 1 hard invariant failure in a verify run, 2 usage error.
inline int cli_dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"jumped Wenger graph toolkit: construction, exact invariants,"
               " witnesses, and verification grids"};
  app.require_subcommand(1);

  std::string q_desc, out_path, format = "json", grid_expr;
  uint32_t m = 1, i = 1, j = 2;
  bool all_ij = false;
  unsigned threads = 0;
  uint64_t max_vertices = 200'000;
  bool sample_diameter = false, with_witnesses = false;

  auto add_spec_flags = [&](CLI::App* cmd, bool need_ij) {
    cmd->add_option("--q", q_desc, "field: p, p^e, p^e/[c0,..,ce], or a prime power")
        ->required();
    cmd->add_option("--m", m, "number of coordinate equations")->required();
    if (need_ij) {
      cmd->add_option("--i", i, "first jump position");
      cmd->add_option("--j", j, "second jump position");
    }
  };

  auto* gen = app.add_subcommand("gen", "export one graph as an edge list");
  add_spec_flags(gen, true);
  gen->add_option("--format", format, "edgelist | dimacs")
      ->check(CLI::IsMember({"edgelist", "dimacs"}))
      ->default_val("edgelist");
  gen->add_option("--out", out_path, "output path")->required();

  auto* inv = app.add_subcommand("invariants", "exact invariants of one graph");
  add_spec_flags(inv, true);
  inv->add_option("--format", format, "json | csv");
  inv->add_option("--out", out_path, "output path (stdout when omitted)");
  inv->add_option("--threads", threads, "worker threads (0 = hardware)");
  inv->add_option("--max-vertices", max_vertices, "skip BFS metrics above this size");
  inv->add_flag("--sample-diameter", sample_diameter, "report a sampled diameter lower bound");
  inv->add_flag("--witnesses", with_witnesses, "attach girth witness cycles");

  auto* verify = app.add_subcommand("verify", "run a parameter grid and compare"
                                              " against the stated classification");
  verify->add_option("--q", q_desc, "field (single-spec form)");
  verify->add_option("--m", m, "m (single-spec form)");
  verify->add_option("--i", i, "first jump position");
  verify->add_option("--j", j, "second jump position");
  verify->add_flag("--all-ij", all_ij, "all pairs 1 <= i < j <= m+2");
  verify->add_option("--grid", grid_expr, "grid expression, e.g. q=3,4,5;m=1-2;ij=all");
  verify->add_option("--format", format, "json | csv");
  verify->add_option("--out", out_path, "report path (stdout when omitted)");
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");
  verify->add_option("--max-vertices", max_vertices, "skip BFS metrics above this size");
  verify->add_flag("--sample-diameter", sample_diameter, "sampled diameter lower bounds");
  verify->add_flag("--witnesses", with_witnesses, "attach girth witness cycles");

  auto* wit = app.add_subcommand("witness", "construct a validated path or cycle");
  std::string from_side = "L", to_side = "L";
  std::optional<uint64_t> from_rank, to_rank;
  auto* wpath = wit->add_subcommand("path", "constructive path between two vertices");
  auto* wc4 = wit->add_subcommand("cycle4", "scan for a 4-cycle");
  auto* wc6 = wit->add_subcommand("cycle6", "scan for a 6-cycle");
  auto* wc8 = wit->add_subcommand("cycle8", "the explicit 8-cycle");
  for (CLI::App* cmd : {wpath, wc4, wc6, wc8}) {
    add_spec_flags(cmd, true);
    cmd->add_option("--out", out_path, "output path (stdout when omitted)");
  }
  wpath->add_option("--from-side", from_side, "P | L");
  wpath->add_option("--from", from_rank, "rank of the start vertex");
  wpath->add_option("--to-side", to_side, "P | L");
  wpath->add_option("--to", to_rank, "rank of the end vertex");

  auto* search = app.add_subcommand("search", "tuple searches behind the path system");
  uint32_t n = 1, k = 0;
  std::optional<uint32_t> fixed_first;
  auto* ss = search->add_subcommand("sigma", "distinct tuple with sigma_k != 0");
  ss->add_option("--q", q_desc, "field")->required();
  ss->add_option("--n", n, "tuple length")->required();
  ss->add_option("--k", k, "target degree")->required();
  ss->add_option("--out", out_path, "output path (stdout when omitted)");
  auto* sp = search->add_subcommand("sigma-pair", "distinct tuple with paired sigma != 0");
  sp->add_option("--q", q_desc, "field")->required();
  sp->add_option("--n", n, "tuple length")->required();
  sp->add_option("--i", i, "first index")->required();
  sp->add_option("--j", j, "second index")->required();
  sp->add_option("--fixed-first", fixed_first, "pin the first tuple element to this rank");
  sp->add_option("--out", out_path, "output path (stdout when omitted)");

  std::vector<const char*> cargs;
  cargs.reserve(argv.size());
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (gen->parsed()) {
      GraphSpec s = jumped_spec(Field::parse(q_desc), m, i, j);
      export_edgelist(s, out_path,
                      format == "dimacs" ? EdgeFormat::Dimacs : EdgeFormat::EdgeList);
      return 0;
    }

    GridLimits lim;
    lim.max_vertices = max_vertices;
    lim.threads = threads;
    lim.sample_diameter = sample_diameter;
    lim.include_witnesses = with_witnesses;

    if (inv->parsed() || verify->parsed()) {
      GridSpec grid;
      grid.limits = lim;
      if (verify->parsed() && !grid_expr.empty()) {
        detail::parse_grid_expr(grid_expr, grid);
        if (grid.fields.empty()) raise(Errc::InvalidGrid, "grid expression names no fields");
      } else {
        if (q_desc.empty()) raise(Errc::InvalidGrid, "need --q or --grid");
        grid.fields.push_back(Field::parse(q_desc));
        grid.m_min = grid.m_max = m;
        if (!all_ij) grid.ij_filter = {{std::make_pair(i, j)}};
      }
      auto records = run_grid(grid);
      detail::OutStream out(out_path);
      if (format == "csv")
        emit_csv(records, *out.os);
      else
        emit_json(records, *out.os);
      if (verify->parsed()) {
        std::ostream& fs = out.to_file ? std::cout : std::cerr;
        fs << findings_text(records);
      }
      return verify->parsed() && has_hard_failure(records) ? 1 : 0;
    }

    if (wit->parsed()) {
      GraphSpec s = jumped_spec(Field::parse(q_desc), m, i, j);
      detail::OutStream out(out_path);
      Json result;
      if (wpath->parsed()) {
        VertexId from = detail::parse_vertex(from_side, from_rank.value_or(0));
        VertexId to = detail::parse_vertex(to_side, to_rank.value_or(s.side_size - 1));
        Walk w = from.side == Side::Point && to.side == Side::Point
                     ? path_between_points(s, from, to)
                 : from.side == Side::Line && to.side == Side::Line
                     ? path_between_lines(s, from, to)
                 : from.side == Side::Point ? path_point_to_line(s, from, to)
                                            : [&] {
                                                Walk rev = path_point_to_line(s, to, from);
                                                std::reverse(rev.vertices.begin(),
                                                             rev.vertices.end());
                                                return rev;
                                              }();
        result = walk_to_json(s, w);
        // the construction bounds the length; BFS gives the true distance
        auto d = distance_between(s, from, to);
        result["bfs_distance"] = d ? Json(*d) : Json("inf");
      } else if (wc8->parsed()) {
        result = walk_to_json(s, eight_cycle(s));
      } else {
        auto w = wc4->parsed() ? four_cycle_search(s) : six_cycle_search(s);
        result = w ? walk_to_json(s, *w) : Json{{"found", false}};
      }
      *out.os << result.dump(2) << '\n';
      return 0;
    }

    if (search->parsed()) {
      Field f = Field::parse(q_desc);
      detail::OutStream out(out_path);
      std::vector<Fe> tuple;
      Json result;
      if (ss->parsed()) {
        tuple = search_sigma_nonzero(f, n, k);
        result["value"] = sigma(f, static_cast<int>(k), tuple).v;
      } else {
        std::optional<Fe> ff;
        if (fixed_first) ff = f.elem(*fixed_first);
        tuple = search_sigma_pair_nonzero(f, n, i, j, ff);
        result["value"] =
            sigma_pair(f, static_cast<int>(n) - static_cast<int>(i),
                       static_cast<int>(n) - static_cast<int>(j), tuple)
                .v;
      }
      Json jt = Json::array();
      for (Fe x : tuple) jt.push_back(x.v);
      result["tuple"] = jt;
      *out.os << result.dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace jwg
