// Copyright 2026 The Approachkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef APPROACHKIT_IO_HPP_
#define APPROACHKIT_IO_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/kohlberg.hpp"
#include "approachkit/strategies.hpp"

namespace approachkit {

using ordered_json = nlohmann::ordered_json;

class JsonError : public std::runtime_error {
 public:
  JsonError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line(line), column(column) {}
  std::size_t line = 0;
  std::size_t column = 0;
};

// Parses a document, translating parser byte offsets into line/column.
inline ordered_json parse_json_text(const std::string& text,
                                    const std::string& origin) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(
        e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw JsonError(origin + ": " + e.what() + " (line " +
                        std::to_string(line) + ", column " +
                        std::to_string(column) + ")",
                    line, column);
  }
}

inline ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Game JSON: {player_actions, nature_actions, dim, signals, payoffs, signal_law}
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> string_list(const ordered_json& j,
                                            const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::runtime_error(std::string("game JSON: missing array '") + key +
                             "'");
  }
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

inline Vec vec_from(const ordered_json& j) {
  Vec out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

inline ordered_json vec_to(const Vec& v) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

}  // namespace detail

inline GameSpec game_from_json(const ordered_json& j,
                               const Config& cfg = default_config()) {
  GameSpec g;
  g.player_actions = detail::string_list(j, "player_actions");
  g.nature_actions = detail::string_list(j, "nature_actions");
  g.dim = j.at("dim").get<std::size_t>();
  g.signals = detail::string_list(j, "signals");
  const auto& payoffs = j.at("payoffs");
  const auto& law = j.at("signal_law");
  g.payoffs.resize(g.player_actions.size());
  g.signal_law.resize(g.player_actions.size());
  if (payoffs.size() != g.player_actions.size() ||
      law.size() != g.player_actions.size()) {
    throw std::runtime_error("game JSON: payoff/signal_law row count");
  }
  for (std::size_t i = 0; i < g.player_actions.size(); ++i) {
    for (const auto& cell : payoffs.at(i)) {
      g.payoffs[i].push_back(detail::vec_from(cell));
    }
    for (const auto& cell : law.at(i)) {
      g.signal_law[i].push_back(detail::vec_from(cell));
    }
  }
  validate_game(g, cfg);
  return g;
}

inline ordered_json game_to_json(const GameSpec& g) {
  ordered_json j;
  j["player_actions"] = g.player_actions;
  j["nature_actions"] = g.nature_actions;
  j["dim"] = g.dim;
  j["signals"] = g.signals;
  ordered_json payoffs = ordered_json::array();
  ordered_json law = ordered_json::array();
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    ordered_json prow = ordered_json::array();
    ordered_json lrow = ordered_json::array();
    for (std::size_t jj = 0; jj < g.num_nature_actions(); ++jj) {
      prow.push_back(detail::vec_to(g.payoffs[i][jj]));
      lrow.push_back(detail::vec_to(g.signal_law[i][jj]));
    }
    payoffs.push_back(std::move(prow));
    law.push_back(std::move(lrow));
  }
  j["payoffs"] = std::move(payoffs);
  j["signal_law"] = std::move(law);
  return j;
}

inline GameSpec load_game(const std::string& path,
                          const Config& cfg = default_config()) {
  return game_from_json(parse_json_file(path), cfg);
}

inline void save_game(const std::string& path, const GameSpec& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << game_to_json(g).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Target JSON: tagged by "type".
// ---------------------------------------------------------------------------

inline TargetSet target_from_json(const ordered_json& j,
                                  const Config& cfg = default_config()) {
  const std::string type = j.at("type").get<std::string>();
  TargetSet out;
  if (type == "orthant") {
    out = Orthant{detail::vec_from(j.at("a"))};
  } else if (type == "halfspace") {
    out = HalfSpace{detail::vec_from(j.at("a")), j.at("b").get<double>()};
  } else if (type == "polytope") {
    Polytope p;
    for (const auto& row : j.at("A")) p.rows.push_back(detail::vec_from(row));
    p.offsets = detail::vec_from(j.at("b"));
    out = std::move(p);
  } else if (type == "support") {
    SupportSampled s;
    for (const auto& row : j.at("directions")) {
      s.directions.push_back(detail::vec_from(row));
    }
    s.values = detail::vec_from(j.at("values"));
    out = std::move(s);
  } else {
    throw std::runtime_error("target JSON: unknown type '" + type + "'");
  }
  validate_target(out, cfg);
  return out;
}

inline ordered_json target_to_json(const TargetSet& target) {
  ordered_json j;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Orthant>) {
          j["type"] = "orthant";
          j["a"] = detail::vec_to(t.a);
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          j["type"] = "halfspace";
          j["a"] = detail::vec_to(t.a);
          j["b"] = t.b;
        } else if constexpr (std::is_same_v<T, Polytope>) {
          j["type"] = "polytope";
          ordered_json rows = ordered_json::array();
          for (const Vec& r : t.rows) rows.push_back(detail::vec_to(r));
          j["A"] = std::move(rows);
          j["b"] = detail::vec_to(t.offsets);
        } else {
          j["type"] = "support";
          ordered_json rows = ordered_json::array();
          for (const Vec& r : t.directions) rows.push_back(detail::vec_to(r));
          j["directions"] = std::move(rows);
          j["values"] = detail::vec_to(t.values);
        }
      },
      target);
  return j;
}

inline TargetSet load_target(const std::string& path,
                             const Config& cfg = default_config()) {
  return target_from_json(parse_json_file(path), cfg);
}

// ---------------------------------------------------------------------------
// Simultaneous games JSON: shared label sets plus one {payoffs, signal_law}
// object per state.
// ---------------------------------------------------------------------------

inline SimultaneousGames simultaneous_from_json(
    const ordered_json& j, const Config& cfg = default_config()) {
  SimultaneousGames games;
  games.player_actions = detail::string_list(j, "player_actions");
  games.nature_actions = detail::string_list(j, "nature_actions");
  games.signals = detail::string_list(j, "signals");
  for (const auto& state : j.at("games")) {
    std::vector<Vec> payoff_rows;
    for (const auto& row : state.at("payoffs")) {
      payoff_rows.push_back(detail::vec_from(row));
    }
    games.payoffs.push_back(std::move(payoff_rows));
    std::vector<std::vector<Vec>> law;
    for (const auto& row : state.at("signal_law")) {
      std::vector<Vec> cells;
      for (const auto& cell : row) cells.push_back(detail::vec_from(cell));
      law.push_back(std::move(cells));
    }
    games.signal_laws.push_back(std::move(law));
  }
  validate_simultaneous(games, cfg);
  return games;
}

inline ordered_json simultaneous_to_json(const SimultaneousGames& games) {
  ordered_json j;
  j["player_actions"] = games.player_actions;
  j["nature_actions"] = games.nature_actions;
  j["signals"] = games.signals;
  ordered_json arr = ordered_json::array();
  for (std::size_t g = 0; g < games.count(); ++g) {
    ordered_json state;
    ordered_json prows = ordered_json::array();
    for (const Vec& row : games.payoffs[g]) {
      prows.push_back(detail::vec_to(row));
    }
    state["payoffs"] = std::move(prows);
    ordered_json lrows = ordered_json::array();
    for (const auto& row : games.signal_laws[g]) {
      ordered_json cells = ordered_json::array();
      for (const Vec& cell : row) cells.push_back(detail::vec_to(cell));
      lrows.push_back(std::move(cells));
    }
    state["signal_law"] = std::move(lrows);
    arr.push_back(std::move(state));
  }
  j["games"] = std::move(arr);
  return j;
}

inline SimultaneousGames load_simultaneous(
    const std::string& path, const Config& cfg = default_config()) {
  return simultaneous_from_json(parse_json_file(path), cfg);
}

// ---------------------------------------------------------------------------
// Config serialization and the run-config hash embedded in artifacts.
// ---------------------------------------------------------------------------

inline ordered_json config_to_json(const Config& c) {
  ordered_json j;
  j["simplex_sum_tol"] = c.simplex_sum_tol;
  j["distribution_tol"] = c.distribution_tol;
  j["unit_norm_tol"] = c.unit_norm_tol;
  j["projection_tol"] = c.projection_tol;
  j["dykstra_max_sweeps"] = c.dykstra_max_sweeps;
  j["lp_feasibility_tol"] = c.lp_feasibility_tol;
  j["lp_optimality_tol"] = c.lp_optimality_tol;
  j["lp_compare_tol"] = c.lp_compare_tol;
  j["fiber_vertex_tol"] = c.fiber_vertex_tol;
  j["flag_compare_tol"] = c.flag_compare_tol;
  j["flag_repair_tol"] = c.flag_repair_tol;
  j["fiber_vertex_max_actions"] = c.fiber_vertex_max_actions;
  j["nr_vertex_max_vars"] = c.nr_vertex_max_vars;
  j["condition_tol"] = c.condition_tol;
  j["grid_denominator"] = c.grid_denominator;
  j["grid_max_points"] = c.grid_max_points;
  j["urc_grid_points"] = c.urc_grid_points;
  j["subgradient_iterations"] = c.subgradient_iterations;
  j["use_subgradient_saddle"] = c.use_subgradient_saddle;
  j["cutting_plane_max_rounds"] = c.cutting_plane_max_rounds;
  j["directions_2d"] = c.directions_2d;
  j["directions_3d"] = c.directions_3d;
  return j;
}

inline std::string hash_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  detail::fnv1a_mix(h, text.data(), text.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string config_hash(const ordered_json& run_config) {
  return hash_hex(run_config.dump());
}

// ---------------------------------------------------------------------------
// CSV artifacts. Decimal dot, 17 significant digits, byte-stable across
// reruns of the same config.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace detail

inline void write_trace_csv(std::ostream& out, const Trace& trace,
                            const std::string& run_hash) {
  out << "n,dist,dist_R,dist_pure,i,j,signal,step_inner,seed,config_hash\n";
  for (const TraceRow& row : trace.rows) {
    out << row.n << ',' << detail::format_double(row.dist) << ','
        << detail::format_double(row.dist_R) << ','
        << detail::format_double(row.dist_pure) << ',' << row.i << ','
        << row.j << ',' << row.signal << ','
        << detail::format_double(row.step_inner) << ',' << trace.header.seed
        << ',' << run_hash << "\n";
  }
}

inline void write_trace_csv(const std::string& path, const Trace& trace,
                            const std::string& run_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace_csv(out, trace, run_hash);
}

// Per-round quantiles of the controlled distance over replications.
struct DistQuantiles {
  std::size_t n = 0;
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

inline std::vector<DistQuantiles> distance_quantiles(
    const std::vector<Trace>& traces) {
  if (traces.empty()) return {};
  std::size_t rounds = traces.front().rows.size();
  for (const Trace& t : traces) {
    rounds = std::min(rounds, t.rows.size());
  }
  std::vector<DistQuantiles> out;
  out.reserve(rounds);
  auto rank = [](const std::vector<double>& sorted, double q) {
    const std::size_t idx = static_cast<std::size_t>(
        q * static_cast<double>(sorted.size() - 1) + 0.5);
    return sorted[std::min(idx, sorted.size() - 1)];
  };
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<double> vals;
    vals.reserve(traces.size());
    for (const Trace& t : traces) vals.push_back(t.rows[r].dist);
    std::sort(vals.begin(), vals.end());
    DistQuantiles q;
    q.n = r + 1;
    q.min = vals.front();
    q.q25 = rank(vals, 0.25);
    q.median = rank(vals, 0.5);
    q.q75 = rank(vals, 0.75);
    q.max = vals.back();
    out.push_back(q);
  }
  return out;
}

inline void write_quantiles_csv(std::ostream& out,
                                const std::vector<DistQuantiles>& rows,
                                const std::string& run_hash) {
  out << "n,min,q25,median,q75,max,config_hash\n";
  for (const DistQuantiles& q : rows) {
    out << q.n << ',' << detail::format_double(q.min) << ','
        << detail::format_double(q.q25) << ','
        << detail::format_double(q.median) << ','
        << detail::format_double(q.q75) << ','
        << detail::format_double(q.max) << ',' << run_hash << "\n";
  }
}

// Summary of a batch of replications: final distances, per-step condition
// violations, schedule echo and the producing configuration.
inline ordered_json summarize_traces(const std::vector<Trace>& traces,
                                     const ordered_json& run_config,
                                     double violation_tol = 1e-7) {
  ordered_json j;
  j["config"] = run_config;
  j["config_hash"] = config_hash(run_config);
  j["replications"] = traces.size();
  if (!traces.empty()) {
    const TraceHeader& h = traces.front().header;
    j["strategy"] = h.strategy;
    j["nature"] = h.nature;
    j["target"] = h.target;
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h.game_hash));
    j["game_hash"] = std::string(buf);
    if (!h.block_lengths.empty()) {
      j["schedule"]["block_lengths"] = h.block_lengths;
      j["schedule"]["exploration_rates"] = detail::vec_to(h.exploration_rates);
    }
  }
  ordered_json final_dists = ordered_json::array();
  ordered_json violations = ordered_json::array();
  ordered_json seeds = ordered_json::array();
  for (const Trace& t : traces) {
    final_dists.push_back(t.final_dist());
    violations.push_back(t.condition_violations(violation_tol));
    seeds.push_back(t.header.seed);
  }
  j["final_dist"] = std::move(final_dists);
  j["condition_violations"] = std::move(violations);
  j["seeds"] = std::move(seeds);
  return j;
}

}  // namespace approachkit

#endif  // APPROACHKIT_IO_HPP_
