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

#ifndef APPROACHKIT_KOHLBERG_HPP_
#define APPROACHKIT_KOHLBERG_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/lp.hpp"
#include "approachkit/monitoring.hpp"

namespace approachkit {

// A family of scalar games with common action and signal sets, played
// simultaneously: one payoff matrix and one signal law per state.
struct SimultaneousGames {
  std::vector<std::string> player_actions;
  std::vector<std::string> nature_actions;
  std::vector<std::string> signals;
  std::vector<std::vector<Vec>> payoffs;                // [g][i] -> row over j
  std::vector<std::vector<std::vector<Vec>>> signal_laws;  // [g][i][j] -> law

  std::size_t count() const { return payoffs.size(); }
  std::size_t num_player_actions() const { return player_actions.size(); }
  std::size_t num_nature_actions() const { return nature_actions.size(); }
  std::size_t num_signals() const { return signals.size(); }

  // The g-th state viewed as a standalone scalar-payoff game.
  GameSpec state_game(std::size_t g) const {
    GameSpec spec;
    spec.player_actions = player_actions;
    spec.nature_actions = nature_actions;
    spec.signals = signals;
    spec.dim = 1;
    spec.payoffs.assign(num_player_actions(),
                        std::vector<Vec>(num_nature_actions()));
    for (std::size_t i = 0; i < num_player_actions(); ++i) {
      for (std::size_t j = 0; j < num_nature_actions(); ++j) {
        spec.payoffs[i][j] = Vec{payoffs.at(g).at(i).at(j)};
      }
    }
    spec.signal_law = signal_laws.at(g);
    return spec;
  }
};

inline void validate_simultaneous(const SimultaneousGames& games,
                                  const Config& cfg = default_config()) {
  if (games.count() == 0) {
    throw std::invalid_argument("SimultaneousGames: no states");
  }
  for (std::size_t g = 0; g < games.count(); ++g) {
    validate_game(games.state_game(g), cfg);
  }
}

// Tuples of per-state mixed actions inducing identical flags, so play
// leaks no state information. Stored through its extreme points.
struct NRSet {
  std::vector<std::vector<Vec>> vertices;  // [k][g] -> mixed action

  std::size_t count() const { return vertices.size(); }
};

namespace detail {

// Sampled-range comparison of the per-state flag maps: every flag
// reachable in state g must be realizable in state 0 and vice versa.
inline void check_flag_ranges(const SimultaneousGames& games,
                              const Config& cfg) {
  const std::size_t J = games.num_nature_actions();
  const std::vector<Vec> probe = simplex_grid(J, 4);
  std::vector<GameSpec> states;
  for (std::size_t g = 0; g < games.count(); ++g) {
    states.push_back(games.state_game(g));
  }
  for (std::size_t g = 1; g < games.count(); ++g) {
    for (const Vec& y : probe) {
      const Flag fg = maximal_information(states[g], y);
      const Flag f0 = maximal_information(states[0], y);
      if (repair_flag(states[0], fg, cfg).l1_error > cfg.flag_repair_tol ||
          repair_flag(states[g], f0, cfg).l1_error > cfg.flag_repair_tol) {
        throw std::invalid_argument(
            "SimultaneousGames: flag ranges differ across states (state " +
            std::to_string(g) + ")");
      }
    }
  }
}

}  // namespace detail

// Extreme points of the non-revealing polytope, by basic-feasible-solution
// enumeration over the stacked per-state actions. Gated at count*J small.
inline NRSet nr_vertices(const SimultaneousGames& games,
                         const Config& cfg = default_config()) {
  validate_simultaneous(games, cfg);
  detail::check_flag_ranges(games, cfg);
  const std::size_t d = games.count();
  const std::size_t I = games.num_player_actions();
  const std::size_t J = games.num_nature_actions();
  const std::size_t S = games.num_signals();
  const std::size_t vars = d * J;
  if (vars > static_cast<std::size_t>(cfg.nr_vertex_max_vars)) {
    throw std::invalid_argument(
        "nr_vertices: stacked action space too large for enumeration");
  }

  std::vector<Vec> eq_rows;
  Vec eq_rhs;
  for (std::size_t g = 1; g < d; ++g) {
    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t s = 0; s < S; ++s) {
        Vec row(vars, 0.0);
        for (std::size_t j = 0; j < J; ++j) {
          row[j] = games.signal_laws[0][i][j][s];
          row[g * J + j] = -games.signal_laws[g][i][j][s];
        }
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(0.0);
      }
    }
  }
  for (std::size_t g = 0; g < d; ++g) {
    Vec row(vars, 0.0);
    for (std::size_t j = 0; j < J; ++j) row[g * J + j] = 1.0;
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(1.0);
  }

  // Feasibility first, to give the dedicated error.
  LinearProgram feas(vars);
  for (std::size_t r = 0; r < eq_rows.size(); ++r) {
    feas.add_eq(eq_rows[r], eq_rhs[r]);
  }
  if (solve_lp(feas, cfg).status != LpStatus::Optimal) {
    throw std::runtime_error("nr_vertices: no non-revealing profile");
  }

  const std::vector<Vec> stacked = enumerate_bfs_vertices(eq_rows, eq_rhs, cfg);
  NRSet out;
  out.vertices.reserve(stacked.size());
  for (const Vec& z : stacked) {
    std::vector<Vec> tuple(d, Vec(J, 0.0));
    for (std::size_t g = 0; g < d; ++g) {
      for (std::size_t j = 0; j < J; ++j) tuple[g][j] = z[g * J + j];
    }
    out.vertices.push_back(std::move(tuple));
  }
  return out;
}

// The vector-payoff game whose Nature actions are the non-revealing
// extreme points; its compatible payoff sets are coordinate boxes, so the
// corner property holds by construction.
inline GameSpec auxiliary_game(const SimultaneousGames& games, const NRSet& nr,
                               const Config& cfg = default_config()) {
  if (nr.count() == 0) {
    throw std::invalid_argument("auxiliary_game: empty non-revealing set");
  }
  const std::size_t d = games.count();
  const std::size_t I = games.num_player_actions();
  const std::size_t J = games.num_nature_actions();
  GameSpec aux;
  aux.player_actions = games.player_actions;
  aux.signals = games.signals;
  aux.dim = d;
  for (std::size_t k = 0; k < nr.count(); ++k) {
    aux.nature_actions.push_back("k" + std::to_string(k));
  }
  aux.payoffs.assign(I, std::vector<Vec>(nr.count()));
  aux.signal_law.assign(I, std::vector<Vec>(nr.count()));
  for (std::size_t k = 0; k < nr.count(); ++k) {
    const auto& tuple = nr.vertices[k];
    for (std::size_t i = 0; i < I; ++i) {
      Vec payoff(d, 0.0);
      for (std::size_t g = 0; g < d; ++g) {
        for (std::size_t j = 0; j < J; ++j) {
          payoff[g] += tuple[g][j] * games.payoffs[g][i][j];
        }
      }
      aux.payoffs[i][k] = std::move(payoff);

      Vec law(games.num_signals(), 0.0);
      for (std::size_t j = 0; j < J; ++j) {
        axpy(law, tuple[0][j], games.signal_laws[0][i][j]);
      }
      for (std::size_t g = 1; g < d; ++g) {
        Vec law_g(games.num_signals(), 0.0);
        for (std::size_t j = 0; j < J; ++j) {
          axpy(law_g, tuple[g][j], games.signal_laws[g][i][j]);
        }
        if (linf_norm(sub(law, law_g)) > cfg.flag_compare_tol) {
          throw std::runtime_error(
              "auxiliary_game: flag mismatch across states at vertex " +
              std::to_string(k));
        }
      }
      aux.signal_law[i][k] = std::move(law);
    }
  }
  validate_game(aux, cfg);
  return aux;
}

// Value of the q-weighted one-shot zero-sum game: Nature maximizes, the
// player minimizes.
inline double u_value(const GameSpec& aux, const Vec& q,
                      const Config& cfg = default_config()) {
  if (q.size() != aux.dim) {
    throw std::invalid_argument("u_value: belief dimension mismatch");
  }
  std::vector<Vec> scalarized(aux.num_player_actions(),
                              Vec(aux.num_nature_actions(), 0.0));
  for (std::size_t i = 0; i < aux.num_player_actions(); ++i) {
    for (std::size_t k = 0; k < aux.num_nature_actions(); ++k) {
      scalarized[i][k] = dot(aux.payoffs[i][k], q);
    }
  }
  return zero_sum_value(scalarized, cfg).value;
}

// ---------------------------------------------------------------------------
// One-dimensional concavification (two states, belief (p, 1-p)).
// ---------------------------------------------------------------------------

// Upper concave envelope of sampled values, stored as its hull vertices and
// evaluated by interpolation on the hull segments.
struct CavU {
  std::vector<double> ps;  // increasing
  std::vector<double> us;

  double operator()(double p) const {
    if (ps.size() == 1) return us.front();
    if (p <= ps.front()) return us.front();
    if (p >= ps.back()) return us.back();
    const std::size_t seg = left_segment(p);
    const double t = (p - ps[seg]) / (ps[seg + 1] - ps[seg]);
    return us[seg] + t * (us[seg + 1] - us[seg]);
  }

  // Index of the hull segment covering p, taking the segment ending at p
  // when p is a kink.
  std::size_t left_segment(double p) const {
    if (ps.size() < 2) return 0;
    if (p <= ps.front()) return 0;
    auto it = std::lower_bound(ps.begin(), ps.end(), p);
    std::size_t idx = static_cast<std::size_t>(it - ps.begin());
    if (idx == 0) return 0;
    if (idx >= ps.size()) return ps.size() - 2;
    return idx - 1;
  }
};

// Monotone-chain upper hull of (p, u) samples. Needs at least three points.
inline CavU concavify(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 3) {
    throw std::invalid_argument("concavify: need at least three samples");
  }
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> pts;
  for (const auto& pt : samples) {
    if (!pts.empty() && pt.first == pts.back().first) {
      pts.back().second = pt.second;  // sorted: the last one is the max
      continue;
    }
    pts.push_back(pt);
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (pt.second - a.second) -
                           (b.second - a.second) * (pt.first - a.first);
      if (cross >= 0.0) {
        hull.pop_back();  // b lies on or below the chord a -> pt
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  CavU cav;
  for (const auto& [p, u] : hull) {
    cav.ps.push_back(p);
    cav.us.push_back(u);
  }
  return cav;
}

// Samples u on the belief grid p = k/denominator for two-state problems.
inline std::vector<std::pair<double, double>> sample_u_grid(
    const GameSpec& aux, int denominator,
    const Config& cfg = default_config()) {
  if (aux.dim != 2) {
    throw std::invalid_argument(
        "concavification implemented for two states only");
  }
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k <= denominator; ++k) {
    const double p = static_cast<double>(k) / denominator;
    out.emplace_back(p, u_value(aux, Vec{p, 1.0 - p}, cfg));
  }
  return out;
}

// Supporting vector of the envelope at belief p: the line of the active
// hull segment written as <a_p, (q, 1-q)>. At kinks the segment ending at
// p is used, fixing one of the valid supporting lines deterministically.
inline Vec supporting_vector(const CavU& cav, double p) {
  if (cav.ps.empty()) throw std::invalid_argument("supporting_vector");
  if (cav.ps.size() == 1) return Vec{cav.us.front(), cav.us.front()};
  const std::size_t seg = cav.left_segment(p);
  const double m =
      (cav.us[seg + 1] - cav.us[seg]) / (cav.ps[seg + 1] - cav.ps[seg]);
  const double c = cav.us[seg] - m * cav.ps[seg];
  return Vec{c + m, c};
}

}  // namespace approachkit

#endif  // APPROACHKIT_KOHLBERG_HPP_
