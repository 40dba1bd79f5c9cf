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

#ifndef APPROACHKIT_MONITORING_HPP_
#define APPROACHKIT_MONITORING_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/lp.hpp"

namespace approachkit {

// Raised for flags that are not realizable by any Nature mixed action and
// lie farther from the feasible set than the repair tolerance.
class FlagError : public std::runtime_error {
 public:
  FlagError(std::string what, double l1_defect)
      : std::runtime_error(std::move(what)), l1_defect(l1_defect) {}
  double l1_defect = 0.0;
};

// The polytope of Nature mixed actions producing a given flag: the equality
// system sum_j H[i][j][s] y_j = flag[i][s] over the simplex. Vertices are
// cached when the action count permits enumeration.
struct FlagFiber {
  Flag flag;                 // feasible flag actually used (post-repair)
  double repair_l1 = 0.0;    // l1 gap between the requested and used flag
  std::vector<Vec> eq_rows;  // includes the sum-to-one row (last)
  Vec eq_rhs;
  std::vector<Vec> vertices;  // empty when enumeration is gated off

  bool has_vertices() const { return !vertices.empty(); }
};

struct FlagRepair {
  Vec y;          // nearest realizing mixed action (l1 sense)
  Flag repaired;  // maximal information at y
  double l1_error = 0.0;
};

// Nearest realizable flag in the l1 sense: min_y sum |H'(y) - flag| over the
// simplex, as an LP with one slack pair per (action, signal) cell.
inline FlagRepair repair_flag(const GameSpec& g, const Flag& flag,
                              const Config& cfg = default_config()) {
  const std::size_t I = g.num_player_actions();
  const std::size_t J = g.num_nature_actions();
  const std::size_t S = g.num_signals();
  if (flag.per_action.size() != I) {
    throw std::invalid_argument("repair_flag: flag shape mismatch");
  }
  // Variables: y (J), then e_{i,s} (I*S) with e >= |H'(y) - flag|.
  LinearProgram lp(J + I * S);
  for (std::size_t t = J; t < J + I * S; ++t) lp.objective[t] = 1.0;
  for (std::size_t i = 0; i < I; ++i) {
    if (flag.per_action[i].size() != S) {
      throw std::invalid_argument("repair_flag: flag row size mismatch");
    }
    for (std::size_t s = 0; s < S; ++s) {
      Vec plus(J + I * S, 0.0), minus(J + I * S, 0.0);
      for (std::size_t j = 0; j < J; ++j) {
        plus[j] = g.signal_law[i][j][s];
        minus[j] = -g.signal_law[i][j][s];
      }
      plus[J + i * S + s] = -1.0;
      minus[J + i * S + s] = -1.0;
      lp.add_ub(std::move(plus), flag.per_action[i][s]);
      lp.add_ub(std::move(minus), -flag.per_action[i][s]);
    }
  }
  Vec ones(J + I * S, 0.0);
  for (std::size_t j = 0; j < J; ++j) ones[j] = 1.0;
  lp.add_eq(std::move(ones), 1.0);
  const LpSolution sol = solve_lp(lp, cfg);
  if (sol.status != LpStatus::Optimal) {
    throw LpError("repair_flag: repair LP failed");
  }
  FlagRepair out;
  out.y = detail::cleaned_simplex(Vec(sol.primal.begin(),
                                      sol.primal.begin() + J));
  out.repaired = maximal_information(g, out.y);
  out.l1_error = flag_l1_distance(out.repaired, flag);
  return out;
}

namespace detail {

inline FlagFiber assemble_fiber(const GameSpec& g, Flag flag, double repair_l1,
                                const Vec& witness_y, const Config& cfg) {
  const std::size_t I = g.num_player_actions();
  const std::size_t J = g.num_nature_actions();
  const std::size_t S = g.num_signals();
  FlagFiber fib;
  fib.flag = std::move(flag);
  fib.repair_l1 = repair_l1;
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t s = 0; s < S; ++s) {
      Vec row(J, 0.0);
      for (std::size_t j = 0; j < J; ++j) row[j] = g.signal_law[i][j][s];
      fib.eq_rows.push_back(std::move(row));
      fib.eq_rhs.push_back(fib.flag.per_action[i][s]);
    }
  }
  fib.eq_rows.push_back(Vec(J, 1.0));
  fib.eq_rhs.push_back(1.0);
  if (J <= static_cast<std::size_t>(cfg.fiber_vertex_max_actions)) {
    fib.vertices = enumerate_bfs_vertices(fib.eq_rows, fib.eq_rhs, cfg);
    if (fib.vertices.empty()) {
      // The flag is realizable by construction; keep the witness if the
      // enumeration lost it to rounding.
      fib.vertices.push_back(witness_y);
    }
  }
  return fib;
}

}  // namespace detail

// Builds the fiber of a flag. Flags within the repair tolerance of the
// feasible set are silently projected onto it; anything farther raises a
// FlagError carrying the l1 defect as infeasibility certificate.
inline FlagFiber fiber(const GameSpec& g, const Flag& requested,
                       const Config& cfg = default_config()) {
  FlagRepair rep = repair_flag(g, requested, cfg);
  if (rep.l1_error > cfg.flag_repair_tol) {
    throw FlagError("fiber: flag outside feasible set (l1 defect " +
                        std::to_string(rep.l1_error) + ")",
                    rep.l1_error);
  }
  return detail::assemble_fiber(g, std::move(rep.repaired), rep.l1_error,
                                rep.y, cfg);
}

// Fiber of the flag induced by a known Nature action: feasible by
// construction, so the repair LP is skipped.
inline FlagFiber fiber_from_action(const GameSpec& g, const Vec& y,
                                   const Config& cfg = default_config()) {
  return detail::assemble_fiber(g, maximal_information(g, y), 0.0, y, cfg);
}

// max { <r(x, y), dir> : y in fiber }. Exact over cached vertices, or by LP.
struct SupportQuery {
  double value = 0.0;
  Vec argmax_y;
};

inline SupportQuery omega_support(const GameSpec& g, const Vec& x,
                                  const FlagFiber& fib, const Vec& dir,
                                  const Config& cfg = default_config()) {
  const std::size_t J = g.num_nature_actions();
  // Linear objective in y: w_j = <r(x, delta_j), dir>.
  Vec w(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    w[j] = dot(payoff_vs_pure(g, x, j), dir);
  }
  SupportQuery out;
  if (fib.has_vertices()) {
    std::size_t best = 0;
    double best_val = dot(w, fib.vertices[0]);
    for (std::size_t v = 1; v < fib.vertices.size(); ++v) {
      const double val = dot(w, fib.vertices[v]);
      if (val > best_val + 1e-15) {
        best_val = val;
        best = v;
      }
    }
    out.value = best_val;
    out.argmax_y = fib.vertices[best];
    return out;
  }
  LinearProgram lp(J);
  for (std::size_t j = 0; j < J; ++j) lp.objective[j] = -w[j];
  for (std::size_t rix = 0; rix < fib.eq_rows.size(); ++rix) {
    lp.add_eq(fib.eq_rows[rix], fib.eq_rhs[rix]);
  }
  const LpSolution sol = solve_lp(lp, cfg);
  if (sol.status != LpStatus::Optimal) {
    throw LpError("omega_support: fiber LP failed");
  }
  out.value = -sol.value;
  out.argmax_y = detail::cleaned_simplex(sol.primal);
  return out;
}

inline SupportQuery omega_support(const GameSpec& g, const Vec& x,
                                  const Flag& flag, const Vec& dir,
                                  const Config& cfg = default_config()) {
  return omega_support(g, x, fiber(g, flag, cfg), dir, cfg);
}

// Coordinatewise maximum of the compatible payoff set: the least point whose
// lower orthant contains it. One witness per coordinate.
struct CornerResult {
  Vec corner;
  std::vector<Vec> argmax_y;
};

inline CornerResult upper_right_corner(const GameSpec& g, const Vec& x,
                                       const FlagFiber& fib,
                                       const Config& cfg = default_config()) {
  CornerResult out;
  out.corner.assign(g.dim, 0.0);
  out.argmax_y.reserve(g.dim);
  for (std::size_t k = 0; k < g.dim; ++k) {
    SupportQuery q = omega_support(g, x, fib, basis_vector(g.dim, k), cfg);
    out.corner[k] = q.value;
    out.argmax_y.push_back(std::move(q.argmax_y));
  }
  return out;
}

inline CornerResult upper_right_corner(const GameSpec& g, const Vec& x,
                                       const Flag& flag,
                                       const Config& cfg = default_config()) {
  return upper_right_corner(g, x, fiber(g, flag, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Fiber cache: read-mostly shared state keyed by quantized flags.
// ---------------------------------------------------------------------------

class FiberCache {
 public:
  explicit FiberCache(GameSpec game, const Config& cfg = default_config())
      : game_(std::move(game)), cfg_(cfg) {}

  const GameSpec& game() const { return game_; }

  const FlagFiber& get(const Flag& flag) {
    const std::string k = key(flag);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(k);
      if (it != cache_.end()) return *it->second;
    }
    auto fresh = std::make_unique<FlagFiber>(fiber(game_, flag, cfg_));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(k, std::move(fresh));
    return *it->second;
  }

  // Known-action variant: the flag is feasible, no repair LP involved.
  const FlagFiber& get_for_action(const Vec& y) {
    const Flag flag = maximal_information(game_, y);
    const std::string k = key(flag);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(k);
      if (it != cache_.end()) return *it->second;
    }
    auto fresh =
        std::make_unique<FlagFiber>(fiber_from_action(game_, y, cfg_));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(k, std::move(fresh));
    return *it->second;
  }

 private:
  static std::string key(const Flag& flag) {
    std::string k;
    k.reserve(flag.per_action.size() * 10);
    for (const Vec& row : flag.per_action) {
      for (double v : row) {
        const auto q = static_cast<std::int64_t>(std::llround(v * 1e9));
        k.append(reinterpret_cast<const char*>(&q), sizeof(q));
      }
      k.push_back(';');
    }
    return k;
  }

  GameSpec game_;
  const Config& cfg_;
  std::map<std::string, std::unique_ptr<FlagFiber>> cache_;
  std::mutex mu_;
};

// The surrogate payoff: the corner evaluated at the flag of y.
inline Vec modified_payoff(const GameSpec& g, const Vec& x, const Vec& y,
                           const Config& cfg = default_config()) {
  return upper_right_corner(g, x, maximal_information(g, y), cfg).corner;
}

inline Vec modified_payoff(FiberCache& cache, const Vec& x, const Vec& y,
                           const Config& cfg = default_config()) {
  const Flag flag = maximal_information(cache.game(), y);
  return upper_right_corner(cache.game(), x, cache.get(flag), cfg).corner;
}

// ---------------------------------------------------------------------------
// Upper-right-corner property: is the corner itself a compatible payoff?
// Verified on finite grids; a positive verdict means "not falsified".
// ---------------------------------------------------------------------------

struct UrcWitness {
  Vec x;
  Flag flag;
  Vec corner;
  double gap = 0.0;  // minimal l1 distance from the corner to the payoff set
};

struct UrcReport {
  bool holds = true;  // not falsified on the tested grids
  std::optional<UrcWitness> witness;
  double max_gap = 0.0;
};

// For each (x, flag), minimize the l1 gap sum_k (corner_k - r_k(x, y)) over
// the fiber. Payoffs are dominated by the corner coordinatewise, so the gap
// is linear in y and minimized by one support query in direction (1,...,1).
inline UrcReport has_urc_property(const GameSpec& g,
                                  const std::vector<Vec>& x_grid,
                                  const std::vector<Flag>& flag_grid,
                                  double tol,
                                  const Config& cfg = default_config()) {
  if (x_grid.empty() || flag_grid.empty()) {
    throw std::invalid_argument("has_urc_property: empty grid");
  }
  UrcReport report;
  const Vec ones(g.dim, 1.0);
  for (const Flag& flag : flag_grid) {
    const FlagFiber fib = fiber(g, flag, cfg);
    for (const Vec& x : x_grid) {
      const CornerResult corner = upper_right_corner(g, x, fib, cfg);
      double corner_sum = 0.0;
      for (double v : corner.corner) corner_sum += v;
      const SupportQuery best = omega_support(g, x, fib, ones, cfg);
      const double gap = corner_sum - best.value;
      report.max_gap = std::max(report.max_gap, gap);
      if (gap > tol && report.holds) {
        report.holds = false;
        report.witness = UrcWitness{x, fib.flag, corner.corner, gap};
      }
    }
  }
  return report;
}

// Default grids: per-dimension simplex grids with about urc_grid_points
// points for two actions, thinned automatically in higher dimension.
inline UrcReport has_urc_property(const GameSpec& g, double tol,
                                  const Config& cfg = default_config()) {
  const std::size_t I = g.num_player_actions();
  const std::size_t J = g.num_nature_actions();
  const int dx = adaptive_grid_denominator(
      I, cfg.urc_grid_points - 1, static_cast<std::size_t>(cfg.grid_max_points));
  const int dy = adaptive_grid_denominator(
      J, cfg.urc_grid_points - 1, static_cast<std::size_t>(cfg.grid_max_points));
  std::vector<Flag> flags;
  for (const Vec& y : simplex_grid(J, dy)) {
    flags.push_back(maximal_information(g, y));
  }
  return has_urc_property(g, simplex_grid(I, dx), flags, tol, cfg);
}

}  // namespace approachkit

#endif  // APPROACHKIT_MONITORING_HPP_
