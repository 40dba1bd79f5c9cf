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

#ifndef APPROACHKIT_CONDITIONS_HPP_
#define APPROACHKIT_CONDITIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
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

enum class Verdict { Approachable, NotApproachable, NotFalsifiedOnGrid };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Approachable: return "Approachable";
    case Verdict::NotApproachable: return "NotApproachable";
    case Verdict::NotFalsifiedOnGrid: return "NotFalsifiedOnGrid";
  }
  return "?";
}

inline bool approachable_side(Verdict v) {
  return v != Verdict::NotApproachable;
}

// Outcome of a condition check. `margin` is positive on the approachable
// side and negative on the excluded side; certificates depend on the
// verdict: a witness action when approachable, a counter action of Nature
// or a separating direction otherwise.
struct ConditionReport {
  Verdict verdict = Verdict::NotFalsifiedOnGrid;
  std::optional<Vec> witness_x;
  std::optional<Vec> counter_y;
  std::optional<Vec> separating_direction;
  double margin = 0.0;
  std::string method;
};

// ---------------------------------------------------------------------------
// Half-spaces with the plain payoffs. The check reads only the payoff
// tensor, never the signal law: approachability of half-spaces does not
// depend on the monitoring structure.
// ---------------------------------------------------------------------------

namespace detail {

inline ConditionReport one_shot_halfspace_on_payoffs(
    const std::vector<std::vector<Vec>>& payoffs, const HalfSpace& hs,
    const Config& cfg) {
  if (norm(hs.a) == 0.0) {
    throw std::invalid_argument("one_shot_halfspace: zero direction");
  }
  const std::size_t I = payoffs.size();
  const std::size_t J = payoffs.front().size();
  std::vector<Vec> scalarized(I, Vec(J, 0.0));
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      scalarized[i][j] = dot(payoffs[i][j], hs.a);
    }
  }
  const ZeroSumSolution zs = zero_sum_value(scalarized, cfg);
  ConditionReport rep;
  rep.margin = hs.b - zs.value;
  rep.method = "zero-sum value of the scalarized game";
  if (rep.margin >= -cfg.lp_compare_tol) {
    rep.verdict = Verdict::Approachable;
    rep.witness_x = zs.row_strategy;
  } else {
    rep.verdict = Verdict::NotApproachable;
    rep.counter_y = zs.col_strategy;
    rep.separating_direction = hs.a;
  }
  return rep;
}

}  // namespace detail

inline ConditionReport one_shot_halfspace(const GameSpec& g,
                                          const HalfSpace& hs,
                                          const Config& cfg =
                                              default_config()) {
  return detail::one_shot_halfspace_on_payoffs(g.payoffs, hs, cfg);
}

// ---------------------------------------------------------------------------
// Grid oracle: fibers, vertex payoff matrices and corner evaluations for
// every distinct flag reached from a grid of Nature mixed actions.
// ---------------------------------------------------------------------------

namespace detail {

// P[v][i][k] = k-th payoff coordinate of (pure action i, fiber vertex v).
struct VertexPayoffs {
  std::vector<std::vector<Vec>> p;
  std::size_t num_vertices() const { return p.size(); }
};

inline VertexPayoffs make_vertex_payoffs(const GameSpec& g,
                                         const FlagFiber& fib) {
  VertexPayoffs vp;
  vp.p.reserve(fib.vertices.size());
  for (const Vec& v : fib.vertices) {
    std::vector<Vec> per_action(g.num_player_actions());
    for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
      per_action[i] = payoff_vs_pure_player(g, i, v);
    }
    vp.p.push_back(std::move(per_action));
  }
  return vp;
}

inline Vec corner_from_vertices(const VertexPayoffs& vp, const Vec& x,
                                std::size_t dim) {
  Vec corner(dim, -kInf);
  for (const auto& per_action : vp.p) {
    for (std::size_t k = 0; k < dim; ++k) {
      double val = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        val += x[i] * per_action[i][k];
      }
      corner[k] = std::max(corner[k], val);
    }
  }
  return corner;
}

}  // namespace detail

// Per-grid precomputation shared by the condition checkers and the
// surrogate-payoff strategies. Vertex enumeration must be available
// (small Nature action sets); larger games fall back to LP-only oracles in
// the monitoring module but are not supported by the grid checkers.
class GridOracle {
 public:
  GridOracle(const GameSpec& game, std::vector<Vec> y_grid,
             const Config& cfg = default_config())
      : game_(game), cfg_(cfg), y_grid_(std::move(y_grid)) {
    if (y_grid_.empty()) {
      throw std::invalid_argument("GridOracle: empty grid");
    }
    if (game_.num_nature_actions() >
        static_cast<std::size_t>(cfg_.fiber_vertex_max_actions)) {
      throw std::invalid_argument(
          "GridOracle: vertex enumeration gated off for this many Nature "
          "actions");
    }
    flag_of_y_.reserve(y_grid_.size());
    std::map<std::string, std::size_t> seen;
    for (const Vec& y : y_grid_) {
      Flag flag = maximal_information(game_, y);
      const std::string k = quantized_key(flag);
      auto it = seen.find(k);
      if (it == seen.end()) {
        const std::size_t idx = fibers_.size();
        seen.emplace(k, idx);
        fibers_.push_back(fiber_from_action(game_, y, cfg_));
        payoffs_.push_back(detail::make_vertex_payoffs(game_, fibers_.back()));
        representative_y_.push_back(y);
        flag_of_y_.push_back(idx);
      } else {
        flag_of_y_.push_back(it->second);
      }
    }
    // A linear map constant on the pure actions is constant everywhere, in
    // which case the grid covers the whole flag set.
    single_flag_ = true;
    const Flag first = maximal_information(
        game_, basis_vector(game_.num_nature_actions(), 0));
    for (std::size_t j = 1; j < game_.num_nature_actions(); ++j) {
      const Flag fj = maximal_information(
          game_, basis_vector(game_.num_nature_actions(), j));
      if (!flags_close(first, fj, cfg_.flag_compare_tol)) {
        single_flag_ = false;
        break;
      }
    }
  }

  const GameSpec& game() const { return game_; }
  const Config& config() const { return cfg_; }
  const std::vector<Vec>& y_grid() const { return y_grid_; }
  std::size_t num_flags() const { return fibers_.size(); }
  std::size_t flag_of_y(std::size_t yi) const { return flag_of_y_.at(yi); }
  const FlagFiber& fiber_at(std::size_t f) const { return fibers_.at(f); }
  const Vec& representative_y(std::size_t f) const {
    return representative_y_.at(f);
  }
  bool single_flag() const { return single_flag_; }

  Vec corner(std::size_t f, const Vec& x) const {
    return detail::corner_from_vertices(payoffs_.at(f), x, game_.dim);
  }

  // sum_k q_k R_k(x) for the flag's fiber; exact from the vertex maxima.
  double corner_dot(std::size_t f, const Vec& x, const Vec& q) const {
    const Vec corner = this->corner(f, x);
    return dot(q, corner);
  }

  const detail::VertexPayoffs& vertex_payoffs(std::size_t f) const {
    return payoffs_.at(f);
  }

 private:
  static std::string quantized_key(const Flag& flag) {
    std::string k;
    for (const Vec& row : flag.per_action) {
      for (double v : row) {
        const auto q = static_cast<std::int64_t>(std::llround(v * 1e9));
        k.append(reinterpret_cast<const char*>(&q), sizeof(q));
      }
      k.push_back(';');
    }
    return k;
  }

  const GameSpec& game_;
  const Config& cfg_;
  std::vector<Vec> y_grid_;
  std::vector<std::size_t> flag_of_y_;
  std::vector<FlagFiber> fibers_;
  std::vector<detail::VertexPayoffs> payoffs_;
  std::vector<Vec> representative_y_;
  bool single_flag_ = false;
};

inline std::vector<Vec> default_y_grid(const GameSpec& g,
                                       const Config& cfg = default_config()) {
  const int den = adaptive_grid_denominator(
      g.num_nature_actions(), cfg.grid_denominator,
      static_cast<std::size_t>(cfg.grid_max_points));
  return simplex_grid(g.num_nature_actions(), den);
}

inline std::vector<Vec> default_q_grid(std::size_t dim,
                                       const Config& cfg = default_config()) {
  const int den = adaptive_grid_denominator(
      dim, cfg.grid_denominator, static_cast<std::size_t>(cfg.grid_max_points));
  return simplex_grid(dim, den);
}

// ---------------------------------------------------------------------------
// Exact per-flag solvers.
// ---------------------------------------------------------------------------

namespace detail {

// min_x max_k (R_k(x) - a_k) as a zero-sum game over columns (vertex, coord).
// The optimal column mixture, marginalized over vertices, yields the
// nonnegative separating direction q* with min_x <q*, R(x) - a> = value.
struct FlagMargin {
  double value = 0.0;  // positive = the fiber sticks out of the orthant
  Vec x;               // minimizing mixed action
  Vec q_star;          // separating direction (valid when value > 0)
};

inline FlagMargin flag_orthant_margin(const VertexPayoffs& vp, const Vec& a,
                                      const Config& cfg) {
  const std::size_t num_v = vp.num_vertices();
  const std::size_t I = vp.p.front().size();
  const std::size_t d = a.size();
  std::vector<Vec> game(I, Vec(num_v * d, 0.0));
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t v = 0; v < num_v; ++v) {
      for (std::size_t k = 0; k < d; ++k) {
        game[i][v * d + k] = vp.p[v][i][k] - a[k];
      }
    }
  }
  const ZeroSumSolution zs = zero_sum_value(game, cfg);
  FlagMargin out;
  out.value = zs.value;
  out.x = zs.row_strategy;
  out.q_star.assign(d, 0.0);
  for (std::size_t v = 0; v < num_v; ++v) {
    for (std::size_t k = 0; k < d; ++k) {
      out.q_star[k] += zs.col_strategy[v * d + k];
    }
  }
  out.q_star = cleaned_simplex(out.q_star);
  return out;
}

// min_x sum_k q_k R_k(x): LP over (x, t) with t_k >= <x, P_v[:,k]>.
struct ScalarizedMin {
  double value = 0.0;
  Vec x;
};

inline ScalarizedMin scalarized_corner_min(const VertexPayoffs& vp,
                                           const Vec& q, const Config& cfg) {
  const std::size_t num_v = vp.num_vertices();
  const std::size_t I = vp.p.front().size();
  const std::size_t d = q.size();
  LinearProgram lp(I + d);
  for (std::size_t k = 0; k < d; ++k) {
    lp.objective[I + k] = q[k];
    lp.lower[I + k] = -kInf;
  }
  for (std::size_t v = 0; v < num_v; ++v) {
    for (std::size_t k = 0; k < d; ++k) {
      Vec row(I + d, 0.0);
      for (std::size_t i = 0; i < I; ++i) row[i] = vp.p[v][i][k];
      row[I + k] = -1.0;
      lp.add_ub(std::move(row), 0.0);
    }
  }
  Vec ones(I + d, 0.0);
  for (std::size_t i = 0; i < I; ++i) ones[i] = 1.0;
  lp.add_eq(std::move(ones), 1.0);
  const LpSolution sol = solve_lp(lp, cfg);
  if (sol.status != LpStatus::Optimal) {
    throw LpError("scalarized_corner_min: LP failed");
  }
  ScalarizedMin out;
  out.value = sol.value;
  out.x = cleaned_simplex(Vec(sol.primal.begin(), sol.primal.begin() + I));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Saddle solvers for min_x max_{y in grid} <q, corner(x, flag(y))>.
// ---------------------------------------------------------------------------

struct SaddleStep {
  Vec x;              // minimizing action found
  double value = 0.0; // max over the grid at x, minus the threshold
};

namespace detail {

// Exact cutting-plane loop: the master LP keeps per-active-flag epigraph
// variables; each round adds the flag attaining the true maximum until the
// bound closes.
inline SaddleStep minmax_cutting_plane(const GridOracle& oracle, const Vec& q,
                                       double threshold, const Config& cfg) {
  const GameSpec& g = oracle.game();
  const std::size_t I = g.num_player_actions();
  const std::size_t d = g.dim;
  const std::size_t nf = oracle.num_flags();

  Vec x = uniform_simplex(I);
  std::vector<std::size_t> active;
  std::vector<bool> is_active(nf, false);
  auto worst_flag = [&](const Vec& at) {
    std::size_t best = 0;
    double best_val = -kInf;
    for (std::size_t f = 0; f < nf; ++f) {
      const double val = oracle.corner_dot(f, at, q);
      if (val > best_val + 1e-15) {
        best_val = val;
        best = f;
      }
    }
    return std::make_pair(best, best_val);
  };

  auto [f0, v0] = worst_flag(x);
  active.push_back(f0);
  is_active[f0] = true;
  double upper = v0;

  for (int round = 0; round < cfg.cutting_plane_max_rounds; ++round) {
    // Master: variables [x (I), s, t per active flag (d each)].
    const std::size_t na = active.size();
    LinearProgram lp(I + 1 + na * d);
    lp.objective[I] = 1.0;
    lp.lower[I] = -kInf;
    for (std::size_t t = 0; t < na * d; ++t) lp.lower[I + 1 + t] = -kInf;
    for (std::size_t ai = 0; ai < na; ++ai) {
      const auto& vp = oracle.vertex_payoffs(active[ai]);
      Vec srow(I + 1 + na * d, 0.0);
      srow[I] = -1.0;
      for (std::size_t k = 0; k < d; ++k) {
        srow[I + 1 + ai * d + k] = q[k];
      }
      lp.add_ub(std::move(srow), 0.0);
      for (std::size_t v = 0; v < vp.num_vertices(); ++v) {
        for (std::size_t k = 0; k < d; ++k) {
          Vec row(I + 1 + na * d, 0.0);
          for (std::size_t i = 0; i < I; ++i) row[i] = vp.p[v][i][k];
          row[I + 1 + ai * d + k] = -1.0;
          lp.add_ub(std::move(row), 0.0);
        }
      }
    }
    Vec ones(I + 1 + na * d, 0.0);
    for (std::size_t i = 0; i < I; ++i) ones[i] = 1.0;
    lp.add_eq(std::move(ones), 1.0);

    const LpSolution sol = solve_lp(lp, cfg);
    if (sol.status != LpStatus::Optimal) {
      throw LpError("minmax_cutting_plane: master LP failed");
    }
    x = cleaned_simplex(Vec(sol.primal.begin(), sol.primal.begin() + I));
    const double lower = sol.value;  // bound over active flags only
    auto [fw, vw] = worst_flag(x);
    upper = vw;
    if (upper <= lower + 1e-9 * (1.0 + std::abs(lower)) || is_active[fw]) {
      break;
    }
    active.push_back(fw);
    is_active[fw] = true;
  }
  return SaddleStep{x, upper - threshold};
}

// Projected subgradient on the same objective: step c/sqrt(t) with c the
// payoff bound, averaged iterate. Kept as a configurable alternative; the
// cutting-plane solver is exact and is the default.
inline SaddleStep minmax_subgradient(const GridOracle& oracle, const Vec& q,
                                     double threshold, const Config& cfg) {
  const GameSpec& g = oracle.game();
  const std::size_t I = g.num_player_actions();
  const std::size_t d = g.dim;
  const double c = std::max(payoff_bound(g), 1e-9);
  Vec x = uniform_simplex(I);
  Vec x_avg(I, 0.0);
  for (int t = 1; t <= cfg.subgradient_iterations; ++t) {
    // Evaluate the worst flag and collect a subgradient from the argmax
    // vertices of each coordinate.
    std::size_t worst = 0;
    double worst_val = -kInf;
    for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
      const double val = oracle.corner_dot(f, x, q);
      if (val > worst_val + 1e-15) {
        worst_val = val;
        worst = f;
      }
    }
    const auto& vp = oracle.vertex_payoffs(worst);
    Vec grad(I, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      if (q[k] == 0.0) continue;
      std::size_t bestv = 0;
      double best = -kInf;
      for (std::size_t v = 0; v < vp.num_vertices(); ++v) {
        double val = 0.0;
        for (std::size_t i = 0; i < I; ++i) val += x[i] * vp.p[v][i][k];
        if (val > best + 1e-15) {
          best = val;
          bestv = v;
        }
      }
      for (std::size_t i = 0; i < I; ++i) {
        grad[i] += q[k] * vp.p[bestv][i][k];
      }
    }
    const double step = c / std::sqrt(static_cast<double>(t));
    Vec next = x;
    axpy(next, -step, grad);
    x = project_simplex(std::move(next));
    axpy(x_avg, 1.0, x);
  }
  Vec avg = scaled(x_avg, 1.0 / cfg.subgradient_iterations);
  avg = project_simplex(std::move(avg));
  double val = -kInf;
  for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
    val = std::max(val, oracle.corner_dot(f, avg, q));
  }
  return SaddleStep{avg, val - threshold};
}

}  // namespace detail

// One Blackwell-style step against the whole grid: the x minimizing the
// worst scalarized corner. Exact; used by both checkers and strategies.
inline SaddleStep one_shot_step(const GridOracle& oracle, const Vec& q,
                                double threshold,
                                const Config& cfg = default_config()) {
  if (cfg.use_subgradient_saddle) {
    return detail::minmax_subgradient(oracle, q, threshold, cfg);
  }
  return detail::minmax_cutting_plane(oracle, q, threshold, cfg);
}

namespace detail {

// Best-effort concave maximization of y -> min_x <q, corner(x, flag(y))>
// over the simplex: golden-section along coordinate-pair segments.
inline std::pair<Vec, double> refine_counter_y(const GameSpec& g, const Vec& q,
                                               double threshold, Vec y,
                                               const Config& cfg) {
  const std::size_t J = g.num_nature_actions();
  auto eval = [&](const Vec& yy) {
    const FlagFiber fib = fiber(g, maximal_information(g, yy), cfg);
    const VertexPayoffs vp = make_vertex_payoffs(g, fib);
    return scalarized_corner_min(vp, q, cfg).value - threshold;
  };
  double best = eval(y);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j1 = 0; j1 < J; ++j1) {
      for (std::size_t j2 = j1 + 1; j2 < J; ++j2) {
        const double mass = y[j1] + y[j2];
        if (mass <= 1e-12) continue;
        auto with_split = [&](double share) {
          Vec yy = y;
          yy[j1] = mass * share;
          yy[j2] = mass * (1.0 - share);
          return yy;
        };
        double lo = 0.0, hi = 1.0;
        double m1 = lo + (1 - gr) * (hi - lo), m2 = lo + gr * (hi - lo);
        double f1 = eval(with_split(m1)), f2 = eval(with_split(m2));
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + gr * (hi - lo);
            f2 = eval(with_split(m2));
          } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = lo + (1 - gr) * (hi - lo);
            f1 = eval(with_split(m1));
          }
        }
        const double mid = (lo + hi) / 2.0;
        const double fm = eval(with_split(mid));
        if (fm > best) {
          best = fm;
          y = with_split(mid);
        }
      }
    }
  }
  return {y, best};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-shot approachability of a half-space with the modified payoffs.
// ---------------------------------------------------------------------------

// Half-space {w : <q, w> <= threshold} with q >= 0, checked against the
// surrogate corner payoffs over a grid of Nature actions. NotApproachable
// verdicts always exhibit a Nature action whose whole fiber sticks out.
inline ConditionReport one_shot_halfspace_modified(
    const GridOracle& oracle, const Vec& q, double threshold, double tol) {
  const Config& cfg = oracle.config();
  ConditionReport rep;
  const SaddleStep step = one_shot_step(oracle, q, threshold, cfg);
  if (step.value <= tol) {
    rep.verdict = Verdict::Approachable;
    rep.witness_x = step.x;
    rep.margin = -step.value;
    rep.method = "surrogate saddle over the action grid";
    return rep;
  }
  // Look for a single Nature action no player action can answer.
  double best = -kInf;
  std::size_t best_flag = 0;
  for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
    const double val =
        detail::scalarized_corner_min(oracle.vertex_payoffs(f), q, cfg).value -
        threshold;
    if (val > best + 1e-15) {
      best = val;
      best_flag = f;
    }
  }
  if (best > tol) {
    rep.verdict = Verdict::NotApproachable;
    rep.counter_y = oracle.representative_y(best_flag);
    rep.separating_direction = q;
    rep.margin = -best;
    rep.method = "grid action with separated surrogate hull";
    return rep;
  }
  // Min-max exceeded the tolerance but no grid action certifies it: the
  // violating action sits between grid points. Refine along the simplex.
  auto [ybar, refined] = detail::refine_counter_y(
      oracle.game(), q, threshold, oracle.representative_y(best_flag), cfg);
  if (refined > tol) {
    rep.verdict = Verdict::NotApproachable;
    rep.counter_y = ybar;
    rep.separating_direction = q;
    rep.margin = -refined;
    rep.method = "refined off-grid action with separated surrogate hull";
    return rep;
  }
  rep.verdict = Verdict::NotFalsifiedOnGrid;
  rep.witness_x = step.x;
  rep.margin = -step.value;
  rep.method = "grid gap: min-max above tolerance, no certifying action";
  return rep;
}

inline ConditionReport one_shot_halfspace_modified(
    const GameSpec& g, const Vec& q, double threshold,
    const std::vector<Vec>& y_grid, double tol,
    const Config& cfg = default_config()) {
  if (q.size() != g.dim) {
    throw std::invalid_argument("one_shot_halfspace_modified: bad direction");
  }
  double qsum = 0.0;
  for (double v : q) {
    if (v < 0.0) {
      throw std::invalid_argument(
          "direction must be nonnegative for orthant half-spaces");
    }
    qsum += v;
  }
  if (qsum == 0.0) {
    throw std::invalid_argument("one_shot_halfspace_modified: zero direction");
  }
  GridOracle oracle(g, y_grid, cfg);
  return one_shot_halfspace_modified(oracle, q, threshold, tol);
}

// ---------------------------------------------------------------------------
// Dual condition: every reachable flag admits an action whose compatible
// payoff set sits inside the target.
// ---------------------------------------------------------------------------

namespace detail {

// Lift data for the polytope path (kept local to this header; the public
// lifting module exposes the full transformation).
inline GameSpec lifted_game_spec(const GameSpec& g, const Polytope& poly) {
  GameSpec lifted = g;
  lifted.dim = poly.rows.size();
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < g.num_nature_actions(); ++j) {
      Vec s(poly.rows.size(), 0.0);
      for (std::size_t l = 0; l < poly.rows.size(); ++l) {
        s[l] = dot(g.payoffs[i][j], poly.rows[l]) - poly.offsets[l];
      }
      lifted.payoffs[i][j] = std::move(s);
    }
  }
  return lifted;
}

struct DualScan {
  double worst = -kInf;        // max over flags of the containment margin
  std::size_t worst_flag = 0;
  Vec worst_x;                 // minimizing action at the worst flag
  Vec worst_q;                 // separating direction at the worst flag
};

inline DualScan scan_orthant_margins(const GridOracle& oracle, const Vec& a) {
  DualScan scan;
  for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
    const FlagMargin fm =
        flag_orthant_margin(oracle.vertex_payoffs(f), a, oracle.config());
    if (fm.value > scan.worst + 1e-15) {
      scan.worst = fm.value;
      scan.worst_flag = f;
      scan.worst_x = fm.x;
      scan.worst_q = fm.q_star;
    }
  }
  return scan;
}

}  // namespace detail

inline ConditionReport dual_condition(const GameSpec& g,
                                      const TargetSet& target,
                                      const std::vector<Vec>& y_grid,
                                      const Config& cfg = default_config()) {
  validate_target(target, cfg);
  if (target_dim(target) != g.dim) {
    throw std::invalid_argument("dual_condition: target dimension mismatch");
  }

  if (const auto* hs = std::get_if<HalfSpace>(&target)) {
    // Augment the grid with the exact maximin action of the scalarized
    // game so the excluded side is certified, not grid-limited.
    std::vector<Vec> grid = y_grid;
    std::vector<Vec> scalarized(g.num_player_actions(),
                                Vec(g.num_nature_actions(), 0.0));
    for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
      for (std::size_t j = 0; j < g.num_nature_actions(); ++j) {
        scalarized[i][j] = dot(g.payoffs[i][j], hs->a);
      }
    }
    const ZeroSumSolution zs = zero_sum_value(scalarized, cfg);
    grid.push_back(zs.col_strategy);
    GridOracle oracle(g, grid, cfg);
    double worst = -kInf;
    std::size_t worst_flag = 0;
    for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
      // Containment margin of the fiber in the half-space: min over x of
      // the worst vertex scalarization. Singleton fibers reduce to the
      // best pure reply.
      const auto& vp = oracle.vertex_payoffs(f);
      double val = 0.0;
      if (vp.num_vertices() == 1) {
        val = kInf;
        for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
          val = std::min(val, dot(vp.p[0][i], hs->a));
        }
        val -= hs->b;
      } else {
        std::vector<Vec> game(g.num_player_actions(),
                              Vec(vp.num_vertices(), 0.0));
        for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
          for (std::size_t v = 0; v < vp.num_vertices(); ++v) {
            game[i][v] = dot(vp.p[v][i], hs->a);
          }
        }
        val = zero_sum_value(game, cfg).value - hs->b;
      }
      if (val > worst + 1e-15) {
        worst = val;
        worst_flag = f;
      }
    }
    ConditionReport rep;
    rep.margin = -worst;
    if (worst > cfg.condition_tol) {
      rep.verdict = Verdict::NotApproachable;
      rep.counter_y = oracle.representative_y(worst_flag);
      rep.separating_direction = hs->a;
      rep.method = "per-flag fiber containment, maximin-augmented grid";
    } else {
      rep.verdict = oracle.single_flag() ? Verdict::Approachable
                                         : Verdict::NotFalsifiedOnGrid;
      rep.witness_x = zs.row_strategy;  // one action covers every flag
      rep.method = "per-flag fiber containment, maximin-augmented grid";
    }
    return rep;
  }

  if (const auto* orth = std::get_if<Orthant>(&target)) {
    GridOracle oracle(g, y_grid, cfg);
    const detail::DualScan scan = detail::scan_orthant_margins(oracle, orth->a);
    ConditionReport rep;
    rep.margin = -scan.worst;
    rep.method = "per-flag corner containment over the action grid";
    if (scan.worst > cfg.condition_tol) {
      rep.verdict = Verdict::NotApproachable;
      rep.counter_y = oracle.representative_y(scan.worst_flag);
      rep.separating_direction = scan.worst_q;
    } else {
      rep.verdict = oracle.single_flag() ? Verdict::Approachable
                                         : Verdict::NotFalsifiedOnGrid;
      rep.witness_x = scan.worst_x;
    }
    return rep;
  }

  // Polytopes (and sampled supports through their induced polytope) reduce
  // to the negative orthant of the lifted payoffs.
  const Polytope poly = std::holds_alternative<Polytope>(target)
                            ? std::get<Polytope>(target)
                            : induced_polytope(std::get<SupportSampled>(target));
  const GameSpec lifted = detail::lifted_game_spec(g, poly);
  ConditionReport rep = dual_condition(
      lifted, TargetSet{Orthant{Vec(poly.rows.size(), 0.0)}}, y_grid, cfg);
  rep.method += " (after polytope-to-orthant lift)";
  return rep;
}

inline ConditionReport dual_condition(const GameSpec& g,
                                      const TargetSet& target,
                                      const Config& cfg = default_config()) {
  return dual_condition(g, target, default_y_grid(g, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Primal condition for orthants: every containing half-space is one-shot
// approachable with the surrogate payoffs.
// ---------------------------------------------------------------------------

inline ConditionReport primal_condition_orthant(
    const GameSpec& g, const Vec& a, const std::vector<Vec>& q_grid,
    const std::vector<Vec>& y_grid, double tol,
    const Config& cfg = default_config()) {
  if (a.size() != g.dim) {
    throw std::invalid_argument("primal_condition_orthant: bad orthant");
  }
  GridOracle oracle(g, y_grid, cfg);
  const detail::DualScan scan = detail::scan_orthant_margins(oracle, a);

  // Flags already inside the orthant cannot certify failure of any
  // direction q in the simplex: <q, R - a> <= max_k (R_k - a_k).
  std::vector<std::size_t> violating;
  for (std::size_t f = 0; f < oracle.num_flags(); ++f) {
    const detail::FlagMargin fm =
        detail::flag_orthant_margin(oracle.vertex_payoffs(f), a, cfg);
    if (fm.value > tol) violating.push_back(f);
  }

  ConditionReport rep;
  if (violating.empty()) {
    rep.verdict = oracle.single_flag() ? Verdict::Approachable
                                       : Verdict::NotFalsifiedOnGrid;
    rep.witness_x = scan.worst_x;
    rep.margin = -scan.worst;
    rep.method =
        "all grid half-spaces pass (per-direction solves bounded by flag "
        "margins)";
    return rep;
  }

  // First failing direction in the lexicographic grid order.
  for (const Vec& q : q_grid) {
    double gmax = -kInf;
    std::size_t arg = violating.front();
    for (std::size_t f : violating) {
      const double val =
          detail::scalarized_corner_min(oracle.vertex_payoffs(f), q, cfg)
              .value -
          dot(q, a);
      if (val > gmax + 1e-15) {
        gmax = val;
        arg = f;
      }
    }
    if (gmax > tol) {
      rep.verdict = Verdict::NotApproachable;
      rep.separating_direction = q;
      rep.counter_y = oracle.representative_y(arg);
      rep.margin = -gmax;
      rep.method = "failing half-space direction from the grid";
      return rep;
    }
  }

  // No grid direction failed; use the exact separator of the worst flag.
  rep.verdict = Verdict::NotApproachable;
  rep.separating_direction = scan.worst_q;
  rep.counter_y = oracle.representative_y(scan.worst_flag);
  rep.margin = -scan.worst;
  rep.method = "separating direction recovered from the worst flag";
  return rep;
}

inline ConditionReport primal_condition_orthant(
    const GameSpec& g, const Vec& a,
    const Config& cfg = default_config()) {
  return primal_condition_orthant(g, a, default_q_grid(g.dim, cfg),
                                  default_y_grid(g, cfg), cfg.condition_tol,
                                  cfg);
}

}  // namespace approachkit

#endif  // APPROACHKIT_CONDITIONS_HPP_
