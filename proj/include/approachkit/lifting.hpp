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

#ifndef APPROACHKIT_LIFTING_HPP_
#define APPROACHKIT_LIFTING_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approachkit/conditions.hpp"
#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/lp.hpp"
#include "approachkit/monitoring.hpp"

namespace approachkit {

// A polytope target rewritten as the negative orthant of a lifted game:
// one payoff coordinate per defining half-space, s_l = <r, a_l> - b_l.
// The signal structure is untouched.
struct LiftedGame {
  GameSpec base;
  std::vector<Vec> map_rows;
  Vec offsets;
  GameSpec lifted;

  // T(w) = (<w, a_l> - b_l)_l; membership in the polytope is T(w) <= 0.
  Vec lift_point(const Vec& w) const {
    Vec out(map_rows.size(), 0.0);
    for (std::size_t l = 0; l < map_rows.size(); ++l) {
      out[l] = dot(w, map_rows[l]) - offsets[l];
    }
    return out;
  }

  TargetSet lifted_target() const {
    return TargetSet{Orthant{Vec(map_rows.size(), 0.0)}};
  }
};

inline LiftedGame lift_polytope(const GameSpec& g, const Polytope& poly,
                                const Config& cfg = default_config()) {
  validate_target(TargetSet{poly}, cfg);
  if (poly.rows.front().size() != g.dim) {
    throw std::invalid_argument("lift_polytope: dimension mismatch");
  }
  LiftedGame out;
  out.base = g;
  out.map_rows = poly.rows;
  out.offsets = poly.offsets;
  out.lifted = g;
  out.lifted.dim = poly.rows.size();
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < g.num_nature_actions(); ++j) {
      out.lifted.payoffs[i][j] = out.lift_point(g.payoffs[i][j]);
    }
  }
  return out;
}

// Surrogate corner payoff of the lifted game. Not the image of the base
// corner in general: the max is taken per lifted coordinate.
inline Vec lifted_corner_payoff(const LiftedGame& lg, const Vec& x,
                                const Vec& y,
                                const Config& cfg = default_config()) {
  return modified_payoff(lg.lifted, x, y, cfg);
}

// ---------------------------------------------------------------------------
// Hidden containing half-spaces: a direction q >= 0 in the lifted space may
// be invisible from the base space (its pullback collapses), while the
// lifted one-shot check still rejects it.
// ---------------------------------------------------------------------------

struct HiddenHalfspaceReport {
  Vec q;
  double base_sup = 0.0;    // sup of <q, T(r(i,j))> over pure payoff entries
  double base_value = 0.0;  // one-shot value of the pulled-back scalarization
  double lifted_value = 0.0;  // one-shot surrogate value in the lifted space
  bool base_approachable = false;
  bool lifted_approachable = false;
  bool consistent = false;
  ConditionReport lifted_report;
};

inline HiddenHalfspaceReport hidden_halfspace_demo(
    const LiftedGame& lg, const Vec& q, const std::vector<Vec>& y_grid,
    const Config& cfg = default_config()) {
  if (q.size() != lg.lifted.dim) {
    throw std::invalid_argument("hidden_halfspace_demo: bad direction");
  }
  for (double v : q) {
    if (v < 0.0) {
      throw std::invalid_argument("hidden_halfspace_demo: q must be >= 0");
    }
  }
  HiddenHalfspaceReport rep;
  rep.q = q;

  const GameSpec& base = lg.base;
  std::vector<Vec> scalarized(base.num_player_actions(),
                              Vec(base.num_nature_actions(), 0.0));
  rep.base_sup = -kInf;
  for (std::size_t i = 0; i < base.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < base.num_nature_actions(); ++j) {
      const double v = dot(q, lg.lift_point(base.payoffs[i][j]));
      scalarized[i][j] = v;
      rep.base_sup = std::max(rep.base_sup, v);
    }
  }
  rep.base_value = zero_sum_value(scalarized, cfg).value;
  rep.base_approachable = rep.base_value <= cfg.condition_tol;

  rep.lifted_report =
      one_shot_halfspace_modified(lg.lifted, q, 0.0, y_grid, cfg.condition_tol,
                                  cfg);
  rep.lifted_value = -rep.lifted_report.margin;
  rep.lifted_approachable = approachable_side(rep.lifted_report.verdict);
  rep.consistent = rep.base_approachable == rep.lifted_approachable;
  return rep;
}

inline HiddenHalfspaceReport hidden_halfspace_demo(
    const LiftedGame& lg, const Vec& q,
    const Config& cfg = default_config()) {
  return hidden_halfspace_demo(lg, q, default_y_grid(lg.lifted, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Outer polytope of a support-sampled convex set on a direction grid.
// ---------------------------------------------------------------------------

// Rows are the grid directions; offsets are exact sampled values where the
// grid hits a sampled direction and support values of the induced outer
// polytope elsewhere (an LP), so the result always contains the original.
inline Polytope convex_to_polytope(const SupportSampled& support,
                                   const DirectionGrid& grid,
                                   const Config& cfg = default_config()) {
  validate_target(TargetSet{support}, cfg);
  if (grid.directions.empty()) {
    throw std::invalid_argument("convex_to_polytope: empty grid");
  }
  const std::size_t dim = support.directions.front().size();
  Polytope out;
  for (const Vec& dir : grid.directions) {
    if (dir.size() != dim) {
      throw std::invalid_argument("convex_to_polytope: dimension mismatch");
    }
    double offset = 0.0;
    bool matched = false;
    for (std::size_t i = 0; i < support.directions.size(); ++i) {
      if (linf_norm(sub(dir, support.directions[i])) <= 1e-9) {
        offset = support.values[i];
        matched = true;
        break;
      }
    }
    if (!matched) {
      LinearProgram lp(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        lp.objective[k] = -dir[k];
        lp.lower[k] = -kInf;
      }
      for (std::size_t i = 0; i < support.directions.size(); ++i) {
        lp.add_ub(support.directions[i], support.values[i]);
      }
      const LpSolution sol = solve_lp(lp, cfg);
      if (sol.status == LpStatus::Unbounded) {
        throw std::invalid_argument(
            "convex_to_polytope: support data does not bound direction");
      }
      if (sol.status != LpStatus::Optimal) {
        throw LpError("convex_to_polytope: support LP failed");
      }
      offset = -sol.value;
    }
    out.rows.push_back(dir);
    out.offsets.push_back(offset);
  }
  return out;
}

}  // namespace approachkit

#endif  // APPROACHKIT_LIFTING_HPP_
