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

#ifndef APPROACHKIT_TESTS_TESTSUPPORT_HPP_
#define APPROACHKIT_TESTS_TESTSUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "approachkit/approachkit.hpp"

namespace aktest {

using namespace approachkit;

// ---------------------------------------------------------------------------
// Fixture games.
// ---------------------------------------------------------------------------

// Two actions a side, payoffs on the antidiagonal line {(t, -t)}:
//   (T,L) -> (0,0)   (T,R) -> (1,-1)
//   (B,L) -> (-1,1)  (B,R) -> (0,0)
// Full monitoring by default; the dark version is the classic case where
// the negative orthant stops being approachable.
inline GameSpec make_mirror_game() {
  GameSpec g;
  g.player_actions = {"T", "B"};
  g.nature_actions = {"L", "R"};
  g.dim = 2;
  g.payoffs = {{{0.0, 0.0}, {1.0, -1.0}}, {{-1.0, 1.0}, {0.0, 0.0}}};
  g.signals = {"L", "R"};
  g.signal_law = {{{1.0, 0.0}, {0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}}};
  return g;
}

// Scalar game with payoffs  T: -1, 2 / B: -2, 1, played in the dark; the
// standard companion of the interval target [-1, 1].
inline GameSpec make_interval_game_dark() {
  GameSpec g;
  g.player_actions = {"T", "B"};
  g.nature_actions = {"L", "R"};
  g.dim = 1;
  g.payoffs = {{{-1.0}, {2.0}}, {{-2.0}, {1.0}}};
  g.signals = {"none"};
  g.signal_law = {{{1.0}, {1.0}}, {{1.0}, {1.0}}};
  return g;
}

inline Polytope make_unit_interval_polytope() {
  return Polytope{{{1.0}, {-1.0}}, {1.0, 1.0}};
}

// Two independent scalar coordinate games in the dark, payoff the pair.
// The compatible payoff sets are boxes, so the corner is always attained.
inline GameSpec make_product_game_dark() {
  GameSpec g;
  g.player_actions = {"T", "B"};
  g.nature_actions = {"LL", "LR", "RL", "RR"};
  g.dim = 2;
  // Coordinate 1 depends on the first letter, coordinate 2 on the second.
  auto payoff = [](double i, double c1, double c2) {
    return Vec{c1 - 0.5 * i, c2 + 0.25 * i - 0.25};
  };
  g.payoffs = {
      {payoff(0, 0.0, 0.0), payoff(0, 0.0, 0.5), payoff(0, 0.5, 0.0),
       payoff(0, 0.5, 0.5)},
      {payoff(1, 0.0, 0.0), payoff(1, 0.0, 0.5), payoff(1, 0.5, 0.0),
       payoff(1, 0.5, 0.5)},
  };
  g.signals = {"none"};
  g.signal_law = {{{1.0}, {1.0}, {1.0}, {1.0}}, {{1.0}, {1.0}, {1.0}, {1.0}}};
  return g;
}

// ---------------------------------------------------------------------------
// Random instances.
// ---------------------------------------------------------------------------

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

inline Vec random_point(Rng& rng, std::size_t d, double lo, double hi) {
  Vec p(d);
  for (double& v : p) v = uniform_in(rng, lo, hi);
  return p;
}

inline Vec random_simplex(Rng& rng, std::size_t n) {
  Vec w(n);
  double total = 0.0;
  for (double& v : w) {
    v = -std::log(std::max(rng.uniform(), 1e-12));
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

inline Vec random_unit(Rng& rng, std::size_t d) {
  while (true) {
    Vec v(d);
    for (double& x : v) x = uniform_in(rng, -1.0, 1.0);
    const double n = norm(v);
    if (n > 1e-3) return scaled(v, 1.0 / n);
  }
}

enum class MonitoringKind { Full, Dark, Random };

inline GameSpec random_game(Rng& rng, std::size_t I, std::size_t J,
                            std::size_t d, std::size_t S,
                            MonitoringKind kind) {
  GameSpec g;
  for (std::size_t i = 0; i < I; ++i) {
    g.player_actions.push_back("a" + std::to_string(i));
  }
  for (std::size_t j = 0; j < J; ++j) {
    g.nature_actions.push_back("b" + std::to_string(j));
  }
  g.dim = d;
  g.payoffs.assign(I, std::vector<Vec>(J));
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      g.payoffs[i][j] = random_point(rng, d, -1.0, 1.0);
    }
  }
  for (std::size_t s = 0; s < S; ++s) {
    g.signals.push_back("s" + std::to_string(s));
  }
  g.signal_law.assign(I, std::vector<Vec>(J));
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      g.signal_law[i][j] = random_simplex(rng, S);
    }
  }
  if (kind == MonitoringKind::Full) return with_full_monitoring(g);
  if (kind == MonitoringKind::Dark) return with_dark_monitoring(g);
  return g;
}

// ---------------------------------------------------------------------------
// Independent oracles (deliberately separate code paths from the library).
// ---------------------------------------------------------------------------

// Value of the 2x2 game [[a, b], [c, d]] for a minimizing row player:
// min over x of max(x a + (1-x) c, x b + (1-x) d), checked at the endpoints
// and at the crossing of the two lines.
inline double zero_sum_2x2_oracle(double a, double b, double c, double d) {
  auto objective = [&](double x) {
    return std::max(x * a + (1 - x) * c, x * b + (1 - x) * d);
  };
  double best = std::min(objective(0.0), objective(1.0));
  const double denom = a - b - c + d;
  if (std::abs(denom) > 1e-14) {
    const double cross = (d - c) / denom;
    if (cross > 0.0 && cross < 1.0) best = std::min(best, objective(cross));
  }
  return best;
}

// Coordinatewise golden-section minimization of |q - p|^2 over {q <= a}.
inline Vec orthant_projection_oracle(const Vec& p, const Vec& a) {
  Vec q(p.size());
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double lo = std::min(p[k], a[k]) - 1.0;
    double hi = a[k];
    auto f = [&](double t) { return (t - p[k]) * (t - p[k]); };
    double m1 = lo + (1 - gr) * (hi - lo), m2 = lo + gr * (hi - lo);
    double f1 = f(m1), f2 = f(m2);
    for (int it = 0; it < 200; ++it) {
      if (f1 < f2) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = lo + (1 - gr) * (hi - lo);
        f1 = f(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + gr * (hi - lo);
        f2 = f(m2);
      }
    }
    q[k] = (lo + hi) / 2.0;
  }
  return q;
}

// Brute-force LP oracle for min c.x over {A x <= b, lo <= x <= hi} with all
// bounds finite: enumerate vertices as intersections of n active
// constraints (rows of A plus bound planes), keep the feasible ones.
struct BruteForceLp {
  std::vector<Vec> rows;  // A
  Vec rhs;                // b
  Vec lo, hi;
};

namespace oracle_detail {

inline bool gauss_solve(std::vector<Vec> m, Vec b, Vec& out) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-10) return false;
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) out[c] = b[c] / m[c][c];
  return true;
}

}  // namespace oracle_detail

// Returns the optimal value; requires a bounded feasible problem.
inline double brute_force_lp_value(const BruteForceLp& lp, const Vec& c) {
  const std::size_t n = c.size();
  std::vector<Vec> all_rows = lp.rows;
  Vec all_rhs = lp.rhs;
  for (std::size_t k = 0; k < n; ++k) {
    Vec up(n, 0.0), dn(n, 0.0);
    up[k] = 1.0;
    dn[k] = -1.0;
    all_rows.push_back(up);
    all_rhs.push_back(lp.hi[k]);
    all_rows.push_back(dn);
    all_rhs.push_back(-lp.lo[k]);
  }
  const std::size_t m = all_rows.size();
  std::vector<std::size_t> idx(n);
  double best = std::numeric_limits<double>::infinity();
  // Enumerate all n-subsets of constraints.
  std::vector<std::size_t> comb(n);
  for (std::size_t k = 0; k < n; ++k) comb[k] = k;
  auto feasible = [&](const Vec& x) {
    for (std::size_t r = 0; r < m; ++r) {
      double lhs = 0.0;
      for (std::size_t k = 0; k < n; ++k) lhs += all_rows[r][k] * x[k];
      if (lhs > all_rhs[r] + 1e-7) return false;
    }
    return true;
  };
  while (true) {
    std::vector<Vec> sq(n, Vec(n));
    Vec rb(n);
    for (std::size_t r = 0; r < n; ++r) {
      sq[r] = all_rows[comb[r]];
      rb[r] = all_rhs[comb[r]];
    }
    Vec x;
    if (oracle_detail::gauss_solve(sq, rb, x) && feasible(x)) {
      best = std::min(best, dot(c, x));
    }
    // next combination
    std::size_t i = n;
    bool done = true;
    while (i-- > 0) {
      if (comb[i] + (n - i) < m) {
        ++comb[i];
        for (std::size_t k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return best;
}

}  // namespace aktest

#endif  // APPROACHKIT_TESTS_TESTSUPPORT_HPP_
