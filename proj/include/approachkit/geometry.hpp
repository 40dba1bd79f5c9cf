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

#ifndef APPROACHKIT_GEOMETRY_HPP_
#define APPROACHKIT_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "approachkit/config.hpp"

namespace approachkit {

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// Small dense vector helpers. Everything takes plain std::vector<double>;
// dimension checks are the caller-facing error surface.
// ---------------------------------------------------------------------------

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double squared_norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(squared_norm(a)); }

inline double l1_norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double linf_norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

inline Vec add(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "add");
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  check_same_dim(a, b, "sub");
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline Vec scaled(const Vec& a, double c) {
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = c * a[k];
  return r;
}

// r += c * a
inline void axpy(Vec& r, double c, const Vec& a) {
  check_same_dim(r, a, "axpy");
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += c * a[k];
}

inline double distance(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

// a <= b + tol componentwise
inline bool dominated_by(const Vec& a, const Vec& b, double tol = 0.0) {
  check_same_dim(a, b, "dominated_by");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k] + tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Simplex vectors (mixed actions, belief vectors).
// ---------------------------------------------------------------------------

inline bool is_simplex_vector(const Vec& w,
                              double tol = default_config().simplex_sum_tol) {
  if (w.empty()) return false;
  double s = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < -tol) return false;
    s += v;
  }
  return std::abs(s - 1.0) <= tol;
}

inline void check_simplex(const Vec& w, const char* where,
                          double tol = default_config().simplex_sum_tol) {
  if (!is_simplex_vector(w, tol)) {
    throw std::invalid_argument(std::string(where) +
                                ": not a valid simplex vector");
  }
}

inline Vec uniform_simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_simplex: empty support");
  return Vec(n, 1.0 / static_cast<double>(n));
}

inline Vec basis_vector(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

// Euclidean projection onto the probability simplex (sort-based).
inline Vec project_simplex(Vec v) {
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("project_simplex: empty vector");
  Vec u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double acc = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += u[j];
    const double t = (acc - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
  return v;
}

// All points of the simplex with coordinates k/denominator. Lexicographic
// order, deterministic. Size is C(denominator + n - 1, n - 1).
inline std::vector<Vec> simplex_grid(std::size_t n, int denominator) {
  if (n == 0 || denominator < 1) {
    throw std::invalid_argument("simplex_grid: bad parameters");
  }
  std::vector<Vec> out;
  Vec current(n, 0.0);
  const double step = 1.0 / denominator;
  // Compositions of `denominator` units into n cells, ascending
  // lexicographic in the emitted coordinates.
  auto rec = [&](auto&& self, std::size_t cell, int remaining) -> void {
    if (cell + 1 == n) {
      current[cell] = remaining * step;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current[cell] = k * step;
      self(self, cell + 1, remaining - k);
    }
  };
  rec(rec, 0, denominator);
  return out;
}

inline std::size_t simplex_grid_size(std::size_t n, int denominator) {
  // C(denominator + n - 1, n - 1), computed without overflow for desk scale.
  long double r = 1.0L;
  for (std::size_t i = 1; i < n; ++i) {
    r = r * (denominator + i) / i;
  }
  return static_cast<std::size_t>(r + 0.5L);
}

// Largest denominator <= preferred whose grid stays below max_points.
inline int adaptive_grid_denominator(std::size_t n, int preferred,
                                     std::size_t max_points) {
  int d = preferred;
  while (d > 1 && simplex_grid_size(n, d) > max_points) --d;
  return d;
}

// ---------------------------------------------------------------------------
// Target sets.
// ---------------------------------------------------------------------------

// {w : <w, a> <= b}
struct HalfSpace {
  Vec a;
  double b = 0.0;
};

// {w : w <= a componentwise}
struct Orthant {
  Vec a;
};

// Intersection of half-spaces {w : <w, rows[l]> <= offsets[l]}.
struct Polytope {
  std::vector<Vec> rows;
  Vec offsets;
};

// A convex set known through sampled support values: the induced outer set
// is the intersection of {<w, directions[i]> <= values[i]}.
struct SupportSampled {
  std::vector<Vec> directions;  // unit norm
  Vec values;
};

using TargetSet = std::variant<HalfSpace, Orthant, Polytope, SupportSampled>;

inline std::size_t target_dim(const TargetSet& c) {
  return std::visit(
      [](const auto& t) -> std::size_t {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, HalfSpace>) return t.a.size();
        if constexpr (std::is_same_v<T, Orthant>) return t.a.size();
        if constexpr (std::is_same_v<T, Polytope>) {
          return t.rows.empty() ? 0 : t.rows.front().size();
        }
        if constexpr (std::is_same_v<T, SupportSampled>) {
          return t.directions.empty() ? 0 : t.directions.front().size();
        }
      },
      c);
}

inline void validate_target(const TargetSet& c,
                            const Config& cfg = default_config()) {
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          if (norm(t.a) == 0.0) {
            throw std::invalid_argument("HalfSpace: zero direction");
          }
        } else if constexpr (std::is_same_v<T, Polytope>) {
          if (t.rows.empty()) {
            throw std::invalid_argument("Polytope: needs at least one row");
          }
          if (t.rows.size() != t.offsets.size()) {
            throw std::invalid_argument("Polytope: rows/offsets mismatch");
          }
          for (const Vec& r : t.rows) {
            check_same_dim(r, t.rows.front(), "Polytope rows");
            if (norm(r) == 0.0) {
              throw std::invalid_argument("Polytope: zero row");
            }
          }
        } else if constexpr (std::is_same_v<T, SupportSampled>) {
          if (t.directions.empty() ||
              t.directions.size() != t.values.size()) {
            throw std::invalid_argument("SupportSampled: bad shape");
          }
          for (const Vec& s : t.directions) {
            if (std::abs(norm(s) - 1.0) > cfg.unit_norm_tol) {
              throw std::invalid_argument(
                  "SupportSampled: direction not unit norm");
            }
          }
        } else {
          (void)t;
        }
      },
      c);
}

// The outer polytope induced by sampled support values.
inline Polytope induced_polytope(const SupportSampled& s) {
  return Polytope{s.directions, s.values};
}

// ---------------------------------------------------------------------------
// Projections and distances.
// ---------------------------------------------------------------------------

// Componentwise clip: the Euclidean projection onto {w <= a}.
inline Vec project_orthant(const Vec& p, const Vec& a) {
  check_same_dim(p, a, "project_orthant");
  Vec q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) q[k] = std::min(p[k], a[k]);
  return q;
}

inline double dist_orthant(const Vec& p, const Vec& a) {
  check_same_dim(p, a, "dist_orthant");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double e = std::max(p[k] - a[k], 0.0);
    s += e * e;
  }
  return std::sqrt(s);
}

inline Vec project_halfspace(const Vec& p, const HalfSpace& h) {
  check_same_dim(p, h.a, "project_halfspace");
  const double viol = dot(p, h.a) - h.b;
  if (viol <= 0.0) return p;
  Vec q = p;
  axpy(q, -viol / squared_norm(h.a), h.a);
  return q;
}

// Thrown when an iterative projection fails to converge; carries the best
// iterate so callers can decide whether the residual is acceptable.
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(std::string what, Vec best, double residual)
      : std::runtime_error(std::move(what)),
        best_iterate(std::move(best)),
        residual(residual) {}
  Vec best_iterate;
  double residual = 0.0;
};

inline double max_violation(const Vec& p, const Polytope& poly) {
  double m = 0.0;
  for (std::size_t l = 0; l < poly.rows.size(); ++l) {
    m = std::max(m, dot(p, poly.rows[l]) - poly.offsets[l]);
  }
  return m;
}

// Dykstra's alternating projections onto the half-spaces of a polytope.
// Converges to the Euclidean projection for intersections of convex sets.
inline Vec project_polytope(const Vec& p, const Polytope& poly,
                            const Config& cfg = default_config()) {
  validate_target(TargetSet{poly});
  check_same_dim(p, poly.rows.front(), "project_polytope");
  const std::size_t m = poly.rows.size();
  Vec x = p;
  std::vector<Vec> increments(m, Vec(p.size(), 0.0));
  for (int sweep = 0; sweep < cfg.dykstra_max_sweeps; ++sweep) {
    // The iterate can stall while increments rearrange, so the stopping
    // rule must watch the increments as well as x.
    double shift_sq = 0.0;
    const Vec x_before = x;
    for (std::size_t l = 0; l < m; ++l) {
      Vec w = add(x, increments[l]);
      Vec next = project_halfspace(w, HalfSpace{poly.rows[l], poly.offsets[l]});
      Vec inc = sub(w, next);
      shift_sq += squared_norm(sub(inc, increments[l]));
      increments[l] = std::move(inc);
      x = std::move(next);
    }
    shift_sq += squared_norm(sub(x, x_before));
    const double viol = max_violation(x, poly);
    if (std::sqrt(shift_sq) <= cfg.projection_tol &&
        viol <= cfg.projection_tol) {
      return x;
    }
  }
  throw ProjectionError("project_polytope: Dykstra did not converge", x,
                        std::max(max_violation(x, poly), 0.0));
}

inline Vec project_target(const Vec& p, const TargetSet& c,
                          const Config& cfg = default_config()) {
  return std::visit(
      [&](const auto& t) -> Vec {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return project_halfspace(p, t);
        } else if constexpr (std::is_same_v<T, Orthant>) {
          return project_orthant(p, t.a);
        } else if constexpr (std::is_same_v<T, Polytope>) {
          return project_polytope(p, t, cfg);
        } else {
          return project_polytope(p, induced_polytope(t), cfg);
        }
      },
      c);
}

inline double dist_target(const Vec& p, const TargetSet& c,
                          const Config& cfg = default_config()) {
  if (const auto* orth = std::get_if<Orthant>(&c)) {
    return dist_orthant(p, orth->a);
  }
  if (const auto* hs = std::get_if<HalfSpace>(&c)) {
    return std::max(dot(p, hs->a) - hs->b, 0.0) / norm(hs->a);
  }
  return distance(p, project_target(p, c, cfg));
}

inline bool contains(const TargetSet& c, const Vec& p, double tol,
                     const Config& cfg = default_config()) {
  return dist_target(p, c, cfg) <= tol;
}

// ---------------------------------------------------------------------------
// Support functions of finite point clouds.
// ---------------------------------------------------------------------------

inline double support_value(std::span<const Vec> points, const Vec& s) {
  if (points.empty()) {
    throw std::invalid_argument("support_value: empty point cloud");
  }
  double best = dot(points.front(), s);
  for (std::size_t i = 1; i < points.size(); ++i) {
    best = std::max(best, dot(points[i], s));
  }
  return best;
}

inline double support_value(const std::vector<Vec>& points, const Vec& s) {
  return support_value(std::span<const Vec>(points), s);
}

// ---------------------------------------------------------------------------
// Direction grids on the unit sphere (d = 1, 2, 3).
// ---------------------------------------------------------------------------

struct DirectionGrid {
  std::vector<Vec> directions;
  std::size_t count() const { return directions.size(); }
};

inline DirectionGrid make_direction_grid(std::size_t dim, int count) {
  if (count < 1) throw std::invalid_argument("make_direction_grid: count < 1");
  DirectionGrid grid;
  if (dim == 1) {
    grid.directions = {Vec{1.0}, Vec{-1.0}};
    return grid;
  }
  if (dim == 2) {
    grid.directions.reserve(count);
    for (int k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      grid.directions.push_back(Vec{std::cos(theta), std::sin(theta)});
    }
    return grid;
  }
  if (dim == 3) {
    // Product-angle grid: polar rings times azimuths, plus the two poles.
    // The realized count is rings * azimuths + 2, nearest to the request.
    const int interior = std::max(count - 2, 1);
    int rings = std::max(1, static_cast<int>(std::lround(
                                std::sqrt(interior / 2.0))));
    int azimuths = std::max(1, (interior + rings - 1) / rings);
    grid.directions.push_back(Vec{0.0, 0.0, 1.0});
    grid.directions.push_back(Vec{0.0, 0.0, -1.0});
    for (int i = 1; i <= rings; ++i) {
      const double polar = std::numbers::pi * i / (rings + 1);
      for (int j = 0; j < azimuths; ++j) {
        const double az = 2.0 * std::numbers::pi * j / azimuths;
        grid.directions.push_back(Vec{std::sin(polar) * std::cos(az),
                                      std::sin(polar) * std::sin(az),
                                      std::cos(polar)});
      }
    }
    return grid;
  }
  throw std::invalid_argument(
      "make_direction_grid: only dimensions 1..3 are supported");
}

inline DirectionGrid default_direction_grid(std::size_t dim,
                                            const Config& cfg =
                                                default_config()) {
  if (dim <= 2) return make_direction_grid(dim, cfg.directions_2d);
  return make_direction_grid(dim, cfg.directions_3d);
}

// Nonnegative unit directions indexed by the simplex grid: q / ||q||. Used to
// sweep the half-spaces containing an orthant.
inline std::vector<Vec> nonnegative_direction_grid(std::size_t dim,
                                                   int denominator) {
  std::vector<Vec> out;
  for (Vec& q : simplex_grid(dim, denominator)) {
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace approachkit

#endif  // APPROACHKIT_GEOMETRY_HPP_
