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

#ifndef APPROACHKIT_LP_HPP_
#define APPROACHKIT_LP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "approachkit/config.hpp"
#include "approachkit/geometry.hpp"

namespace approachkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense linear program: minimize <objective, x> subject to
//   eq_rows[i] . x == eq_rhs[i]
//   ub_rows[i] . x <= ub_rhs[i]
//   lower[j] <= x[j] <= upper[j]   (+-inf allowed)
struct LinearProgram {
  Vec objective;
  std::vector<Vec> eq_rows;
  Vec eq_rhs;
  std::vector<Vec> ub_rows;
  Vec ub_rhs;
  Vec lower;
  Vec upper;

  explicit LinearProgram(std::size_t num_vars = 0)
      : objective(num_vars, 0.0),
        lower(num_vars, 0.0),
        upper(num_vars, kInf) {}

  std::size_t num_vars() const { return objective.size(); }

  void add_eq(Vec row, double rhs) {
    check_same_dim(row, objective, "LinearProgram::add_eq");
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(rhs);
  }
  void add_ub(Vec row, double rhs) {
    check_same_dim(row, objective, "LinearProgram::add_ub");
    ub_rows.push_back(std::move(row));
    ub_rhs.push_back(rhs);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

// Dual entries are ordered as [equality rows..., inequality rows...]; finite
// bound rows do not expose duals.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vec primal;
  Vec dual;
};

class LpError : public std::runtime_error {
 public:
  explicit LpError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Row-reduces a copy of `rows` and returns the indices of independent rows.
inline std::vector<std::size_t> independent_rows(
    const std::vector<Vec>& rows, double tol) {
  if (rows.empty()) return {};
  std::vector<Vec> work = rows;
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  std::vector<bool> used(m, false);
  std::vector<std::size_t> picked;
  for (std::size_t col = 0; col < n && picked.size() < m; ++col) {
    std::size_t best = m;
    double best_abs = tol;
    for (std::size_t i = 0; i < m; ++i) {
      if (!used[i] && std::abs(work[i][col]) > best_abs) {
        best = i;
        best_abs = std::abs(work[i][col]);
      }
    }
    if (best == m) continue;
    used[best] = true;
    picked.push_back(best);
    const double piv = work[best][col];
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] && i != best) continue;
      if (i == best) continue;
      const double f = work[i][col] / piv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) work[i][j] -= f * work[best][j];
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// Solves a square system by Gaussian elimination with partial pivoting.
// Returns false when the matrix is singular at the given tolerance.
inline bool solve_square(std::vector<Vec> a, Vec b, Vec& out, double tol) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    }
    if (std::abs(a[piv][col]) <= tol) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * out[j];
    out[i] = s / a[i][i];
  }
  return true;
}

// Two-phase tableau simplex on min c.z, A z = b, z >= 0 with Bland's rule.
// Artificial columns are kept (banned from entering) so duals can be read
// off their reduced costs at the end.
class TableauSimplex {
 public:
  TableauSimplex(std::vector<Vec> a, Vec b, Vec c, const Config& cfg)
      : cfg_(cfg), m_(b.size()), n_(c.size()), cost_(std::move(c)) {
    // Flip rows so the rhs is nonnegative; remember signs for the duals.
    row_sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < 0.0) {
        row_sign_[i] = -1.0;
        b[i] = -b[i];
        for (double& v : a[i]) v = -v;
      }
    }
    tableau_.assign(m_, Vec(n_ + m_ + 1, 0.0));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tableau_[i][j] = a[i][j];
      tableau_[i][n_ + i] = 1.0;  // artificial
      tableau_[i][n_ + m_] = b[i];
      basis_[i] = n_ + i;
    }
  }

  // Returns the status; primal z and duals are available afterwards.
  LpStatus run() {
    // Phase 1: minimize the sum of artificials.
    Vec phase1(n_ + m_, 0.0);
    for (std::size_t j = n_; j < n_ + m_; ++j) phase1[j] = 1.0;
    set_cost_row(phase1);
    iterate(/*allow_artificials=*/true);
    if (objective_value() > cfg_.lp_feasibility_tol * (1.0 + rhs_scale())) {
      return LpStatus::Infeasible;
    }
    drive_out_artificials();
    // Phase 2: the real objective.
    Vec phase2(n_ + m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    set_cost_row(phase2);
    if (!iterate(/*allow_artificials=*/false)) return LpStatus::Unbounded;
    return LpStatus::Optimal;
  }

  double objective_value() const { return -cost_row_[n_ + m_]; }

  Vec primal() const {
    Vec z(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) z[basis_[i]] = tableau_[i][n_ + m_];
    }
    return z;
  }

  // y_i = c_B B^-1 e_i, recovered from the artificial column of row i.
  Vec duals() const {
    Vec y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      y[i] = -cost_row_[n_ + i] * row_sign_[i];
    }
    return y;
  }

 private:
  double rhs_scale() const {
    double s = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      s = std::max(s, std::abs(tableau_[i][n_ + m_]));
    }
    return s;
  }

  void set_cost_row(const Vec& c) {
    current_cost_ = c;
    cost_row_.assign(n_ + m_ + 1, 0.0);
    for (std::size_t j = 0; j < n_ + m_; ++j) cost_row_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_ + m_; ++j) {
        cost_row_[j] -= cb * tableau_[i][j];
      }
    }
  }

  // Bland's rule: smallest eligible entering index, smallest basis index on
  // ratio ties. Returns false on unboundedness.
  bool iterate(bool allow_artificials) {
    const std::size_t limit =
        50000 + 200 * (m_ + n_);  // safety net; Bland precludes cycling
    const std::size_t cols = allow_artificials ? n_ + m_ : n_;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      std::size_t entering = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (cost_row_[j] < -cfg_.lp_optimality_tol) {
          entering = j;
          break;
        }
      }
      if (entering == cols) return true;  // optimal
      std::size_t leaving = m_;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = tableau_[i][entering];
        if (a > cfg_.lp_feasibility_tol) {
          const double ratio = tableau_[i][n_ + m_] / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 &&
               (leaving == m_ || basis_[i] < basis_[leaving]))) {
            best_ratio = ratio;
            leaving = i;
          }
        }
      }
      if (leaving == m_) return false;  // unbounded
      pivot(leaving, entering);
    }
    throw LpError(
        "simplex: iteration limit hit (numerically degenerate basis)");
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(tableau_[i][j]) > cfg_.lp_feasibility_tol) {
          col = j;
          break;
        }
      }
      // All-zero structural row: redundant constraint, the artificial stays
      // basic at level zero and never re-enters the pricing loop.
      if (col < n_) pivot(i, col);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Vec& pr = tableau_[row];
    const double piv = pr[col];
    for (double& v : pr) v /= piv;
    pr[col] = 1.0;  // clean rounding on the pivot itself
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = tableau_[i][col];
      if (f == 0.0) continue;
      Vec& ri = tableau_[i];
      for (std::size_t j = 0; j <= n_ + m_; ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    const double fc = cost_row_[col];
    if (fc != 0.0) {
      for (std::size_t j = 0; j <= n_ + m_; ++j) cost_row_[j] -= fc * pr[j];
      cost_row_[col] = 0.0;
    }
    basis_[row] = col;
  }

  const Config& cfg_;
  std::size_t m_;
  std::size_t n_;
  Vec cost_;
  Vec current_cost_;
  std::vector<Vec> tableau_;
  Vec cost_row_;
  std::vector<std::size_t> basis_;
  std::vector<double> row_sign_;
};

}  // namespace detail

// Deterministic two-phase simplex solve. Variables are shifted/split to
// standard form internally; duals are reported for eq rows then ub rows.
inline LpSolution solve_lp(const LinearProgram& lp,
                           const Config& cfg = default_config()) {
  const std::size_t n = lp.num_vars();
  if (n == 0) throw LpError("solve_lp: program has no variables");
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw LpError("solve_lp: bounds size mismatch");
  }

  // Standard-form columns per original variable.
  struct VarMap {
    std::size_t col = 0;      // first column
    double sign = 1.0;        // x = sign * z + offset (split vars: x = z+ - z-)
    double offset = 0.0;
    bool split = false;
  };
  std::vector<VarMap> vmap(n);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > hi) return LpSolution{LpStatus::Infeasible, 0.0, {}, {}};
    VarMap& vm = vmap[j];
    vm.col = cols;
    if (std::isfinite(lo)) {
      vm.sign = 1.0;
      vm.offset = lo;
      cols += 1;
    } else if (std::isfinite(hi)) {
      vm.sign = -1.0;
      vm.offset = hi;
      cols += 1;
    } else {
      vm.split = true;
      cols += 2;
    }
  }

  const std::size_t num_eq = lp.eq_rows.size();
  const std::size_t num_ub = lp.ub_rows.size();
  // Extra rows for two-sided finite bounds.
  std::vector<std::pair<std::size_t, double>> bound_rows;  // (var, width)
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower[j]) && std::isfinite(lp.upper[j])) {
      bound_rows.emplace_back(j, lp.upper[j] - lp.lower[j]);
    }
  }

  const std::size_t rows = num_eq + num_ub + bound_rows.size();
  const std::size_t slack0 = cols;
  const std::size_t total_cols = cols + num_ub + bound_rows.size();

  std::vector<Vec> a(rows, Vec(total_cols, 0.0));
  Vec b(rows, 0.0);
  Vec c(total_cols, 0.0);
  double obj_offset = 0.0;

  auto emit_row = [&](std::size_t r, const Vec& row, double rhs) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double coef = row[j];
      if (coef == 0.0) continue;
      const VarMap& vm = vmap[j];
      if (vm.split) {
        a[r][vm.col] += coef;
        a[r][vm.col + 1] -= coef;
      } else {
        a[r][vm.col] += coef * vm.sign;
        shift += coef * vm.offset;
      }
    }
    b[r] = rhs - shift;
  };

  for (std::size_t i = 0; i < num_eq; ++i) emit_row(i, lp.eq_rows[i], lp.eq_rhs[i]);
  for (std::size_t i = 0; i < num_ub; ++i) {
    emit_row(num_eq + i, lp.ub_rows[i], lp.ub_rhs[i]);
    a[num_eq + i][slack0 + i] = 1.0;
  }
  for (std::size_t i = 0; i < bound_rows.size(); ++i) {
    const std::size_t r = num_eq + num_ub + i;
    const auto [j, width] = bound_rows[i];
    a[r][vmap[j].col] = 1.0;  // two-sided bounds always have finite lower
    a[r][slack0 + num_ub + i] = 1.0;
    b[r] = width;
  }

  for (std::size_t j = 0; j < n; ++j) {
    const double coef = lp.objective[j];
    if (coef == 0.0) continue;
    const VarMap& vm = vmap[j];
    if (vm.split) {
      c[vm.col] += coef;
      c[vm.col + 1] -= coef;
    } else {
      c[vm.col] += coef * vm.sign;
      obj_offset += coef * vm.offset;
    }
  }

  detail::TableauSimplex simplex(std::move(a), std::move(b), std::move(c), cfg);
  const LpStatus status = simplex.run();
  LpSolution sol;
  sol.status = status;
  if (status != LpStatus::Optimal) return sol;

  const Vec z = simplex.primal();
  sol.primal.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    sol.primal[j] = vm.split ? z[vm.col] - z[vm.col + 1]
                             : vm.sign * z[vm.col] + vm.offset;
  }
  sol.value = simplex.objective_value() + obj_offset;
  const Vec y = simplex.duals();
  sol.dual.assign(y.begin(), y.begin() + static_cast<long>(num_eq + num_ub));
  return sol;
}

// ---------------------------------------------------------------------------
// Zero-sum matrix games. The row player minimizes, the column player
// maximizes: value = min_x max_y x' G y.
// ---------------------------------------------------------------------------

struct ZeroSumSolution {
  double value = 0.0;
  Vec row_strategy;  // minimizer
  Vec col_strategy;  // maximizer
};

namespace detail {

inline Vec cleaned_simplex(Vec w) {
  double s = 0.0;
  for (double& v : w) {
    if (v < 0.0) v = 0.0;
    s += v;
  }
  if (s <= 0.0) return uniform_simplex(w.size());
  for (double& v : w) v /= s;
  return w;
}

}  // namespace detail

inline ZeroSumSolution zero_sum_value(const std::vector<Vec>& game,
                                      const Config& cfg = default_config()) {
  if (game.empty() || game.front().empty()) {
    throw std::invalid_argument("zero_sum_value: empty game matrix");
  }
  const std::size_t num_rows = game.size();
  const std::size_t num_cols = game.front().size();
  for (const Vec& row : game) {
    check_same_dim(row, game.front(), "zero_sum_value rows");
  }

  // Minimizer side: variables (x, v), min v s.t. sum_i x_i G[i][j] <= v.
  LinearProgram row_lp(num_rows + 1);
  row_lp.objective[num_rows] = 1.0;
  row_lp.lower[num_rows] = -kInf;
  for (std::size_t j = 0; j < num_cols; ++j) {
    Vec row(num_rows + 1, 0.0);
    for (std::size_t i = 0; i < num_rows; ++i) row[i] = game[i][j];
    row[num_rows] = -1.0;
    row_lp.add_ub(std::move(row), 0.0);
  }
  Vec ones(num_rows + 1, 1.0);
  ones[num_rows] = 0.0;
  row_lp.add_eq(std::move(ones), 1.0);
  const LpSolution row_sol = solve_lp(row_lp, cfg);
  if (row_sol.status != LpStatus::Optimal) {
    throw LpError(std::string("zero_sum_value: row LP ") +
                  to_string(row_sol.status));
  }

  // Maximizer side: variables (y, w), min -w s.t. w - sum_j G[i][j] y_j <= 0.
  LinearProgram col_lp(num_cols + 1);
  col_lp.objective[num_cols] = -1.0;
  col_lp.lower[num_cols] = -kInf;
  for (std::size_t i = 0; i < num_rows; ++i) {
    Vec row(num_cols + 1, 0.0);
    for (std::size_t j = 0; j < num_cols; ++j) row[j] = -game[i][j];
    row[num_cols] = 1.0;
    col_lp.add_ub(std::move(row), 0.0);
  }
  Vec onesc(num_cols + 1, 1.0);
  onesc[num_cols] = 0.0;
  col_lp.add_eq(std::move(onesc), 1.0);
  const LpSolution col_sol = solve_lp(col_lp, cfg);
  if (col_sol.status != LpStatus::Optimal) {
    throw LpError(std::string("zero_sum_value: column LP ") +
                  to_string(col_sol.status));
  }

  ZeroSumSolution out;
  out.value = row_sol.value;
  out.row_strategy = detail::cleaned_simplex(
      Vec(row_sol.primal.begin(), row_sol.primal.begin() + num_rows));
  out.col_strategy = detail::cleaned_simplex(
      Vec(col_sol.primal.begin(), col_sol.primal.begin() + num_cols));
  return out;
}

// ---------------------------------------------------------------------------
// Vertex enumeration of {y >= 0 : A y = b} by basic feasible solutions.
// Desk-scale only: the number of column subsets is combinatorial.
// ---------------------------------------------------------------------------

inline std::vector<Vec> enumerate_bfs_vertices(
    const std::vector<Vec>& eq_rows, const Vec& eq_rhs,
    const Config& cfg = default_config()) {
  if (eq_rows.empty()) throw std::invalid_argument("enumerate_bfs_vertices");
  const std::size_t m = eq_rows.size();
  const std::size_t n = eq_rows.front().size();
  const double tol = cfg.fiber_vertex_tol;

  const std::vector<std::size_t> ind =
      detail::independent_rows(eq_rows, 1e-11);
  const std::size_t rank = ind.size();
  std::vector<Vec> vertices;
  if (rank == 0) return vertices;

  std::vector<std::size_t> subset(rank);
  // Enumerate column subsets of size `rank` in lexicographic order.
  auto advance = [&](std::vector<std::size_t>& s) -> bool {
    std::size_t i = rank;
    while (i-- > 0) {
      if (s[i] + (rank - i) < n + 0) {
        ++s[i];
        for (std::size_t j = i + 1; j < rank; ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < rank; ++i) subset[i] = i;

  do {
    std::vector<Vec> a_sq(rank, Vec(rank, 0.0));
    Vec b_sq(rank, 0.0);
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t cidx = 0; cidx < rank; ++cidx) {
        a_sq[r][cidx] = eq_rows[ind[r]][subset[cidx]];
      }
      b_sq[r] = eq_rhs[ind[r]];
    }
    Vec y_basis;
    if (!detail::solve_square(std::move(a_sq), std::move(b_sq), y_basis,
                              1e-11)) {
      continue;
    }
    Vec y(n, 0.0);
    bool ok = true;
    for (std::size_t cidx = 0; cidx < rank; ++cidx) {
      if (y_basis[cidx] < -tol) {
        ok = false;
        break;
      }
      y[subset[cidx]] = std::max(y_basis[cidx], 0.0);
    }
    if (!ok) continue;
    // Must satisfy every row, including the dependent ones.
    for (std::size_t r = 0; r < m && ok; ++r) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += eq_rows[r][j] * y[j];
      ok = std::abs(lhs - eq_rhs[r]) <= tol * (1.0 + std::abs(eq_rhs[r]));
    }
    if (!ok) continue;
    bool duplicate = false;
    for (const Vec& v : vertices) {
      if (linf_norm(sub(v, y)) <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(std::move(y));
  } while (advance(subset));

  return vertices;
}

}  // namespace approachkit

#endif  // APPROACHKIT_LP_HPP_
