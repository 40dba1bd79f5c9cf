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

#ifndef APPROACHKIT_STRATEGIES_HPP_
#define APPROACHKIT_STRATEGIES_HPP_

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "approachkit/conditions.hpp"
#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/lp.hpp"
#include "approachkit/monitoring.hpp"
#include "approachkit/random.hpp"

namespace approachkit {

// ---------------------------------------------------------------------------
// Traces.
// ---------------------------------------------------------------------------

struct TraceHeader {
  std::uint64_t seed = 0;
  std::uint64_t game_hash = 0;
  std::string strategy;
  std::string nature;
  std::string target;
  std::vector<std::size_t> block_lengths;  // block strategy only
  Vec exploration_rates;
};

struct TraceRow {
  std::size_t n = 0;  // 1-based round
  std::size_t i = 0, j = 0, signal = 0;
  Vec x;
  Vec pure;       // r(i_n, j_n)
  Vec realized;   // r(x_n, j_n)
  Vec mixed;      // r(x_n, y_n)
  Vec surrogate;  // corner payoff, when the strategy uses one
  Vec avg_pure, avg_realized, avg_mixed, avg_surrogate;
  double dist = 0.0;       // distance of the controlled average
  double dist_R = 0.0;     // distance of the surrogate average
  double dist_pure = 0.0;  // distance of the pure-payoff average
  double step_inner = 0.0; // Blackwell condition inner product this round
};

struct BlockRecord {
  std::size_t index = 0;   // 1-based block number
  std::size_t start = 0;   // first round of the block (1-based)
  std::size_t length = 0;  // rounds actually played
  double gamma = 0.0;
  Vec x_orig;
  Vec x_played;
  Vec surrogate;           // R(x_played, repaired flag estimate)
  double flag_est_l1 = 0.0;     // repaired estimate vs true block flag
  double flag_raw_l1 = 0.0;     // raw empirical estimate vs true block flag
  double flag_repair_l1 = 0.0;  // raw vs repaired
  double step_inner = 0.0;
};

struct Trace {
  TraceHeader header;
  std::vector<TraceRow> rows;
  std::vector<BlockRecord> blocks;

  std::size_t condition_violations(double tol) const {
    std::size_t count = 0;
    for (const TraceRow& row : rows) {
      if (row.step_inner > tol) ++count;
    }
    return count;
  }
  double final_dist() const { return rows.empty() ? 0.0 : rows.back().dist; }
};

// ---------------------------------------------------------------------------
// Nature policies.
// ---------------------------------------------------------------------------

struct NatureContext {
  std::size_t round = 0;  // 1-based
  const GameSpec& game;
  const Vec& player_mixed;
  const Vec& control_avg;  // average the player is steering (round > 1)
  bool avg_valid = false;
  const TargetSet& target;
  const Config& cfg;
};

class NaturePolicy {
 public:
  virtual ~NaturePolicy() = default;
  virtual Vec choose(const NatureContext& ctx) = 0;
  virtual std::string name() const = 0;
};

class FixedNature final : public NaturePolicy {
 public:
  explicit FixedNature(Vec y) : y_(std::move(y)) {}
  Vec choose(const NatureContext& ctx) override {
    if (y_.size() != ctx.game.num_nature_actions()) {
      throw std::invalid_argument("FixedNature: action size mismatch");
    }
    return y_;
  }
  std::string name() const override { return "fixed"; }

 private:
  Vec y_;
};

class ScriptNature final : public NaturePolicy {
 public:
  explicit ScriptNature(std::vector<Vec> script) : script_(std::move(script)) {
    if (script_.empty()) {
      throw std::invalid_argument("ScriptNature: empty script");
    }
  }
  Vec choose(const NatureContext& ctx) override {
    return script_[(ctx.round - 1) % script_.size()];
  }
  std::string name() const override { return "script"; }

 private:
  std::vector<Vec> script_;
};

// Picks the pure action that maximizes the next-step drift away from the
// target, observing the player's mixed action. Ties break to the lowest
// index so runs are reproducible.
class BestResponseNature final : public NaturePolicy {
 public:
  Vec choose(const NatureContext& ctx) override {
    const GameSpec& g = ctx.game;
    const std::size_t J = g.num_nature_actions();
    std::size_t best = 0;
    double best_score = -kInf;
    Vec dir;
    if (ctx.avg_valid) {
      const Vec pi = project_target(ctx.control_avg, ctx.target, ctx.cfg);
      dir = sub(ctx.control_avg, pi);
    }
    const bool have_dir = !dir.empty() && norm(dir) > 1e-12;
    for (std::size_t j = 0; j < J; ++j) {
      const Vec payoff = payoff_vs_pure(g, ctx.player_mixed, j);
      const double score = have_dir
                               ? dot(payoff, dir)
                               : dist_target(payoff, ctx.target, ctx.cfg);
      if (score > best_score + 1e-15) {
        best_score = score;
        best = j;
      }
    }
    return basis_vector(J, best);
  }
  std::string name() const override { return "best-response"; }
};

inline std::unique_ptr<NaturePolicy> make_fixed_nature(Vec y) {
  return std::make_unique<FixedNature>(std::move(y));
}
inline std::unique_ptr<NaturePolicy> make_script_nature(
    std::vector<Vec> script) {
  return std::make_unique<ScriptNature>(std::move(script));
}
inline std::unique_ptr<NaturePolicy> make_best_response_nature() {
  return std::make_unique<BestResponseNature>();
}

// ---------------------------------------------------------------------------
// Strategy steps.
// ---------------------------------------------------------------------------

// Blackwell's projection step under full-monitoring semantics: when the
// running average sits outside the target, answer the tangent half-space at
// its projection with the one-shot optimal mixed action.
inline Vec blackwell_step(const GameSpec& g, const TargetSet& target,
                          const Vec& avg,
                          const Config& cfg = default_config()) {
  if (dist_target(avg, target, cfg) <= 1e-9) {
    return uniform_simplex(g.num_player_actions());
  }
  const Vec pi = project_target(avg, target, cfg);
  const Vec dir = sub(avg, pi);
  const HalfSpace hs{dir, dot(pi, dir)};
  const ConditionReport rep = one_shot_halfspace(g, hs, cfg);
  // When the target is not approachable the guarantee degrades by the
  // unattainable margin; the zero-sum optimizer is still the best reply.
  if (rep.witness_x) return *rep.witness_x;
  const ZeroSumSolution zs = [&] {
    std::vector<Vec> scalarized(g.num_player_actions(),
                                Vec(g.num_nature_actions(), 0.0));
    for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
      for (std::size_t j = 0; j < g.num_nature_actions(); ++j) {
        scalarized[i][j] = dot(g.payoffs[i][j], dir);
      }
    }
    return zero_sum_value(scalarized, cfg);
  }();
  return zs.row_strategy;
}

// Surrogate-payoff step toward an orthant: minimizes the worst scalarized
// corner over the action grid in the direction of the current violation.
inline Vec orthant_step_modified(const GridOracle& oracle, const Vec& a,
                                 const Vec& avg_R, double tol) {
  const GameSpec& g = oracle.game();
  if (dist_orthant(avg_R, a) <= 1e-9) {
    return uniform_simplex(g.num_player_actions());
  }
  const Vec pi = project_orthant(avg_R, a);
  const Vec q = sub(avg_R, pi);  // >= 0 by the orthant projection
  const double threshold = dot(q, pi);
  const SaddleStep step = one_shot_step(oracle, q, threshold,
                                        oracle.config());
  (void)tol;  // the exact solver returns the optimum; callers inspect margins
  return step.x;
}

inline Vec orthant_step_modified(const GameSpec& g, const Vec& a,
                                 const Vec& avg_R,
                                 const std::vector<Vec>& y_grid, double tol,
                                 const Config& cfg = default_config()) {
  GridOracle oracle(g, y_grid, cfg);
  return orthant_step_modified(oracle, a, avg_R, tol);
}

// ---------------------------------------------------------------------------
// Simulation runners.
// ---------------------------------------------------------------------------

namespace detail {

inline void accumulate_mean(Vec& mean, const Vec& value, std::size_t n) {
  if (mean.empty()) mean.assign(value.size(), 0.0);
  for (std::size_t k = 0; k < mean.size(); ++k) {
    mean[k] += (value[k] - mean[k]) / static_cast<double>(n);
  }
}

inline std::string render_target(const TargetSet& target) {
  return std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        auto render_vec = [](const Vec& v) {
          std::string s = "(";
          for (std::size_t k = 0; k < v.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(v[k]);
          }
          return s + ")";
        };
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return "halfspace a=" + render_vec(t.a) +
                 " b=" + std::to_string(t.b);
        } else if constexpr (std::is_same_v<T, Orthant>) {
          return "orthant a=" + render_vec(t.a);
        } else if constexpr (std::is_same_v<T, Polytope>) {
          return "polytope rows=" + std::to_string(t.rows.size());
        } else {
          return "support samples=" + std::to_string(t.directions.size());
        }
      },
      target);
}

}  // namespace detail

// Repeated play with full-monitoring Blackwell projections. The controlled
// average is the observable expected payoff r(x_n, j_n).
inline Trace run_blackwell(const GameSpec& g, const TargetSet& target,
                           NaturePolicy& nature, std::size_t horizon, Rng rng,
                           const Config& cfg = default_config()) {
  if (horizon < 1) throw std::invalid_argument("run_blackwell: horizon < 1");
  Trace trace;
  trace.header.seed = rng.seed();
  trace.header.game_hash = game_fingerprint(g);
  trace.header.strategy = "blackwell";
  trace.header.nature = nature.name();
  trace.header.target = detail::render_target(target);
  trace.rows.reserve(horizon);

  Vec avg_realized, avg_mixed, avg_pure;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const bool have_avg = n > 1;
    Vec x = have_avg ? blackwell_step(g, target, avg_realized, cfg)
                     : uniform_simplex(g.num_player_actions());
    // Data for the per-step condition recheck.
    Vec pi, dir;
    bool outside = false;
    if (have_avg && dist_target(avg_realized, target, cfg) > 1e-9) {
      pi = project_target(avg_realized, target, cfg);
      dir = sub(avg_realized, pi);
      outside = true;
    }
    NatureContext ctx{n,    g,   x,  avg_realized, have_avg,
                      target, cfg};
    const Vec y = nature.choose(ctx);
    check_simplex(y, "nature action");
    const RoundOutcome out = sample_round(g, x, y, rng);

    TraceRow row;
    row.n = n;
    row.i = out.i;
    row.j = out.j;
    row.signal = out.signal;
    row.x = x;
    row.pure = out.pure_payoff;
    row.realized = out.mixed_payoff;
    row.mixed = payoff_mixed(g, x, y);
    row.step_inner = outside ? dot(sub(row.realized, pi), dir) : 0.0;

    detail::accumulate_mean(avg_realized, row.realized, n);
    detail::accumulate_mean(avg_mixed, row.mixed, n);
    detail::accumulate_mean(avg_pure, row.pure, n);
    row.avg_realized = avg_realized;
    row.avg_mixed = avg_mixed;
    row.avg_pure = avg_pure;
    row.dist = dist_target(avg_realized, target, cfg);
    row.dist_R = row.dist;
    row.dist_pure = dist_target(avg_pure, target, cfg);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

// Surrogate-payoff strategy with observed flags: steers the average of the
// corner payoffs R_n = R(x_n, flag(y_n)) into the orthant; the payoff
// averages follow by componentwise domination.
inline Trace run_observed_flags(const GameSpec& g, const Vec& a,
                                NaturePolicy& nature, std::size_t horizon,
                                Rng rng, const std::vector<Vec>& y_grid,
                                const Config& cfg = default_config()) {
  if (horizon < 1) {
    throw std::invalid_argument("run_observed_flags: horizon < 1");
  }
  GridOracle oracle(g, y_grid, cfg);
  FiberCache cache(g, cfg);
  const TargetSet target{Orthant{a}};

  Trace trace;
  trace.header.seed = rng.seed();
  trace.header.game_hash = game_fingerprint(g);
  trace.header.strategy = "observed-flags";
  trace.header.nature = nature.name();
  trace.header.target = detail::render_target(target);
  trace.rows.reserve(horizon);

  Vec avg_R, avg_mixed, avg_realized, avg_pure;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const bool have_avg = n > 1;
    Vec x = have_avg ? orthant_step_modified(oracle, a, avg_R,
                                             cfg.condition_tol)
                     : uniform_simplex(g.num_player_actions());
    Vec pi, dir;
    bool outside = false;
    if (have_avg && dist_orthant(avg_R, a) > 1e-9) {
      pi = project_orthant(avg_R, a);
      dir = sub(avg_R, pi);
      outside = true;
    }
    NatureContext ctx{n, g, x, avg_R, have_avg, target, cfg};
    const Vec y = nature.choose(ctx);
    check_simplex(y, "nature action");
    const RoundOutcome out = sample_round(g, x, y, rng);
    const Vec surrogate =
        upper_right_corner(g, x, cache.get_for_action(y), cfg).corner;

    TraceRow row;
    row.n = n;
    row.i = out.i;
    row.j = out.j;
    row.signal = out.signal;
    row.x = x;
    row.pure = out.pure_payoff;
    row.realized = out.mixed_payoff;
    row.mixed = payoff_mixed(g, x, y);
    row.surrogate = surrogate;
    row.step_inner = outside ? dot(sub(surrogate, pi), dir) : 0.0;

    detail::accumulate_mean(avg_R, surrogate, n);
    detail::accumulate_mean(avg_mixed, row.mixed, n);
    detail::accumulate_mean(avg_realized, row.realized, n);
    detail::accumulate_mean(avg_pure, row.pure, n);
    row.avg_surrogate = avg_R;
    row.avg_mixed = avg_mixed;
    row.avg_realized = avg_realized;
    row.avg_pure = avg_pure;
    row.dist = dist_orthant(avg_mixed, a);
    row.dist_R = dist_orthant(avg_R, a);
    row.dist_pure = dist_orthant(avg_pure, a);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

inline Trace run_observed_flags(const GameSpec& g, const Vec& a,
                                NaturePolicy& nature, std::size_t horizon,
                                Rng rng,
                                const Config& cfg = default_config()) {
  return run_observed_flags(g, a, nature, horizon, rng, default_y_grid(g, cfg),
                            cfg);
}

// ---------------------------------------------------------------------------
// Block strategy on raw signals.
// ---------------------------------------------------------------------------

struct BlockSchedule {
  std::vector<std::size_t> lengths;  // nondecreasing
  Vec exploration;                   // in (0,1), nonincreasing
};

inline void validate_schedule(const BlockSchedule& s) {
  if (s.lengths.empty() || s.lengths.size() != s.exploration.size()) {
    throw std::invalid_argument("BlockSchedule: shape mismatch");
  }
  for (std::size_t b = 0; b < s.lengths.size(); ++b) {
    if (s.lengths[b] < 1) {
      throw std::invalid_argument("BlockSchedule: block length < 1");
    }
    if (!(s.exploration[b] > 0.0 && s.exploration[b] < 1.0)) {
      throw std::invalid_argument("BlockSchedule: exploration not in (0,1)");
    }
    if (b > 0) {
      if (s.lengths[b] < s.lengths[b - 1]) {
        throw std::invalid_argument("BlockSchedule: lengths must not decrease");
      }
      if (s.exploration[b] > s.exploration[b - 1]) {
        throw std::invalid_argument(
            "BlockSchedule: exploration must not increase");
      }
    }
  }
}

// L_b = ceil(b^{3/2}), gamma_b = (b+1)^{-1/4}. The shift keeps the first
// exploration rate inside (0,1); everything is caller-configurable.
inline BlockSchedule default_block_schedule(std::size_t horizon) {
  BlockSchedule s;
  std::size_t covered = 0;
  for (std::size_t b = 1; covered < horizon; ++b) {
    const auto len = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(b), 1.5)));
    s.lengths.push_back(len);
    s.exploration.push_back(std::pow(static_cast<double>(b + 1), -0.25));
    covered += len;
  }
  return s;
}

// Plays a constant exploratory mixture per block, estimates the average
// flag from the per-action signal frequencies, repairs the estimate onto
// the feasible set, and feeds the corner of the repaired flag into the
// projection update.
inline Trace run_block_signals(const GameSpec& g, const Vec& a,
                               const BlockSchedule& schedule,
                               NaturePolicy& nature, std::size_t horizon,
                               Rng rng, const std::vector<Vec>& y_grid,
                               const Config& cfg = default_config()) {
  if (horizon < 1) {
    throw std::invalid_argument("run_block_signals: horizon < 1");
  }
  validate_schedule(schedule);
  GridOracle oracle(g, y_grid, cfg);
  FiberCache cache(g, cfg);
  const TargetSet target{Orthant{a}};
  const std::size_t I = g.num_player_actions();
  const std::size_t S = g.num_signals();

  Trace trace;
  trace.header.seed = rng.seed();
  trace.header.game_hash = game_fingerprint(g);
  trace.header.strategy = "block-signals";
  trace.header.nature = nature.name();
  trace.header.target = detail::render_target(target);
  trace.header.block_lengths = schedule.lengths;
  trace.header.exploration_rates = schedule.exploration;
  trace.rows.reserve(horizon);

  Vec avg_mixed, avg_realized, avg_pure;
  Vec block_avg_R;  // length-weighted mean of the block surrogates
  double weight_sum = 0.0;
  std::vector<Vec> fallback_rows(I, uniform_simplex(S));

  std::size_t n = 0;
  for (std::size_t b = 0; n < horizon; ++b) {
    const std::size_t sched_idx = std::min(b, schedule.lengths.size() - 1);
    const std::size_t planned = schedule.lengths[sched_idx];
    const double gamma = schedule.exploration[sched_idx];

    Vec x_orig;
    Vec pi, dir;
    bool outside = false;
    if (weight_sum == 0.0 || dist_orthant(block_avg_R, a) <= 1e-9) {
      x_orig = uniform_simplex(I);
    } else {
      x_orig = orthant_step_modified(oracle, a, block_avg_R,
                                     cfg.condition_tol);
      pi = project_orthant(block_avg_R, a);
      dir = sub(block_avg_R, pi);
      outside = true;
    }
    Vec x_played = scaled(x_orig, 1.0 - gamma);
    axpy(x_played, gamma, uniform_simplex(I));

    std::vector<Vec> counts(I, Vec(S, 0.0));
    Vec played(I, 0.0);
    Vec nature_counts(g.num_nature_actions(), 0.0);
    const std::size_t block_start = n + 1;
    std::size_t block_len = 0;
    while (block_len < planned && n < horizon) {
      ++n;
      ++block_len;
      NatureContext ctx{n, g, x_played, block_avg_R, weight_sum > 0.0,
                        target, cfg};
      const Vec y = nature.choose(ctx);
      check_simplex(y, "nature action");
      const RoundOutcome out = sample_round(g, x_played, y, rng);
      counts[out.i][out.signal] += 1.0;
      played[out.i] += 1.0;
      nature_counts[out.j] += 1.0;

      TraceRow row;
      row.n = n;
      row.i = out.i;
      row.j = out.j;
      row.signal = out.signal;
      row.x = x_played;
      row.pure = out.pure_payoff;
      row.realized = out.mixed_payoff;
      row.mixed = payoff_mixed(g, x_played, y);
      detail::accumulate_mean(avg_mixed, row.mixed, n);
      detail::accumulate_mean(avg_realized, row.realized, n);
      detail::accumulate_mean(avg_pure, row.pure, n);
      row.avg_mixed = avg_mixed;
      row.avg_realized = avg_realized;
      row.avg_pure = avg_pure;
      row.avg_surrogate = block_avg_R;
      row.dist = dist_orthant(avg_mixed, a);
      row.dist_R =
          weight_sum > 0.0 ? dist_orthant(block_avg_R, a) : row.dist;
      row.dist_pure = dist_orthant(avg_pure, a);
      trace.rows.push_back(std::move(row));
    }

    // Per-action conditional signal frequencies; unplayed actions fall back
    // to the previous block's rows.
    Flag raw;
    raw.per_action.resize(I);
    for (std::size_t i = 0; i < I; ++i) {
      raw.per_action[i] = played[i] > 0.0
                              ? scaled(counts[i], 1.0 / played[i])
                              : fallback_rows[i];
    }
    const FlagRepair rep = repair_flag(g, raw, cfg);
    const Vec surrogate =
        upper_right_corner(g, x_played, cache.get(rep.repaired), cfg).corner;

    const Vec y_block = detail::cleaned_simplex(nature_counts);
    const Flag true_flag = maximal_information(g, y_block);

    BlockRecord record;
    record.index = b + 1;
    record.start = block_start;
    record.length = block_len;
    record.gamma = gamma;
    record.x_orig = x_orig;
    record.x_played = x_played;
    record.surrogate = surrogate;
    record.flag_est_l1 = flag_l1_distance(rep.repaired, true_flag);
    record.flag_raw_l1 = flag_l1_distance(raw, true_flag);
    record.flag_repair_l1 = rep.l1_error;
    record.step_inner =
        outside ? dot(sub(surrogate, pi), dir) : 0.0;
    trace.blocks.push_back(std::move(record));

    if (block_avg_R.empty()) block_avg_R.assign(g.dim, 0.0);
    const double w = static_cast<double>(block_len);
    weight_sum += w;
    for (std::size_t k = 0; k < g.dim; ++k) {
      block_avg_R[k] += (surrogate[k] - block_avg_R[k]) * (w / weight_sum);
    }
    fallback_rows = raw.per_action;
  }
  return trace;
}

inline Trace run_block_signals(const GameSpec& g, const Vec& a,
                               const BlockSchedule& schedule,
                               NaturePolicy& nature, std::size_t horizon,
                               Rng rng,
                               const Config& cfg = default_config()) {
  return run_block_signals(g, a, schedule, nature, horizon, rng,
                           default_y_grid(g, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Monte Carlo fan-out: replication k runs with seed base_seed + k; results
// are merged by index, so aggregation is order-independent.
// ---------------------------------------------------------------------------

inline std::vector<Trace> run_replications(
    std::size_t count, std::uint64_t base_seed, unsigned threads,
    const std::function<Trace(std::uint64_t)>& body) {
  if (count == 0) throw std::invalid_argument("run_replications: count == 0");
  std::vector<Trace> results(count);
  threads = std::max(1u, std::min<unsigned>(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      results[k] = body(base_seed + k);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = next.fetch_add(1); k < count;
             k = next.fetch_add(1)) {
          results[k] = body(base_seed + k);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

}  // namespace approachkit

#endif  // APPROACHKIT_STRATEGIES_HPP_
