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

#include <catch2/catch_amalgamated.hpp>

#include "testsupport.hpp"

using namespace approachkit;
using aktest::make_interval_game_dark;
using aktest::make_mirror_game;
using aktest::random_game;
using aktest::random_simplex;
using aktest::random_unit;
using aktest::uniform_in;
using aktest::zero_sum_2x2_oracle;
using aktest::MonitoringKind;

TEST_CASE("one-shot half-spaces on the mirror game") {
  const GameSpec g = make_mirror_game();
  {
    const ConditionReport rep = one_shot_halfspace(g, HalfSpace{{1.0, 0.0}, 0.0});
    CHECK(rep.verdict == Verdict::Approachable);
    REQUIRE(rep.witness_x.has_value());
    CHECK((*rep.witness_x)[1] == Catch::Approx(1.0).margin(1e-9));
    CHECK(rep.margin == Catch::Approx(0.0).margin(1e-9));
    // Cross-check against the closed 2x2 value.
    CHECK(zero_sum_2x2_oracle(0.0, 1.0, -1.0, 0.0) ==
          Catch::Approx(0.0).margin(1e-12));
  }
  {
    const ConditionReport rep = one_shot_halfspace(g, HalfSpace{{1.0, 1.0}, 0.0});
    CHECK(rep.verdict == Verdict::Approachable);
    CHECK(rep.margin == Catch::Approx(0.0).margin(1e-9));
  }
  CHECK_THROWS_AS(one_shot_halfspace(g, HalfSpace{{0.0, 0.0}, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("one-shot half-space on the interval game") {
  const GameSpec g = make_interval_game_dark();
  const ConditionReport rep = one_shot_halfspace(g, HalfSpace{{1.0}, 1.0});
  CHECK(rep.verdict == Verdict::Approachable);
  REQUIRE(rep.witness_x.has_value());
  CHECK((*rep.witness_x)[1] == Catch::Approx(1.0).margin(1e-9));
  CHECK(rep.margin == Catch::Approx(0.0).margin(1e-9));
  CHECK(zero_sum_2x2_oracle(-1.0, 2.0, -2.0, 1.0) == Catch::Approx(1.0));
}

TEST_CASE("half-space verdicts ignore the signal structure") {
  Rng rng(9000);
  for (int trial = 0; trial < 40; ++trial) {
    const GameSpec g = random_game(rng, 2 + trial % 2, 2 + trial % 2,
                                   1 + trial % 3, 2, MonitoringKind::Random);
    for (int h = 0; h < 5; ++h) {
      const HalfSpace hs{random_unit(rng, g.dim), uniform_in(rng, -0.5, 0.5)};
      const ConditionReport base = one_shot_halfspace(g, hs);
      const ConditionReport full =
          one_shot_halfspace(with_full_monitoring(g), hs);
      const ConditionReport dark =
          one_shot_halfspace(with_dark_monitoring(g), hs);
      CHECK(base.verdict == full.verdict);
      CHECK(base.verdict == dark.verdict);
      CHECK(base.margin == full.margin);  // bitwise: same payoff-only path
      CHECK(base.margin == dark.margin);
    }
  }
}

TEST_CASE("excluded half-spaces are excluded by Nature at half the margin") {
  Rng rng(9100);
  int excluded_cases = 0;
  for (int trial = 0; trial < 60 && excluded_cases < 15; ++trial) {
    const GameSpec g =
        random_game(rng, 2, 3, 2, 2, MonitoringKind::Random);
    const HalfSpace hs{random_unit(rng, 2), uniform_in(rng, -0.8, 0.2)};
    const ConditionReport rep = one_shot_halfspace(g, hs);
    if (rep.verdict != Verdict::NotApproachable) continue;
    ++excluded_cases;
    const double delta = -rep.margin;
    REQUIRE(delta > 0.0);
    // Nature's guarantee via the transposed game: a single y keeping every
    // reply at least b + delta/2 deep into the complement.
    std::vector<Vec> scalarized(2, Vec(3, 0.0));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        scalarized[i][j] = dot(g.payoffs[i][j], hs.a);
      }
    }
    std::vector<Vec> neg_t(3, Vec(2, 0.0));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) neg_t[j][i] = -scalarized[i][j];
    }
    const ZeroSumSolution transposed = zero_sum_value(neg_t);
    const double nature_guarantee = -transposed.value;  // max_y min_x
    CHECK(nature_guarantee >= hs.b + delta / 2 - 1e-7);
    REQUIRE(rep.counter_y.has_value());
    for (std::size_t i = 0; i < 2; ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        v += (*rep.counter_y)[j] * scalarized[i][j];
      }
      CHECK(v >= hs.b + delta - 1e-7);
    }
  }
  REQUIRE(excluded_cases >= 10);
}

TEST_CASE("dual condition on the mirror game") {
  const GameSpec full = make_mirror_game();
  const GameSpec dark = with_dark_monitoring(full);
  const TargetSet orthant{Orthant{{0.0, 0.0}}};

  const ConditionReport ok = dual_condition(full, orthant);
  CHECK(approachable_side(ok.verdict));
  CHECK(ok.verdict == Verdict::NotFalsifiedOnGrid);
  CHECK(ok.margin >= -1e-9);
  CHECK(ok.witness_x.has_value());

  const ConditionReport bad = dual_condition(dark, orthant);
  CHECK(bad.verdict == Verdict::NotApproachable);
  CHECK(bad.margin == Catch::Approx(-0.5).margin(1e-7));
  REQUIRE(bad.counter_y.has_value());
  REQUIRE(bad.separating_direction.has_value());
  // The recovered direction scalarizes every surrogate above the orthant.
  const Vec& q = *bad.separating_direction;
  CHECK(q[0] == Catch::Approx(0.5).margin(1e-7));
  CHECK(q[1] == Catch::Approx(0.5).margin(1e-7));

  // The corner stays a fixed distance from the orthant for every action.
  for (int k = 0; k <= 20; ++k) {
    const double alpha = k / 20.0;
    const Vec corner = modified_payoff(dark, {alpha, 1 - alpha}, {0.5, 0.5});
    CHECK(dist_orthant(corner, {0.0, 0.0}) >= 1.0 / std::sqrt(2.0) - 1e-9);
  }
}

TEST_CASE("dual condition certifies dark games exactly") {
  // In the dark there is a single flag, so the grid is exhaustive and the
  // positive verdict upgrades from not-falsified to a certificate.
  const GameSpec g = with_dark_monitoring(make_mirror_game());
  const ConditionReport rep = dual_condition(g, TargetSet{Orthant{{1.0, 1.0}}});
  CHECK(rep.verdict == Verdict::Approachable);
}

TEST_CASE("dual condition rejects the interval polytope in the dark") {
  const GameSpec g = make_interval_game_dark();
  const TargetSet poly{aktest::make_unit_interval_polytope()};
  const ConditionReport rep = dual_condition(g, poly);
  CHECK(rep.verdict == Verdict::NotApproachable);
  // Same target under full monitoring is fine: max_y min_x keeps a point
  // of [-1,1] reachable for every y.
  const ConditionReport full =
      dual_condition(with_full_monitoring(g), poly);
  CHECK(approachable_side(full.verdict));
}

TEST_CASE("dual and one-shot agree on half-spaces") {
  Rng rng(9200);
  for (int trial = 0; trial < 30; ++trial) {
    const GameSpec g = random_game(rng, 2 + trial % 2, 2 + trial % 2, 2, 2,
                                   trial % 3 == 0 ? MonitoringKind::Full
                                   : trial % 3 == 1
                                       ? MonitoringKind::Dark
                                       : MonitoringKind::Random);
    const HalfSpace hs{random_unit(rng, 2), uniform_in(rng, -0.3, 0.3)};
    const ConditionReport one_shot = one_shot_halfspace(g, hs);
    const ConditionReport dual = dual_condition(g, TargetSet{hs});
    if (std::abs(one_shot.margin) > 1e-6) {
      CHECK(approachable_side(one_shot.verdict) ==
            approachable_side(dual.verdict));
    }
  }
}

TEST_CASE("modified one-shot check on the dark mirror game") {
  const GameSpec g = with_dark_monitoring(make_mirror_game());
  const ConditionReport rep = one_shot_halfspace_modified(
      g, {0.5, 0.5}, 0.0, default_y_grid(g), 1e-6);
  CHECK(rep.verdict == Verdict::NotApproachable);
  CHECK(rep.margin == Catch::Approx(-0.5).margin(1e-9));
  REQUIRE(rep.counter_y.has_value());

  CHECK_THROWS_AS(one_shot_halfspace_modified(g, {-0.5, 0.5}, 0.0,
                                              default_y_grid(g), 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(one_shot_halfspace_modified(g, {0.0, 0.0}, 0.0,
                                              default_y_grid(g), 1e-6),
                  std::invalid_argument);
}

TEST_CASE("modified one-shot check reduces to the plain one under full "
          "monitoring") {
  Rng rng(9300);
  for (int trial = 0; trial < 15; ++trial) {
    const GameSpec g = random_game(rng, 2, 2, 2, 2, MonitoringKind::Full);
    Vec q = random_simplex(rng, 2);
    const double threshold = uniform_in(rng, -0.5, 0.5);

    // Scalarized plain value.
    std::vector<Vec> scalarized(2, Vec(2, 0.0));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        scalarized[i][j] = dot(g.payoffs[i][j], q);
      }
    }
    const ZeroSumSolution zs = zero_sum_value(scalarized);

    // Augment the grid with the exact worst reply so both sides quantify
    // over the same adversary.
    std::vector<Vec> grid = default_y_grid(g);
    grid.push_back(zs.col_strategy);
    const ConditionReport rep =
        one_shot_halfspace_modified(g, q, threshold, grid, 1e-6);
    CHECK(-rep.margin == Catch::Approx(zs.value - threshold).margin(1e-7));
    CHECK(approachable_side(rep.verdict) ==
          (zs.value <= threshold + 1e-6));
  }
}

TEST_CASE("approachable verdicts come with working witnesses") {
  Rng rng(9400);
  for (int trial = 0; trial < 10; ++trial) {
    const GameSpec g = random_game(rng, 3, 2, 2, 2, MonitoringKind::Random);
    const Vec q = random_simplex(rng, 2);
    const std::vector<Vec> grid = default_y_grid(g);
    GridOracle oracle(g, grid);
    // Pick a threshold that makes the check pass with a small margin.
    const SaddleStep opt = one_shot_step(oracle, q, 0.0, default_config());
    const double threshold = opt.value + 0.01;
    const ConditionReport rep =
        one_shot_halfspace_modified(g, q, threshold, grid, 1e-6);
    REQUIRE(rep.verdict == Verdict::Approachable);
    REQUIRE(rep.witness_x.has_value());
    // Recheck the witness directly against every grid action.
    FiberCache cache(g);
    for (const Vec& y : grid) {
      const Vec corner = modified_payoff(cache, *rep.witness_x, y);
      CHECK(dot(q, corner) <= threshold + 1e-6);
    }
  }
}

TEST_CASE("primal orthant condition on the mirror game") {
  const GameSpec full = make_mirror_game();
  const GameSpec dark = with_dark_monitoring(full);
  const Vec a{0.0, 0.0};

  const ConditionReport ok = primal_condition_orthant(full, a);
  CHECK(approachable_side(ok.verdict));
  CHECK(ok.margin >= -1e-9);

  const ConditionReport bad = primal_condition_orthant(dark, a);
  CHECK(bad.verdict == Verdict::NotApproachable);
  REQUIRE(bad.separating_direction.has_value());
  // The balanced direction is rejected with value exactly one half.
  const ConditionReport balanced = one_shot_halfspace_modified(
      dark, {0.5, 0.5}, dot(Vec{0.5, 0.5}, a), default_y_grid(dark), 1e-6);
  CHECK(balanced.verdict == Verdict::NotApproachable);
  CHECK(-balanced.margin == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("generous orthants pass trivially") {
  Rng rng(9500);
  const GameSpec g = random_game(rng, 2, 2, 2, 2, MonitoringKind::Random);
  const double m = payoff_bound(g);
  const ConditionReport rep =
      primal_condition_orthant(g, {m + 1.0, m + 1.0});
  CHECK(approachable_side(rep.verdict));
}

TEST_CASE("primal and dual orthant conditions agree") {
  Rng rng(9600);
  for (int trial = 0; trial < 25; ++trial) {
    const MonitoringKind kind = trial % 3 == 0   ? MonitoringKind::Full
                                : trial % 3 == 1 ? MonitoringKind::Dark
                                                 : MonitoringKind::Random;
    const GameSpec g = random_game(rng, 2 + trial % 2, 2 + trial % 2, 2, 2,
                                   kind);
    const Vec a = aktest::random_point(rng, 2, -0.5, 0.5);
    const std::vector<Vec> y_grid = default_y_grid(g);
    const ConditionReport dual =
        dual_condition(g, TargetSet{Orthant{a}}, y_grid);
    const ConditionReport primal = primal_condition_orthant(
        g, a, default_q_grid(2), y_grid, default_config().condition_tol);
    CHECK(approachable_side(dual.verdict) ==
          approachable_side(primal.verdict));
    if (!approachable_side(dual.verdict)) {
      // Both margins witness the same worst flag up to solver noise.
      CHECK(primal.margin <= 1e-6);
    }
  }
}

TEST_CASE("orthant monotonicity") {
  Rng rng(9700);
  for (int trial = 0; trial < 10; ++trial) {
    const GameSpec g = random_game(rng, 2, 2, 2, 2, MonitoringKind::Random);
    const Vec a = aktest::random_point(rng, 2, -0.5, 0.5);
    Vec bigger = a;
    for (double& v : bigger) v += uniform_in(rng, 0.0, 0.5);
    const ConditionReport small = dual_condition(g, TargetSet{Orthant{a}});
    const ConditionReport large =
        dual_condition(g, TargetSet{Orthant{bigger}});
    if (approachable_side(small.verdict)) {
      CHECK(approachable_side(large.verdict));
    }
    CHECK(large.margin >= small.margin - 1e-9);
  }
}

TEST_CASE("subgradient saddle solver approximates the exact one") {
  Rng rng(9800);
  Config cfg;
  cfg.use_subgradient_saddle = true;
  for (int trial = 0; trial < 5; ++trial) {
    const GameSpec g = random_game(rng, 3, 2, 2, 2, MonitoringKind::Random);
    const Vec q = random_simplex(rng, 2);
    GridOracle exact_oracle(g, default_y_grid(g));
    const SaddleStep exact =
        one_shot_step(exact_oracle, q, 0.0, default_config());
    const SaddleStep approx = one_shot_step(exact_oracle, q, 0.0, cfg);
    CHECK(approx.value >= exact.value - 1e-9);  // exact is the minimum
    CHECK(approx.value <= exact.value + 0.1 * std::max(payoff_bound(g), 1.0));
  }
}
