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
using aktest::orthant_projection_oracle;
using aktest::random_point;
using aktest::random_simplex;
using aktest::random_unit;
using aktest::uniform_in;

TEST_CASE("orthant projection clips coordinates") {
  CHECK(project_orthant({1.0, 1.0}, {0.0, 0.0}) == Vec{0.0, 0.0});
  CHECK(project_orthant({-1.0, -1.0}, {0.0, 0.0}) == Vec{-1.0, -1.0});
  CHECK(project_orthant({0.5, -0.3}, {0.0, 0.0}) == Vec{0.0, -0.3});
  CHECK_THROWS_AS(project_orthant({1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("orthant projection matches a coordinatewise search oracle") {
  Rng rng(20260);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const Vec p = random_point(rng, d, -2.0, 2.0);
    const Vec a = random_point(rng, d, -1.0, 1.0);
    const Vec got = project_orthant(p, a);
    const Vec want = orthant_projection_oracle(p, a);
    for (std::size_t k = 0; k < d; ++k) {
      CHECK(got[k] == Catch::Approx(want[k]).margin(1e-6));
    }
  }
}

TEST_CASE("orthant distance") {
  CHECK(dist_orthant({3.0, 4.0}, {0.0, 0.0}) == Catch::Approx(5.0));
  CHECK(dist_orthant({0.25, 0.125}, {0.25, 0.125}) == 0.0);
  // Points on the segment (t, 1 - t) stay at least 1/sqrt(2) away from the
  // negative orthant.
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    CHECK(dist_orthant({t, 1.0 - t}, {0.0, 0.0}) >=
          1.0 / std::sqrt(2.0) - 1e-12);
  }
}

TEST_CASE("orthant distance is monotone and consistent with the projection") {
  Rng rng(7341);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const Vec p = random_point(rng, d, -2.0, 2.0);
    const Vec a = random_point(rng, d, -1.0, 1.0);
    CHECK(dist_orthant(p, a) ==
          Catch::Approx(distance(p, project_orthant(p, a))).margin(1e-12));
    Vec bigger = p;
    for (double& v : bigger) v += uniform_in(rng, 0.0, 0.5);
    CHECK(dist_orthant(bigger, a) >= dist_orthant(p, a) - 1e-12);
  }
}

TEST_CASE("half-space projection closed form") {
  const HalfSpace hs{{1.0, 0.0}, 1.0};
  CHECK(project_halfspace({2.0, 0.0}, hs) == Vec{1.0, 0.0});
  CHECK(project_halfspace({0.5, 3.0}, hs) == Vec{0.5, 3.0});
}

TEST_CASE("polytope projection via alternating projections") {
  const Polytope box{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}},
                     {1.0, 1.0, 1.0, 1.0}};
  const Vec proj = project_polytope({2.0, 2.0}, box);
  CHECK(proj[0] == Catch::Approx(1.0).margin(1e-7));
  CHECK(proj[1] == Catch::Approx(1.0).margin(1e-7));

  // Brute-force grid oracle on the box.
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec p = random_point(rng, 2, -3.0, 3.0);
    const Vec got = project_polytope(p, box);
    double best = kInf;
    Vec best_point(2, 0.0);
    for (int gx = 0; gx <= 200; ++gx) {
      for (int gy = 0; gy <= 200; ++gy) {
        const Vec z{-1.0 + gx / 100.0, -1.0 + gy / 100.0};
        const double dd = distance(z, p);
        if (dd < best) {
          best = dd;
          best_point = z;
        }
      }
    }
    CHECK(distance(p, got) <= best + 1e-2);
    CHECK(max_violation(got, box) <= 1e-7);
  }
}

TEST_CASE("projection onto general targets") {
  const TargetSet inside{Orthant{{0.0, 0.0}}};
  CHECK(project_target({-0.5, -0.25}, inside) == Vec{-0.5, -0.25});

  const TargetSet hs{HalfSpace{{1.0, 0.0}, 1.0}};
  CHECK(project_target({2.0, 0.0}, hs) == Vec{1.0, 0.0});
}

TEST_CASE("projection idempotence and the variational inequality") {
  Rng rng(4242);
  const Polytope box{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                      {1.0, 1.0}},
                     {1.0, 1.0, 1.0, 1.0, 1.5}};
  std::vector<TargetSet> targets = {
      TargetSet{Orthant{{0.25, -0.5}}},
      TargetSet{HalfSpace{{1.0, 2.0}, 0.5}},
      TargetSet{box},
      TargetSet{SupportSampled{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0},
                                {0.0, -1.0}},
                               {1.0, 1.0, 1.0, 1.0}}},
  };
  for (const TargetSet& target : targets) {
    for (int trial = 0; trial < 25; ++trial) {
      const Vec p = random_point(rng, 2, -3.0, 3.0);
      const Vec pi = project_target(p, target);
      const Vec pi2 = project_target(pi, target);
      CHECK(distance(pi, pi2) <= 1e-7);
      // <p - pi, z - pi> <= tol for points z of the target.
      for (int zt = 0; zt < 100; ++zt) {
        Vec z = project_target(random_point(rng, 2, -3.0, 3.0), target);
        CHECK(dot(sub(p, pi), sub(z, pi)) <= 1e-7);
      }
    }
  }
}

TEST_CASE("dykstra reports non-convergence with its best iterate") {
  Config cfg;
  cfg.dykstra_max_sweeps = 1;
  cfg.projection_tol = 1e-16;
  const Polytope wedge{{{1.0, 1.0}, {-1.0, 1.0}}, {0.0, 0.0}};
  try {
    project_polytope({0.0, 5.0}, wedge, cfg);
    FAIL("expected ProjectionError");
  } catch (const ProjectionError& e) {
    CHECK(e.best_iterate.size() == 2);
    CHECK(e.residual >= 0.0);
  }
}

TEST_CASE("support value of point clouds") {
  const std::vector<Vec> single{{0.0, 0.0}};
  CHECK(support_value(single, {1.0, 0.0}) == 0.0);

  const std::vector<Vec> pair{{1.0, 0.0}, {0.0, 1.0}};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(support_value(pair, {inv_sqrt2, inv_sqrt2}) ==
        Catch::Approx(inv_sqrt2));
  CHECK_THROWS_AS(support_value(std::vector<Vec>{}, {1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("support function properties on random clouds") {
  Rng rng(515);
  const DirectionGrid grid = make_direction_grid(2, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 6;
    std::vector<Vec> cloud;
    double bound = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      cloud.push_back(random_point(rng, 2, -1.5, 1.5));
      bound = std::max(bound, norm(cloud.back()));
    }
    // Boundedness: |phi(s)| <= C on every direction.
    for (const Vec& s : grid.directions) {
      CHECK(std::abs(support_value(cloud, s)) <= bound + 1e-12);
    }
    // Lipschitz in the direction with constant C.
    for (std::size_t i = 0; i < grid.directions.size(); ++i) {
      const Vec& s1 = grid.directions[i];
      const Vec& s2 = grid.directions[(i + 7) % grid.directions.size()];
      CHECK(std::abs(support_value(cloud, s1) - support_value(cloud, s2)) <=
            bound * distance(s1, s2) + 1e-7);
    }
    // Monotone under cloud inclusion.
    std::vector<Vec> bigger = cloud;
    bigger.push_back(random_point(rng, 2, -1.5, 1.5));
    for (const Vec& s : grid.directions) {
      CHECK(support_value(cloud, s) <= support_value(bigger, s) + 1e-12);
    }
    // Minkowski combination: phi_{g C + C'} = g phi_C + phi_{C'}.
    const double gamma = uniform_in(rng, 0.0, 2.0);
    std::vector<Vec> other;
    for (int i = 0; i < 3; ++i) other.push_back(random_point(rng, 2, -1, 1));
    std::vector<Vec> mink;
    for (const Vec& cpt : cloud) {
      for (const Vec& opt : other) {
        mink.push_back(add(scaled(cpt, gamma), opt));
      }
    }
    for (const Vec& s : grid.directions) {
      CHECK(support_value(mink, s) ==
            Catch::Approx(gamma * support_value(cloud, s) +
                          support_value(other, s))
                .margin(1e-9));
    }
  }
}

TEST_CASE("direction grids") {
  const DirectionGrid d2 = make_direction_grid(2, 64);
  REQUIRE(d2.count() == 64);
  for (const Vec& s : d2.directions) {
    CHECK(norm(s) == Catch::Approx(1.0).margin(1e-9));
  }
  // Equally spaced angles.
  const double angle0 = std::atan2(d2.directions[0][1], d2.directions[0][0]);
  const double angle1 = std::atan2(d2.directions[1][1], d2.directions[1][0]);
  CHECK(angle1 - angle0 == Catch::Approx(2.0 * std::numbers::pi / 64));

  const DirectionGrid d3 = make_direction_grid(3, 26);
  CHECK(d3.count() == 26);
  for (const Vec& s : d3.directions) {
    CHECK(norm(s) == Catch::Approx(1.0).margin(1e-9));
  }
  CHECK_THROWS_AS(make_direction_grid(5, 10), std::invalid_argument);
}

TEST_CASE("simplex helpers") {
  CHECK(is_simplex_vector({0.5, 0.5}));
  CHECK(is_simplex_vector({1.0}));
  CHECK_FALSE(is_simplex_vector({0.6, 0.6}));
  CHECK_FALSE(is_simplex_vector({-0.1, 1.1}));
  CHECK(simplex_grid(2, 32).size() == 33);
  CHECK(simplex_grid(3, 32).size() == simplex_grid_size(3, 32));
  for (const Vec& w : simplex_grid(3, 8)) {
    CHECK(is_simplex_vector(w, 1e-12));
  }
  CHECK(adaptive_grid_denominator(2, 32, 2048) == 32);
  CHECK(adaptive_grid_denominator(9, 32, 500) < 32);
}

TEST_CASE("simplex projection") {
  Rng rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Vec v = random_point(rng, n, -2.0, 2.0);
    const Vec p = project_simplex(v);
    CHECK(is_simplex_vector(p, 1e-9));
    // Variational inequality against random simplex points.
    const Vec z = random_simplex(rng, n);
    CHECK(dot(sub(v, p), sub(z, p)) <= 1e-9);
  }
}
