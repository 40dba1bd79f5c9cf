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

#ifndef APPROACHKIT_CONFIG_HPP_
#define APPROACHKIT_CONFIG_HPP_

namespace approachkit {

// Every tolerance and iteration cap used by the library lives here, so a
// run is fully described by (inputs, seed, Config).
struct Config {
  // Simplex vectors and probability distributions.
  double simplex_sum_tol = 1e-9;        // |sum(w) - 1| allowed
  double distribution_tol = 1e-9;       // signal-law rows

  // Geometry.
  double unit_norm_tol = 1e-9;          // direction-grid entries
  double projection_tol = 1e-8;         // Dykstra stopping rule
  int dykstra_max_sweeps = 10000;

  // Linear programming.
  double lp_feasibility_tol = 1e-9;
  double lp_optimality_tol = 1e-9;
  double lp_compare_tol = 1e-7;         // reported comparisons

  // Partial-monitoring oracles.
  double fiber_vertex_tol = 1e-7;       // vertex dedup / membership
  double flag_compare_tol = 1e-7;
  double flag_repair_tol = 1e-6;        // max l1 defect repaired silently
  int fiber_vertex_max_actions = 10;    // vertex enumeration gate on J
  int nr_vertex_max_vars = 12;          // gate on d*J for non-revealing sets

  // Condition checkers.
  double condition_tol = 1e-6;
  int grid_denominator = 32;            // simplex grids: points with this denominator
  int grid_max_points = 2048;           // shrink denominator if the grid would exceed this
  int urc_grid_points = 21;             // per-dimension grid for the corner-property test
  int subgradient_iterations = 2000;    // alternative saddle solver
  bool use_subgradient_saddle = false;  // default is the exact cutting plane
  int cutting_plane_max_rounds = 256;

  // Direction grids for support-function lifts.
  int directions_2d = 64;
  int directions_3d = 26;
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

}  // namespace approachkit

#endif  // APPROACHKIT_CONFIG_HPP_
