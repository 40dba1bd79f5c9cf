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

#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "testsupport.hpp"

using namespace approachkit;
using aktest::make_mirror_game;

namespace {
const std::string kData = APPROACHKIT_DATA_DIR;
}

TEST_CASE("game JSON round-trips exactly") {
  const GameSpec g = load_game(kData + "/ce1.json");
  CHECK(g.num_player_actions() == 2);
  CHECK(g.dim == 2);
  CHECK(g.payoffs[0][1] == Vec{1.0, -1.0});
  CHECK(is_full_monitoring(g));

  const ordered_json first = game_to_json(g);
  const GameSpec reloaded = game_from_json(first);
  const ordered_json second = game_to_json(reloaded);
  CHECK(first.dump() == second.dump());          // canonical field order
  CHECK(reloaded.payoffs == g.payoffs);          // values preserved exactly
  CHECK(game_fingerprint(reloaded) == game_fingerprint(g));
}

TEST_CASE("parse errors carry line and column") {
  const std::string bad = "{\n  \"player_actions\": [\"T\",\n}";
  try {
    parse_json_text(bad, "inline");
    FAIL("expected JsonError");
  } catch (const JsonError& e) {
    CHECK(e.line == 3);
    CHECK(e.column >= 1);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("malformed games are rejected on load") {
  ordered_json j = game_to_json(make_mirror_game());
  j["signal_law"][0][0] = {0.5, 0.6};
  CHECK_THROWS_AS(game_from_json(j), std::invalid_argument);
}

TEST_CASE("target JSON round-trips for every variant") {
  const std::vector<std::string> files = {
      kData + "/orth00.json", kData + "/interval_polytope.json",
      kData + "/octagon_support.json"};
  for (const std::string& file : files) {
    const TargetSet t = load_target(file);
    const ordered_json j1 = target_to_json(t);
    const TargetSet t2 = target_from_json(j1);
    CHECK(target_to_json(t2).dump() == j1.dump());
    CHECK(t2.index() == t.index());
  }
  const TargetSet hs = target_from_json(ordered_json{
      {"type", "halfspace"}, {"a", {1.0, 1.0}}, {"b", 0.25}});
  CHECK(std::holds_alternative<HalfSpace>(hs));
  CHECK_THROWS(target_from_json(ordered_json{{"type", "ball"}}));
}

TEST_CASE("simultaneous games JSON") {
  const SimultaneousGames games =
      load_simultaneous(kData + "/kohlberg_two_states.json");
  CHECK(games.count() == 2);
  CHECK(games.num_player_actions() == 2);
  const ordered_json j1 = simultaneous_to_json(games);
  const SimultaneousGames again = simultaneous_from_json(j1);
  CHECK(simultaneous_to_json(again).dump() == j1.dump());
}

TEST_CASE("trace CSV is byte-stable and carries the run hash") {
  const GameSpec g = make_mirror_game();
  const TargetSet orthant{Orthant{{0.0, 0.0}}};
  auto nature = make_best_response_nature();
  const Trace trace = run_blackwell(g, orthant, *nature, 50, Rng(9));
  std::ostringstream a, b;
  write_trace_csv(a, trace, "deadbeef00000000");
  write_trace_csv(b, trace, "deadbeef00000000");
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("n,dist,dist_R,", 0) == 0);
  CHECK(a.str().find("deadbeef00000000") != std::string::npos);
  // One data line per round plus the header.
  std::size_t lines = 0;
  for (char c : a.str()) lines += c == '\n';
  CHECK(lines == 51);
}

TEST_CASE("single-trace quantiles reproduce the trace") {
  const GameSpec g = make_mirror_game();
  const TargetSet orthant{Orthant{{0.0, 0.0}}};
  auto nature = make_best_response_nature();
  const Trace trace = run_blackwell(g, orthant, *nature, 40, Rng(10));
  const auto rows = distance_quantiles({trace});
  REQUIRE(rows.size() == 40);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CHECK(rows[r].min == trace.rows[r].dist);
    CHECK(rows[r].median == trace.rows[r].dist);
    CHECK(rows[r].max == trace.rows[r].dist);
  }
}

TEST_CASE("summaries embed the producing configuration") {
  const GameSpec g = make_mirror_game();
  const TargetSet orthant{Orthant{{0.0, 0.0}}};
  auto body = [&](std::uint64_t seed) {
    auto nature = make_best_response_nature();
    return run_blackwell(g, orthant, *nature, 100, Rng(seed));
  };
  const std::vector<Trace> traces = run_replications(4, 70, 2, body);
  ordered_json run_config;
  run_config["command"] = "simulate";
  run_config["config"] = config_to_json(default_config());
  const ordered_json summary = summarize_traces(traces, run_config);
  CHECK(summary["replications"] == 4);
  CHECK(summary["config_hash"] == config_hash(run_config));
  CHECK(summary["final_dist"].size() == 4);
  for (const auto& v : summary["condition_violations"]) {
    CHECK(v.get<std::size_t>() == 0);
  }
  // Hash changes when the config changes.
  ordered_json other = run_config;
  other["seed"] = 71;
  CHECK(config_hash(other) != config_hash(run_config));
}
