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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "approachkit/approachkit.hpp"

namespace ak = approachkit;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotApproachable = 2;

ak::Vec parse_vec(const std::string& text) {
  ak::Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<ak::Vec> parse_vec_list(const std::string& text) {
  std::vector<ak::Vec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_vec(item));
  }
  return out;
}

unsigned thread_budget() {
  if (const char* env = std::getenv("APPROACHKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : std::min(hc, 8u);
}

ak::GameSpec apply_monitoring(ak::GameSpec g, const std::string& mode) {
  if (mode == "full") return ak::with_full_monitoring(std::move(g));
  if (mode == "dark") return ak::with_dark_monitoring(std::move(g));
  return g;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit_report(const std::string& out_dir, const ak::ordered_json& report) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "report.json", report.dump(2) + "\n");
}

ak::ordered_json verdict_json(const ak::ConditionReport& rep) {
  ak::ordered_json j;
  j["verdict"] = ak::to_string(rep.verdict);
  j["margin"] = rep.margin;
  j["method"] = rep.method;
  if (rep.witness_x) j["witness_x"] = *rep.witness_x;
  if (rep.counter_y) j["counter_y"] = *rep.counter_y;
  if (rep.separating_direction) {
    j["separating_direction"] = *rep.separating_direction;
  }
  return j;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOptions {
  std::string game_path;
  std::string target_path;
  std::string monitoring = "spec";
  std::string out_dir;
  int grid = 0;  // 0: config default
};

ak::ordered_json base_run_config(const std::string& command,
                                 const CommonOptions& opt,
                                 const ak::Config& cfg) {
  ak::ordered_json j;
  j["command"] = command;
  j["game"] = opt.game_path;
  if (!opt.target_path.empty()) j["target"] = opt.target_path;
  j["monitoring"] = opt.monitoring;
  j["config"] = ak::config_to_json(cfg);
  return j;
}

int verdict_exit(const ak::ConditionReport& rep) {
  return ak::approachable_side(rep.verdict) ? kExitOk : kExitNotApproachable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approachkit: approachability checks and simulations for "
               "repeated vector-valued games with partial monitoring"};
  app.require_subcommand(1);

  ak::Config cfg;
  CommonOptions opt;
  double tol = cfg.condition_tol;
  std::uint64_t seed = 1;
  std::size_t horizon = 10000;
  std::size_t replications = 1;
  std::string strategy = "blackwell";
  std::string nature_kind = "best-response";
  std::string nature_y_text;
  std::string nature_script_text;
  std::string q_text;
  std::string p_text = "0,0.25,0.5,0.75,1";
  std::string games_path;
  int qgrid = 0;
  int ugrid = 64;

  auto add_common = [&](CLI::App* sub, bool with_target) {
    sub->add_option("--game", opt.game_path, "game JSON file")->required();
    if (with_target) {
      sub->add_option("--target", opt.target_path, "target-set JSON file")
          ->required();
    }
    sub->add_option("--monitoring", opt.monitoring,
                    "signal-structure override: spec, full, or dark")
        ->check(CLI::IsMember({"spec", "full", "dark"}));
    sub->add_option("--grid", opt.grid,
                    "denominator of the Nature action grid");
    sub->add_option("--tol", tol, "verdict tolerance");
    sub->add_option("--out", opt.out_dir, "directory for artifacts");
  };

  CLI::App* check_dual = app.add_subcommand(
      "check-dual", "flag-by-flag containment check of a target set");
  add_common(check_dual, true);

  CLI::App* check_primal = app.add_subcommand(
      "check-primal",
      "containing half-space sweep with surrogate payoffs (orthant or "
      "polytope targets)");
  add_common(check_primal, true);
  check_primal->add_option("--qgrid", qgrid,
                           "denominator of the direction grid");

  CLI::App* check_hs = app.add_subcommand(
      "check-halfspace", "one-shot value check of a half-space target");
  add_common(check_hs, true);

  CLI::App* urc = app.add_subcommand(
      "urc", "test whether compatible payoff sets contain their corners");
  add_common(urc, false);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run an approachability strategy and export traces");
  add_common(simulate, true);
  simulate->add_option("--strategy", strategy, "blackwell, flags, or blocks")
      ->check(CLI::IsMember({"blackwell", "flags", "blocks"}));
  simulate->add_option("--horizon", horizon, "number of rounds")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "base seed");
  simulate->add_option("--replications", replications, "independent runs")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--nature", nature_kind,
                       "fixed, best-response, or script")
      ->check(CLI::IsMember({"fixed", "best-response", "script"}));
  simulate->add_option("--nature-y", nature_y_text,
                       "mixed action for --nature fixed, e.g. 0.5,0.5");
  simulate->add_option("--nature-script", nature_script_text,
                       "semicolon-separated actions for --nature script");
  std::string block_lengths_text;
  std::string exploration_text;
  simulate->add_option("--block-lengths", block_lengths_text,
                       "custom block lengths for --strategy blocks");
  simulate->add_option("--exploration", exploration_text,
                       "custom exploration rates for --strategy blocks");

  CLI::App* lift = app.add_subcommand(
      "lift", "rewrite a polytope target as a lifted-game orthant");
  add_common(lift, true);
  lift->add_option("--q", q_text,
                   "direction for the hidden half-space report, e.g. 0.5,0.5");

  CLI::App* kohlberg = app.add_subcommand(
      "kohlberg",
      "embed simultaneous games: value grid, envelope, supporting vectors");
  kohlberg->add_option("--games", games_path, "simultaneous-games JSON file")
      ->required();
  kohlberg->add_option("--ugrid", ugrid, "belief grid denominator");
  kohlberg->add_option("--p", p_text, "beliefs for supporting vectors");
  kohlberg->add_option("--out", opt.out_dir, "directory for artifacts");
  kohlberg->add_option("--tol", tol, "verdict tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.condition_tol = tol;
    if (opt.grid > 0) cfg.grid_denominator = opt.grid;

    if (check_dual->parsed() || check_primal->parsed() || check_hs->parsed()) {
      const ak::GameSpec game =
          apply_monitoring(ak::load_game(opt.game_path, cfg), opt.monitoring);
      const ak::TargetSet target = ak::load_target(opt.target_path, cfg);
      ak::ConditionReport rep;
      std::string command;
      if (check_dual->parsed()) {
        command = "check-dual";
        rep = ak::dual_condition(game, target, cfg);
      } else if (check_hs->parsed()) {
        command = "check-halfspace";
        const auto* hs = std::get_if<ak::HalfSpace>(&target);
        if (hs == nullptr) {
          throw std::runtime_error("check-halfspace needs a halfspace target");
        }
        rep = ak::one_shot_halfspace(game, *hs, cfg);
      } else {
        command = "check-primal";
        ak::Config qcfg = cfg;
        if (qgrid > 0) qcfg.grid_denominator = qgrid;
        const ak::GameSpec* checked = &game;
        ak::Vec a;
        std::unique_ptr<ak::LiftedGame> lifted;
        if (const auto* orth = std::get_if<ak::Orthant>(&target)) {
          a = orth->a;
        } else if (const auto* poly = std::get_if<ak::Polytope>(&target)) {
          lifted = std::make_unique<ak::LiftedGame>(
              ak::lift_polytope(game, *poly, cfg));
          checked = &lifted->lifted;
          a.assign(poly->rows.size(), 0.0);
        } else {
          throw std::runtime_error(
              "check-primal needs an orthant or polytope target");
        }
        rep = ak::primal_condition_orthant(
            *checked, a, ak::default_q_grid(checked->dim, qcfg),
            ak::default_y_grid(*checked, cfg), cfg.condition_tol, cfg);
      }
      ak::ordered_json run_config = base_run_config(command, opt, cfg);
      run_config["game_hash"] = hex16(ak::game_fingerprint(game));
      ak::ordered_json report = verdict_json(rep);
      report["config"] = run_config;
      report["config_hash"] = ak::config_hash(run_config);
      std::cout << ak::to_string(rep.verdict) << " margin=" << rep.margin
                << "\n";
      emit_report(opt.out_dir, report);
      return verdict_exit(rep);
    }

    if (urc->parsed()) {
      const ak::GameSpec game =
          apply_monitoring(ak::load_game(opt.game_path, cfg), opt.monitoring);
      const ak::UrcReport rep = ak::has_urc_property(game, tol, cfg);
      ak::ordered_json run_config = base_run_config("urc", opt, cfg);
      run_config["game_hash"] = hex16(ak::game_fingerprint(game));
      ak::ordered_json report;
      report["holds"] = rep.holds;
      report["max_gap"] = rep.max_gap;
      if (rep.witness) {
        report["witness_x"] = rep.witness->x;
        report["witness_corner"] = rep.witness->corner;
        report["witness_gap"] = rep.witness->gap;
      }
      report["config"] = run_config;
      report["config_hash"] = ak::config_hash(run_config);
      std::cout << (rep.holds ? "corner property not falsified on grid"
                              : "corner property falsified")
                << " max_gap=" << rep.max_gap << "\n";
      emit_report(opt.out_dir, report);
      return rep.holds ? kExitOk : kExitNotApproachable;
    }

    if (simulate->parsed()) {
      const ak::GameSpec game =
          apply_monitoring(ak::load_game(opt.game_path, cfg), opt.monitoring);
      const ak::TargetSet target = ak::load_target(opt.target_path, cfg);

      auto make_nature = [&]() -> std::unique_ptr<ak::NaturePolicy> {
        if (nature_kind == "fixed") {
          if (nature_y_text.empty()) {
            throw std::runtime_error("--nature fixed requires --nature-y");
          }
          return ak::make_fixed_nature(parse_vec(nature_y_text));
        }
        if (nature_kind == "script") {
          if (nature_script_text.empty()) {
            throw std::runtime_error(
                "--nature script requires --nature-script");
          }
          return ak::make_script_nature(parse_vec_list(nature_script_text));
        }
        return ak::make_best_response_nature();
      };

      ak::ordered_json run_config = base_run_config("simulate", opt, cfg);
      run_config["game_hash"] = hex16(ak::game_fingerprint(game));
      run_config["strategy"] = strategy;
      run_config["nature"] = nature_kind;
      if (!nature_y_text.empty()) run_config["nature_y"] = nature_y_text;
      if (!nature_script_text.empty()) {
        run_config["nature_script"] = nature_script_text;
      }
      run_config["horizon"] = horizon;
      run_config["seed"] = seed;
      run_config["replications"] = replications;
      ak::BlockSchedule schedule = ak::default_block_schedule(horizon);
      if (!block_lengths_text.empty()) {
        schedule.lengths.clear();
        for (double v : parse_vec(block_lengths_text)) {
          schedule.lengths.push_back(static_cast<std::size_t>(v));
        }
        if (!exploration_text.empty()) {
          schedule.exploration = parse_vec(exploration_text);
        } else {
          schedule.exploration.resize(schedule.lengths.size());
          for (std::size_t b = 0; b < schedule.lengths.size(); ++b) {
            schedule.exploration[b] =
                std::pow(static_cast<double>(b + 2), -0.25);
          }
        }
        ak::validate_schedule(schedule);
      }
      if (strategy == "blocks") {
        run_config["block_lengths"] = schedule.lengths;
        run_config["exploration_rates"] = schedule.exploration;
      }
      const std::string run_hash = ak::config_hash(run_config);

      auto body = [&](std::uint64_t rep_seed) -> ak::Trace {
        auto nature = make_nature();
        if (strategy == "blackwell") {
          return ak::run_blackwell(game, target, *nature, horizon,
                                   ak::Rng(rep_seed), cfg);
        }
        const auto* orth = std::get_if<ak::Orthant>(&target);
        if (orth == nullptr) {
          throw std::runtime_error(
              "surrogate strategies need an orthant target (lift polytopes "
              "first)");
        }
        if (strategy == "flags") {
          return ak::run_observed_flags(game, orth->a, *nature, horizon,
                                        ak::Rng(rep_seed), cfg);
        }
        return ak::run_block_signals(game, orth->a, schedule, *nature,
                                     horizon, ak::Rng(rep_seed), cfg);
      };
      const std::vector<ak::Trace> traces =
          ak::run_replications(replications, seed, thread_budget(), body);

      const ak::ordered_json summary =
          ak::summarize_traces(traces, run_config);
      std::cout << "final dist";
      for (const ak::Trace& t : traces) std::cout << ' ' << t.final_dist();
      std::cout << "\n";
      if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        write_text(fs::path(opt.out_dir) / "config.json",
                   run_config.dump(2) + "\n");
        for (std::size_t k = 0; k < traces.size(); ++k) {
          char name[40];
          std::snprintf(name, sizeof(name), "trace_rep%03zu.csv", k);
          ak::write_trace_csv((fs::path(opt.out_dir) / name).string(),
                              traces[k], run_hash);
        }
        std::ofstream qout(fs::path(opt.out_dir) / "quantiles.csv",
                           std::ios::binary);
        ak::write_quantiles_csv(qout, ak::distance_quantiles(traces),
                                run_hash);
        write_text(fs::path(opt.out_dir) / "summary.json",
                   summary.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (lift->parsed()) {
      const ak::GameSpec game =
          apply_monitoring(ak::load_game(opt.game_path, cfg), opt.monitoring);
      const ak::TargetSet target = ak::load_target(opt.target_path, cfg);
      ak::Polytope poly;
      if (const auto* p = std::get_if<ak::Polytope>(&target)) {
        poly = *p;
      } else if (const auto* s = std::get_if<ak::SupportSampled>(&target)) {
        poly = ak::convex_to_polytope(
            *s, ak::default_direction_grid(game.dim, cfg), cfg);
      } else {
        throw std::runtime_error("lift needs a polytope or support target");
      }
      const ak::LiftedGame lg = ak::lift_polytope(game, poly, cfg);
      ak::ordered_json run_config = base_run_config("lift", opt, cfg);
      run_config["game_hash"] = hex16(ak::game_fingerprint(game));
      ak::ordered_json report;
      report["lifted_dim"] = lg.lifted.dim;
      if (!q_text.empty()) {
        const ak::HiddenHalfspaceReport demo =
            ak::hidden_halfspace_demo(lg, parse_vec(q_text), cfg);
        report["hidden_halfspace"] = {
            {"q", demo.q},
            {"base_sup", demo.base_sup},
            {"base_value", demo.base_value},
            {"lifted_value", demo.lifted_value},
            {"base_approachable", demo.base_approachable},
            {"lifted_approachable", demo.lifted_approachable},
            {"consistent", demo.consistent},
        };
        std::cout << "base value " << demo.base_value << ", lifted value "
                  << demo.lifted_value
                  << (demo.consistent ? " (consistent)" : " (hidden)")
                  << "\n";
      }
      report["config"] = run_config;
      report["config_hash"] = ak::config_hash(run_config);
      if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        ak::save_game((fs::path(opt.out_dir) / "lifted_game.json").string(),
                      lg.lifted);
        write_text(fs::path(opt.out_dir) / "lifted_target.json",
                   ak::target_to_json(lg.lifted_target()).dump(2) + "\n");
        write_text(fs::path(opt.out_dir) / "report.json",
                   report.dump(2) + "\n");
      }
      std::cout << "lifted game with " << lg.lifted.dim << " coordinates\n";
      return kExitOk;
    }

    if (kohlberg->parsed()) {
      const ak::SimultaneousGames games =
          ak::load_simultaneous(games_path, cfg);
      const ak::NRSet nr = ak::nr_vertices(games, cfg);
      const ak::GameSpec aux = ak::auxiliary_game(games, nr, cfg);
      if (aux.dim != 2) {
        throw std::runtime_error(
            "concavification implemented for two states only");
      }
      const ak::UrcReport urc_rep = ak::has_urc_property(aux, tol, cfg);
      const auto samples = ak::sample_u_grid(aux, ugrid, cfg);
      const ak::CavU cav = ak::concavify(samples);

      ak::ordered_json run_config;
      run_config["command"] = "kohlberg";
      run_config["games"] = games_path;
      run_config["ugrid"] = ugrid;
      run_config["p"] = p_text;
      run_config["config"] = ak::config_to_json(cfg);
      const std::string run_hash = ak::config_hash(run_config);

      ak::ordered_json report;
      report["non_revealing_vertices"] = nr.count();
      report["corner_property_holds"] = urc_rep.holds;
      ak::ordered_json ap_rows = ak::ordered_json::array();
      bool all_approachable = true;
      for (const double p : parse_vec(p_text)) {
        const ak::Vec a_p = ak::supporting_vector(cav, p);
        const ak::ConditionReport orth_rep =
            ak::primal_condition_orthant(aux, a_p, cfg);
        all_approachable =
            all_approachable && ak::approachable_side(orth_rep.verdict);
        ap_rows.push_back({{"p", p},
                           {"cav_u", cav(p)},
                           {"a_p", a_p},
                           {"orthant_verdict",
                            ak::to_string(orth_rep.verdict)}});
      }
      report["supporting_vectors"] = std::move(ap_rows);
      report["config"] = run_config;
      report["config_hash"] = run_hash;

      if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        std::ostringstream ucsv;
        ucsv << "p,u,config_hash\n";
        for (const auto& [p, u] : samples) {
          ucsv << format17(p) << ',' << format17(u) << ',' << run_hash << "\n";
        }
        write_text(fs::path(opt.out_dir) / "u_grid.csv", ucsv.str());
        std::ostringstream hcsv;
        hcsv << "p,cav_u,config_hash\n";
        for (std::size_t k = 0; k < cav.ps.size(); ++k) {
          hcsv << format17(cav.ps[k]) << ',' << format17(cav.us[k]) << ','
               << run_hash << "\n";
        }
        write_text(fs::path(opt.out_dir) / "cav_hull.csv", hcsv.str());
        std::ostringstream acsv;
        acsv << "p,cav_u,a_1,a_2,verdict,config_hash\n";
        for (const auto& row : report["supporting_vectors"]) {
          acsv << format17(row["p"].get<double>()) << ','
               << format17(row["cav_u"].get<double>()) << ','
               << format17(row["a_p"][0].get<double>()) << ','
               << format17(row["a_p"][1].get<double>()) << ','
               << row["orthant_verdict"].get<std::string>() << ',' << run_hash
               << "\n";
        }
        write_text(fs::path(opt.out_dir) / "ap_table.csv", acsv.str());
        write_text(fs::path(opt.out_dir) / "report.json",
                   report.dump(2) + "\n");
      }
      std::cout << "non-revealing vertices: " << nr.count()
                << ", corner property: "
                << (urc_rep.holds ? "holds" : "falsified")
                << ", supporting orthants "
                << (all_approachable ? "approachable" : "NOT approachable")
                << "\n";
      return all_approachable && urc_rep.holds ? kExitOk
                                               : kExitNotApproachable;
    }
  } catch (const ak::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
