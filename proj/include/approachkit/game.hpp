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

#ifndef APPROACHKIT_GAME_HPP_
#define APPROACHKIT_GAME_HPP_

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "approachkit/config.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/random.hpp"

namespace approachkit {

// A finite two-player vector-payoff game with a per-entry signal law. The
// single source of truth for payoffs and signals; immutable in practice.
struct GameSpec {
  std::vector<std::string> player_actions;
  std::vector<std::string> nature_actions;
  std::size_t dim = 0;
  std::vector<std::string> signals;
  std::vector<std::vector<Vec>> payoffs;     // [i][j] -> R^dim
  std::vector<std::vector<Vec>> signal_law;  // [i][j] -> distribution over signals

  std::size_t num_player_actions() const { return player_actions.size(); }
  std::size_t num_nature_actions() const { return nature_actions.size(); }
  std::size_t num_signals() const { return signals.size(); }

  const Vec& payoff(std::size_t i, std::size_t j) const {
    return payoffs.at(i).at(j);
  }
  const Vec& law(std::size_t i, std::size_t j) const {
    return signal_law.at(i).at(j);
  }
};

inline void validate_game(const GameSpec& g,
                          const Config& cfg = default_config()) {
  const std::size_t I = g.num_player_actions();
  const std::size_t J = g.num_nature_actions();
  const std::size_t S = g.num_signals();
  if (I < 1 || J < 1 || S < 1 || g.dim < 1) {
    throw std::invalid_argument("GameSpec: empty action/signal/payoff space");
  }
  if (g.payoffs.size() != I || g.signal_law.size() != I) {
    throw std::invalid_argument("GameSpec: tensor shape mismatch");
  }
  for (std::size_t i = 0; i < I; ++i) {
    if (g.payoffs[i].size() != J || g.signal_law[i].size() != J) {
      throw std::invalid_argument("GameSpec: tensor shape mismatch");
    }
    for (std::size_t j = 0; j < J; ++j) {
      if (g.payoffs[i][j].size() != g.dim) {
        throw std::invalid_argument("GameSpec: payoff dimension mismatch");
      }
      for (double v : g.payoffs[i][j]) {
        if (!std::isfinite(v)) {
          throw std::invalid_argument("GameSpec: non-finite payoff entry");
        }
      }
      if (g.signal_law[i][j].size() != S ||
          !is_simplex_vector(g.signal_law[i][j], cfg.distribution_tol)) {
        throw std::invalid_argument(
            "GameSpec: signal law entry is not a distribution");
      }
    }
  }
}

// The per-player-action vector of signal distributions induced by a Nature
// mixed action; the finest statistic the player can learn.
struct Flag {
  std::vector<Vec> per_action;  // [i] -> distribution over signals

  std::size_t num_player_actions() const { return per_action.size(); }
};

inline bool flags_close(const Flag& a, const Flag& b, double tol) {
  if (a.per_action.size() != b.per_action.size()) return false;
  for (std::size_t i = 0; i < a.per_action.size(); ++i) {
    if (a.per_action[i].size() != b.per_action[i].size()) return false;
    for (std::size_t s = 0; s < a.per_action[i].size(); ++s) {
      if (std::abs(a.per_action[i][s] - b.per_action[i][s]) > tol) return false;
    }
  }
  return true;
}

inline double flag_l1_distance(const Flag& a, const Flag& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.per_action.size(); ++i) {
    d += l1_norm(sub(a.per_action[i], b.per_action[i]));
  }
  return d;
}

struct RoundOutcome {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t signal = 0;
  Vec pure_payoff;   // r(i, j)
  Vec mixed_payoff;  // r(x, delta_j)
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// Bilinear extension sum_{i,j} x_i y_j r[i][j].
inline Vec payoff_mixed(const GameSpec& g, const Vec& x, const Vec& y) {
  if (x.size() != g.num_player_actions() ||
      y.size() != g.num_nature_actions()) {
    throw std::invalid_argument("payoff_mixed: dimension mismatch");
  }
  Vec out(g.dim, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0.0) continue;
      axpy(out, x[i] * y[j], g.payoffs[i][j]);
    }
  }
  return out;
}

// r(x, delta_j).
inline Vec payoff_vs_pure(const GameSpec& g, const Vec& x, std::size_t j) {
  Vec out(g.dim, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) axpy(out, x[i], g.payoffs[i][j]);
  }
  return out;
}

// r(delta_i, y).
inline Vec payoff_vs_pure_player(const GameSpec& g, std::size_t i,
                                 const Vec& y) {
  Vec out(g.dim, 0.0);
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] != 0.0) axpy(out, y[j], g.payoffs[i][j]);
  }
  return out;
}

inline Flag maximal_information(const GameSpec& g, const Vec& y) {
  if (y.size() != g.num_nature_actions()) {
    throw std::invalid_argument("maximal_information: dimension mismatch");
  }
  Flag flag;
  flag.per_action.assign(g.num_player_actions(), Vec(g.num_signals(), 0.0));
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0.0) axpy(flag.per_action[i], y[j], g.signal_law[i][j]);
    }
  }
  return flag;
}

// Uniform l2 bound M = max_{i,j} ||r(i,j)||.
inline double payoff_bound(const GameSpec& g) {
  double m = 0.0;
  for (const auto& row : g.payoffs) {
    for (const Vec& r : row) m = std::max(m, norm(r));
  }
  return m;
}

// Draw order is i, then j, then the signal; fixed so a seed pins the trace.
inline RoundOutcome sample_round(const GameSpec& g, const Vec& x, const Vec& y,
                                 Rng& rng) {
  check_simplex(x, "sample_round x");
  check_simplex(y, "sample_round y");
  RoundOutcome out;
  out.i = rng.categorical(x);
  out.j = rng.categorical(y);
  out.signal = rng.categorical(g.signal_law[out.i][out.j]);
  out.pure_payoff = g.payoffs[out.i][out.j];
  out.mixed_payoff = payoff_vs_pure(g, x, out.j);
  return out;
}

// ---------------------------------------------------------------------------
// Signal-structure rewrites. Full monitoring is encoded as a signal
// structure (signals = nature actions, law = delta_j), not a special path,
// so flags coincide with Nature's mixed action by construction.
// ---------------------------------------------------------------------------

inline GameSpec with_full_monitoring(GameSpec g) {
  const std::size_t J = g.num_nature_actions();
  g.signals = g.nature_actions;
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      g.signal_law[i][j] = basis_vector(J, j);
    }
  }
  return g;
}

inline GameSpec with_dark_monitoring(GameSpec g) {
  g.signals = {"none"};
  for (auto& row : g.signal_law) {
    for (Vec& law : row) law = Vec{1.0};
  }
  return g;
}

inline bool is_full_monitoring(const GameSpec& g, double tol = 1e-12) {
  const std::size_t J = g.num_nature_actions();
  if (g.num_signals() != J) return false;
  for (std::size_t i = 0; i < g.num_player_actions(); ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      for (std::size_t s = 0; s < J; ++s) {
        const double want = (s == j) ? 1.0 : 0.0;
        if (std::abs(g.signal_law[i][j][s] - want) > tol) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fingerprint for trace headers: FNV-1a over a canonical byte rendering.
// ---------------------------------------------------------------------------

namespace detail {

inline void fnv1a_mix(std::uint64_t& h, const char* data, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    h ^= static_cast<unsigned char>(data[k]);
    h *= 1099511628211ull;
  }
}

inline void fnv1a_mix(std::uint64_t& h, const std::string& s) {
  fnv1a_mix(h, s.data(), s.size());
  fnv1a_mix(h, "|", 1);
}

inline void fnv1a_mix(std::uint64_t& h, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g|", v);
  fnv1a_mix(h, buf, std::char_traits<char>::length(buf));
}

}  // namespace detail

inline std::uint64_t game_fingerprint(const GameSpec& g) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& s : g.player_actions) detail::fnv1a_mix(h, s);
  for (const auto& s : g.nature_actions) detail::fnv1a_mix(h, s);
  for (const auto& s : g.signals) detail::fnv1a_mix(h, s);
  detail::fnv1a_mix(h, static_cast<double>(g.dim));
  for (const auto& row : g.payoffs) {
    for (const Vec& r : row) {
      for (double v : r) detail::fnv1a_mix(h, v);
    }
  }
  for (const auto& row : g.signal_law) {
    for (const Vec& r : row) {
      for (double v : r) detail::fnv1a_mix(h, v);
    }
  }
  return h;
}

}  // namespace approachkit

#endif  // APPROACHKIT_GAME_HPP_
