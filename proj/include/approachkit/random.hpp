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

#ifndef APPROACHKIT_RANDOM_HPP_
#define APPROACHKIT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>

#include "approachkit/geometry.hpp"

namespace approachkit {

// Seeded mt19937_64 with hand-rolled draws. The standard pins the engine's
// output sequence, and we avoid std::*_distribution (whose mappings are
// implementation-defined), so traces are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Index drawn proportionally to `weights` (nonnegative, roughly summing
  // to one; renormalized defensively).
  std::size_t categorical(const Vec& weights) {
    if (weights.empty()) {
      throw std::invalid_argument("Rng::categorical: empty weights");
    }
    double total = 0.0;
    for (double w : weights) total += std::max(w, 0.0);
    if (total <= 0.0) {
      throw std::invalid_argument("Rng::categorical: zero total mass");
    }
    const double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
      acc += std::max(weights[k], 0.0);
      if (u < acc) return k;
    }
    return weights.size() - 1;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace approachkit

#endif  // APPROACHKIT_RANDOM_HPP_
