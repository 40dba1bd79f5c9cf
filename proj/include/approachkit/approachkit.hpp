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

#ifndef APPROACHKIT_APPROACHKIT_HPP_
#define APPROACHKIT_APPROACHKIT_HPP_

#include "approachkit/conditions.hpp"
#include "approachkit/config.hpp"
#include "approachkit/game.hpp"
#include "approachkit/geometry.hpp"
#include "approachkit/io.hpp"
#include "approachkit/kohlberg.hpp"
#include "approachkit/lifting.hpp"
#include "approachkit/lp.hpp"
#include "approachkit/monitoring.hpp"
#include "approachkit/random.hpp"
#include "approachkit/strategies.hpp"

#endif  // APPROACHKIT_APPROACHKIT_HPP_
