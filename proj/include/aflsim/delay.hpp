/*
 * Copyright (c) 2026, the aflsim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AFLSIM_DELAY_HPP
#define AFLSIM_DELAY_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aflsim/rng.hpp"

namespace aflsim {

/// Two distinct delay notions are kept separate on purpose: model
/// staleness is an integer age in rounds (which snapshot a client reads,
/// bounded by staleness_max), while execution delay is real-valued
/// seconds (what feeds the round spread and the learning-rate schedule).
struct DelayModel {
  enum class Mode { kSimulated, kWallclock };
  Mode mode = Mode::kSimulated;
  double base_mean = 1.0;   // seconds
  double jitter = 0.25;     // seconds, uniform half-width
  std::size_t staleness_max = 0;
};

/// Fixed per-client hardware factors, U[0.5, 1.5], drawn once per
/// experiment from the master seed.
std::vector<double> draw_client_scales(std::size_t clients, std::uint64_t master_seed);

/// max(0, base_mean * scale_c + U[-jitter, +jitter]); deterministic given
/// the per-(client, round) stream.
double sample_delay(const DelayModel& model, double scale_c, Rng& rng);

/// tau_t = max - min over the round's recorded delays. Throws on empty.
double round_delay_spread(std::span<const std::pair<int, double>> delays);

/// gamma_t = gamma0 / (sqrt(t + 1) * (1 + alpha * tau_t))
struct LrSchedule {
  double gamma0 = 1e-3;
  double alpha = 0.0;  // in [0, 1]
};

double delay_adjusted_lr(const LrSchedule& schedule, std::size_t t, double tau_t);

/// Integer staleness uniform on {0, ..., min(staleness_max, round)}.
std::size_t sample_staleness(const DelayModel& model, std::size_t round, Rng& rng);

}  // namespace aflsim

#endif  // AFLSIM_DELAY_HPP
