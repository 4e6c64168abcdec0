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

#include "aflsim/delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aflsim {

namespace {
constexpr std::uint64_t kTagClientScale = 0x03;
}

std::vector<double> draw_client_scales(std::size_t clients, std::uint64_t master_seed) {
  std::vector<double> scales(clients);
  for (std::size_t c = 0; c < clients; ++c) {
    Rng rng = Rng::derive(master_seed, {kTagClientScale, c});
    scales[c] = rng.uniform(0.5, 1.5);
  }
  return scales;
}

double sample_delay(const DelayModel& model, double scale_c, Rng& rng) {
  const double noise = model.jitter == 0.0 ? 0.0 : rng.uniform(-model.jitter, model.jitter);
  return std::max(0.0, model.base_mean * scale_c + noise);
}

double round_delay_spread(std::span<const std::pair<int, double>> delays) {
  if (delays.empty()) throw std::invalid_argument("delay spread of an empty round");
  double lo = delays.front().second;
  double hi = lo;
  for (const auto& [id, d] : delays) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

double delay_adjusted_lr(const LrSchedule& schedule, std::size_t t, double tau_t) {
  if (tau_t < 0.0) throw std::invalid_argument("delay spread cannot be negative");
  return schedule.gamma0 /
         (std::sqrt(static_cast<double>(t) + 1.0) * (1.0 + schedule.alpha * tau_t));
}

std::size_t sample_staleness(const DelayModel& model, std::size_t round, Rng& rng) {
  const std::size_t bound = std::min(model.staleness_max, round);
  if (bound == 0) return 0;
  return static_cast<std::size_t>(rng.uniform_int(bound + 1));
}

}  // namespace aflsim
