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

#ifndef AFLSIM_TRAINER_HPP
#define AFLSIM_TRAINER_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aflsim/data.hpp"
#include "aflsim/model.hpp"
#include "aflsim/params.hpp"
#include "aflsim/rng.hpp"

namespace aflsim {

/// Raised when any parameter leaves [-1e12, 1e12] or turns non-finite
/// during local training. The coordinator re-throws with round context.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t epoch, std::size_t step)
      : std::runtime_error("divergence at epoch " + std::to_string(epoch) + ", step " +
                           std::to_string(step)),
        epoch(epoch),
        step(step) {}
  std::size_t epoch;
  std::size_t step;
};

struct LocalRunReport {
  ParamVector final_params;
  std::size_t steps_taken = 0;
  double final_local_loss = 0.0;
  std::vector<double> epoch_losses;  // mean training loss per epoch
};

/// Mini-batch SGD over `shard` (indices into `data`) for `epochs` epochs.
/// Each epoch reshuffles the shard without replacement; the last partial
/// batch is kept and averaged over its actual size. The learning rate is
/// constant for the whole run; the round-level schedule lives with the
/// coordinator. Pure given its inputs, so concurrent client runs are safe.
///
/// When `iterate_sink` is non-null it receives the parameters before each
/// update and after the last one (steps_taken + 1 entries), which the
/// drift diagnostics consume.
LocalRunReport local_sgd(const ParamVector& start, const Dataset& data,
                         std::span<const std::size_t> shard, const ModelKind& kind,
                         std::size_t epochs, std::size_t batch, double lr, Rng rng,
                         std::vector<ParamVector>* iterate_sink = nullptr);

/// Mean loss over a shard at fixed parameters.
double shard_loss(const ParamVector& p, const Dataset& data,
                  std::span<const std::size_t> shard, const ModelKind& kind);

/// Batch-mean (sub)gradient over a shard at fixed parameters (data term
/// plus the L2 term).
ParamVector shard_grad(const ParamVector& p, const Dataset& data,
                       std::span<const std::size_t> shard, const ModelKind& kind);

}  // namespace aflsim

#endif  // AFLSIM_TRAINER_HPP
