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

#include "aflsim/trainer.hpp"

#include <cmath>

namespace aflsim {

namespace {

constexpr double kDivergenceCap = 1e12;

bool within_cap(const ParamVector& p) {
  if (!(std::fabs(p.bias) <= kDivergenceCap)) return false;
  for (double w : p.weights) {
    if (!(std::fabs(w) <= kDivergenceCap)) return false;
  }
  return true;
}

}  // namespace

LocalRunReport local_sgd(const ParamVector& start, const Dataset& data,
                         std::span<const std::size_t> shard, const ModelKind& kind,
                         std::size_t epochs, std::size_t batch, double lr, Rng rng,
                         std::vector<ParamVector>* iterate_sink) {
  if (shard.empty()) throw std::invalid_argument("cannot train on an empty shard");
  if (epochs == 0) throw std::invalid_argument("need at least one epoch");
  if (batch == 0) throw std::invalid_argument("batch size must be positive");
  if (lr < 0.0) throw std::invalid_argument("learning rate cannot be negative");

  const std::size_t d = start.dim();
  LocalRunReport report;
  report.final_params = start;
  report.epoch_losses.reserve(epochs);

  std::vector<std::size_t> order(shard.begin(), shard.end());
  std::vector<double> grad_w(d);
  ParamVector& p = report.final_params;

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t step = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch, ++step) {
      const std::size_t end = std::min(begin + batch, order.size());
      const double inv = 1.0 / static_cast<double>(end - begin);
      std::fill(grad_w.begin(), grad_w.end(), 0.0);
      double grad_b = 0.0;
      if (iterate_sink) iterate_sink->push_back(p);
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t idx = order[i];
        epoch_loss += sample_loss(kind, p, data.row(idx), data.targets[idx]);
        accumulate_data_grad(kind, p, data.row(idx), data.targets[idx], grad_w, grad_b);
      }
      for (std::size_t k = 0; k < d; ++k) {
        p.weights[k] -= lr * (grad_w[k] * inv + kind.l2_mu * p.weights[k]);
      }
      p.bias -= lr * grad_b * inv;
      ++report.steps_taken;
      if (!p.all_finite() || !within_cap(p)) throw DivergenceError(epoch, step);
    }
    report.epoch_losses.push_back(epoch_loss / static_cast<double>(order.size()));
  }

  if (iterate_sink) iterate_sink->push_back(p);
  report.final_local_loss = report.epoch_losses.back();
  return report;
}

double shard_loss(const ParamVector& p, const Dataset& data,
                  std::span<const std::size_t> shard, const ModelKind& kind) {
  if (shard.empty()) throw std::invalid_argument("loss over an empty shard");
  double acc = 0.0;
  for (std::size_t idx : shard) acc += sample_loss(kind, p, data.row(idx), data.targets[idx]);
  return acc / static_cast<double>(shard.size());
}

ParamVector shard_grad(const ParamVector& p, const Dataset& data,
                       std::span<const std::size_t> shard, const ModelKind& kind) {
  if (shard.empty()) throw std::invalid_argument("gradient over an empty shard");
  std::vector<double> grad_w(p.dim(), 0.0);
  double grad_b = 0.0;
  for (std::size_t idx : shard) {
    accumulate_data_grad(kind, p, data.row(idx), data.targets[idx], grad_w, grad_b);
  }
  const double inv = 1.0 / static_cast<double>(shard.size());
  ParamVector g(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) g.weights[k] = grad_w[k] * inv + kind.l2_mu * p.weights[k];
  g.bias = grad_b * inv;
  return g;
}

}  // namespace aflsim
