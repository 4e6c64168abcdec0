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

#ifndef AFLSIM_DATA_HPP
#define AFLSIM_DATA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aflsim {

enum class TaskKind { kRegression, kClassification };

/// Dense row-major dataset. Classification targets are stored as -1/+1;
/// the raw logits used to assign labels are kept so labels stay
/// re-derivable from their signs.
struct Dataset {
  std::vector<double> features;  // rows * cols, row-major
  std::vector<double> targets;   // length rows
  std::size_t rows = 0;
  std::size_t cols = 0;
  TaskKind kind = TaskKind::kRegression;

  // Generator diagnostics.
  std::vector<double> true_weights;
  double true_bias = 0.0;
  std::vector<double> logits;  // classification only

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * cols, cols};
  }
};

/// Features U[-5,5]^{n x d}; hidden weights U[2,4]^d; targets
/// w* . x + 5 + N(0, noise_std^2). noise_std defaults to the reference
/// value 0.2; forcing it to 0 is a diagnostic hook that leaves the
/// features and weights unchanged.
Dataset gen_regression_data(std::size_t n, std::size_t d, std::uint64_t seed,
                            double noise_std = 0.2);

/// Features U[-5,5]^{n x d}; logit = w* . x + 5 with w* ~ U[2,4]^d; label
/// +1 when the logit is positive, else -1.
Dataset gen_classification_data(std::size_t n, std::size_t d, std::uint64_t seed);

/// Disjoint index shards covering the whole dataset, one per client.
struct PartitionPlan {
  std::vector<std::vector<std::size_t>> shards;
  double concentration = 0.0;
};

/// Non-IID Dirichlet split. Regression data is quantity-skewed (shard
/// sizes drawn from Dirichlet(zeta)); classification is label-skewed
/// (per-class Dirichlet proportions). Shards below min_per_client trigger
/// a redraw with a fresh sub-seed, at most 100 times.
PartitionPlan dirichlet_partition(const Dataset& data, std::size_t clients, double zeta,
                                  std::uint64_t seed, std::size_t min_per_client);

/// Materializes the rows of `indices` as a standalone dataset.
Dataset subset(const Dataset& data, std::span<const std::size_t> indices);

/// CSV with header f0,...,f{d-1},y and 17-significant-digit values.
void write_dataset_csv(const Dataset& data, const std::string& path);
Dataset read_dataset_csv(const std::string& path, TaskKind kind);

}  // namespace aflsim

#endif  // AFLSIM_DATA_HPP
