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

#include "aflsim/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aflsim/rng.hpp"

namespace aflsim {

namespace {

// Stream tags so dataset generation, partitioning, and redraws never share
// generator state.
constexpr std::uint64_t kTagDataGen = 0x01;
constexpr std::uint64_t kTagPartition = 0x02;

void check_gen_args(std::size_t n, std::size_t d) {
  if (n == 0) throw std::invalid_argument("dataset needs at least one sample");
  if (d == 0) throw std::invalid_argument("dataset needs at least one feature");
}

// Draw order is fixed: hidden weights, then features row-major, then any
// per-row noise. This keeps features identical across noise settings.
Dataset gen_linear_base(std::size_t n, std::size_t d, Rng& rng) {
  Dataset data;
  data.rows = n;
  data.cols = d;
  data.true_weights.resize(d);
  data.true_bias = 5.0;
  for (auto& w : data.true_weights) w = rng.uniform(2.0, 4.0);
  data.features.resize(n * d);
  for (auto& f : data.features) f = rng.uniform(-5.0, 5.0);
  return data;
}

double clean_target(const Dataset& data, std::size_t i) {
  double acc = data.true_bias;
  const double* row = data.features.data() + i * data.cols;
  for (std::size_t k = 0; k < data.cols; ++k) acc += data.true_weights[k] * row[k];
  return acc;
}

// Cumulative rounding: shard c covers [round(n * P_{c-1}), round(n * P_c))
// of the shuffled order, so the sizes always sum to n exactly.
std::vector<std::size_t> boundaries_from_proportions(const std::vector<double>& p,
                                                     std::size_t n) {
  std::vector<std::size_t> bounds(p.size() + 1, 0);
  double cum = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    cum += p[c];
    bounds[c + 1] = static_cast<std::size_t>(std::llround(cum * static_cast<double>(n)));
  }
  bounds[p.size()] = n;
  for (std::size_t c = 1; c <= p.size(); ++c) bounds[c] = std::max(bounds[c], bounds[c - 1]);
  return bounds;
}

PartitionPlan try_partition(const Dataset& data, std::size_t clients, double zeta, Rng& rng) {
  PartitionPlan plan;
  plan.concentration = zeta;
  plan.shards.assign(clients, {});

  if (data.kind == TaskKind::kClassification) {
    // Label skew: split each class's indices by its own Dirichlet draw.
    for (double label : {-1.0, 1.0}) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < data.rows; ++i) {
        if (data.targets[i] == label) pool.push_back(i);
      }
      if (pool.empty()) continue;
      rng.shuffle(pool);
      const auto p = dirichlet_symmetric(zeta, clients, rng);
      const auto bounds = boundaries_from_proportions(p, pool.size());
      for (std::size_t c = 0; c < clients; ++c) {
        plan.shards[c].insert(plan.shards[c].end(), pool.begin() + bounds[c],
                              pool.begin() + bounds[c + 1]);
      }
    }
  } else {
    // Quantity skew: contiguous slices of a shuffled index vector.
    std::vector<std::size_t> pool(data.rows);
    for (std::size_t i = 0; i < data.rows; ++i) pool[i] = i;
    rng.shuffle(pool);
    const auto p = dirichlet_symmetric(zeta, clients, rng);
    const auto bounds = boundaries_from_proportions(p, pool.size());
    for (std::size_t c = 0; c < clients; ++c) {
      plan.shards[c].assign(pool.begin() + bounds[c], pool.begin() + bounds[c + 1]);
    }
  }
  return plan;
}

}  // namespace

Dataset gen_regression_data(std::size_t n, std::size_t d, std::uint64_t seed, double noise_std) {
  check_gen_args(n, d);
  Rng rng = Rng::derive(seed, {kTagDataGen, 0});
  Dataset data = gen_linear_base(n, d, rng);
  data.kind = TaskKind::kRegression;
  data.targets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.targets[i] = clean_target(data, i) + noise_std * rng.normal();
  }
  return data;
}

Dataset gen_classification_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  check_gen_args(n, d);
  Rng rng = Rng::derive(seed, {kTagDataGen, 1});
  Dataset data = gen_linear_base(n, d, rng);
  data.kind = TaskKind::kClassification;
  data.targets.resize(n);
  data.logits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.logits[i] = clean_target(data, i);
    data.targets[i] = data.logits[i] > 0.0 ? 1.0 : -1.0;
  }
  return data;
}

PartitionPlan dirichlet_partition(const Dataset& data, std::size_t clients, double zeta,
                                  std::uint64_t seed, std::size_t min_per_client) {
  if (clients == 0) throw std::invalid_argument("need at least one client");
  if (zeta <= 0.0) throw std::invalid_argument("dirichlet concentration must be positive");
  if (clients * min_per_client > data.rows) {
    throw std::invalid_argument("min_per_client infeasible for dataset size");
  }

  constexpr std::size_t kMaxRedraws = 100;
  for (std::size_t attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    Rng rng = Rng::derive(seed, {kTagPartition, attempt});
    PartitionPlan plan = try_partition(data, clients, zeta, rng);
    const bool ok = std::all_of(plan.shards.begin(), plan.shards.end(),
                                [&](const auto& s) { return s.size() >= min_per_client; });
    if (ok) return plan;
  }
  throw std::runtime_error("dirichlet partition redraw budget exhausted");
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.rows = indices.size();
  out.cols = data.cols;
  out.kind = data.kind;
  out.true_weights = data.true_weights;
  out.true_bias = data.true_bias;
  out.features.resize(out.rows * out.cols);
  out.targets.resize(out.rows);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = data.row(indices[i]);
    std::copy(src.begin(), src.end(), out.features.begin() + i * out.cols);
    out.targets[i] = data.targets[indices[i]];
  }
  return out;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (std::size_t k = 0; k < data.cols; ++k) out << 'f' << k << ',';
  out << "y\n";
  char buf[32];
  for (std::size_t i = 0; i < data.rows; ++i) {
    const auto row = data.row(i);
    for (double f : row) {
      std::snprintf(buf, sizeof buf, "%.17g", f);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", data.targets[i]);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Dataset read_dataset_csv(const std::string& path, TaskKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty dataset file " + path);
  const std::size_t cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',') );

  Dataset data;
  data.cols = cols;
  data.kind = kind;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() != cols + 1) throw std::runtime_error("ragged row in " + path);
    data.features.insert(data.features.end(), values.begin(), values.end() - 1);
    data.targets.push_back(values.back());
    ++data.rows;
  }
  return data;
}

}  // namespace aflsim
