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

#ifndef AFLSIM_PARAMS_HPP
#define AFLSIM_PARAMS_HPP

#include <cstddef>
#include <deque>
#include <span>
#include <utility>
#include <vector>

namespace aflsim {

/// Flat linear-model parameters: a weight vector plus a scalar bias.
/// All arithmetic is 64-bit and accumulates left to right, so identical
/// inputs produce bit-identical outputs.
struct ParamVector {
  std::vector<double> weights;
  double bias = 0.0;

  ParamVector() = default;
  explicit ParamVector(std::size_t dim) : weights(dim, 0.0) {}
  ParamVector(std::vector<double> w, double b) : weights(std::move(w)), bias(b) {}

  std::size_t dim() const { return weights.size(); }
  bool all_finite() const;
  bool operator==(const ParamVector& other) const = default;
};

/// Elementwise arithmetic mean. Throws std::invalid_argument on an empty
/// sequence ("nothing to aggregate") or on a dimension mismatch.
ParamVector average_params(std::span<const ParamVector> vectors);

/// y + alpha * x. Throws std::invalid_argument on dimension mismatch.
ParamVector axpy(double alpha, const ParamVector& x, const ParamVector& y);

double squared_distance(const ParamVector& a, const ParamVector& b);

/// Ring buffer of the most recent global models, capacity stale_max + 1.
/// lookup(age) returns the model `age` rounds old (age 0 = newest).
class GlobalModelHistory {
 public:
  explicit GlobalModelHistory(std::size_t stale_max) : capacity_(stale_max + 1) {}

  void push(std::size_t round, ParamVector model);
  /// Throws std::out_of_range when no snapshot of that age is retained.
  const ParamVector& lookup(std::size_t age) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t newest_round() const;

 private:
  std::size_t capacity_;
  std::deque<std::pair<std::size_t, ParamVector>> entries_;  // front = newest
};

/// Per-round metrics recorded by the coordinator. `delays` is sorted by
/// client id; tau_t = max(delays) - min(delays).
struct RoundRecord {
  std::size_t round = 0;
  double server_loss = 0.0;
  std::vector<int> selected;                    // sorted ascending
  std::vector<std::pair<int, double>> delays;   // (client id, seconds), sorted by id
  double tau_t = 0.0;
  double gamma_t = 0.0;
};

}  // namespace aflsim

#endif  // AFLSIM_PARAMS_HPP
