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

#include "aflsim/params.hpp"

#include <cmath>
#include <stdexcept>

namespace aflsim {

bool ParamVector::all_finite() const {
  if (!std::isfinite(bias)) return false;
  for (double w : weights) {
    if (!std::isfinite(w)) return false;
  }
  return true;
}

ParamVector average_params(std::span<const ParamVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("nothing to aggregate");
  const std::size_t d = vectors.front().dim();
  ParamVector sum(d);
  for (const ParamVector& v : vectors) {
    if (v.dim() != d) throw std::invalid_argument("parameter dimension mismatch in aggregation");
    for (std::size_t k = 0; k < d; ++k) sum.weights[k] += v.weights[k];
    sum.bias += v.bias;
  }
  const double inv = 1.0 / static_cast<double>(vectors.size());
  for (double& w : sum.weights) w *= inv;
  sum.bias *= inv;
  return sum;
}

ParamVector axpy(double alpha, const ParamVector& x, const ParamVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("parameter dimension mismatch in axpy");
  ParamVector out = y;
  for (std::size_t k = 0; k < out.dim(); ++k) out.weights[k] += alpha * x.weights[k];
  out.bias += alpha * x.bias;
  return out;
}

double squared_distance(const ParamVector& a, const ParamVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("parameter dimension mismatch in distance");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double diff = a.weights[k] - b.weights[k];
    acc += diff * diff;
  }
  const double diff = a.bias - b.bias;
  return acc + diff * diff;
}

void GlobalModelHistory::push(std::size_t round, ParamVector model) {
  entries_.emplace_front(round, std::move(model));
  while (entries_.size() > capacity_) entries_.pop_back();
}

const ParamVector& GlobalModelHistory::lookup(std::size_t age) const {
  if (age >= entries_.size()) throw std::out_of_range("no snapshot retained at requested age");
  return entries_[age].second;
}

std::size_t GlobalModelHistory::newest_round() const {
  if (entries_.empty()) throw std::out_of_range("history is empty");
  return entries_.front().first;
}

}  // namespace aflsim
