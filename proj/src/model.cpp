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

#include "aflsim/model.hpp"

#include <stdexcept>

namespace aflsim {

namespace {

void check_dims(const ParamVector& p, std::span<const double> x) {
  if (p.dim() != x.size()) throw std::invalid_argument("feature dimension mismatch");
}

void check_label(double y) {
  if (y != 1.0 && y != -1.0) throw std::invalid_argument("hinge label must be -1 or +1");
}

double l2_term(const ParamVector& p, double l2_mu) {
  if (l2_mu == 0.0) return 0.0;
  double acc = 0.0;
  for (double w : p.weights) acc += w * w;
  return 0.5 * l2_mu * acc;
}

}  // namespace

double predict(const ParamVector& p, std::span<const double> x) {
  check_dims(p, x);
  double acc = p.bias;
  for (std::size_t k = 0; k < x.size(); ++k) acc += p.weights[k] * x[k];
  return acc;
}

double mse_loss(const ParamVector& p, std::span<const double> x, double y, double l2_mu) {
  const double r = y - predict(p, x);
  return 0.5 * r * r + l2_term(p, l2_mu);
}

ParamVector mse_grad(const ParamVector& p, std::span<const double> x, double y, double l2_mu) {
  const double r = y - predict(p, x);
  ParamVector g(p.dim());
  for (std::size_t k = 0; k < x.size(); ++k) g.weights[k] = -r * x[k] + l2_mu * p.weights[k];
  g.bias = -r;
  return g;
}

double hinge_loss(const ParamVector& p, std::span<const double> x, double y, double l2_mu) {
  check_label(y);
  const double margin = y * predict(p, x);
  const double hinge = margin < 1.0 ? 1.0 - margin : 0.0;
  return hinge + l2_term(p, l2_mu);
}

ParamVector hinge_subgrad(const ParamVector& p, std::span<const double> x, double y,
                          double l2_mu) {
  check_label(y);
  const double margin = y * predict(p, x);
  ParamVector g(p.dim());
  if (margin < 1.0) {
    for (std::size_t k = 0; k < x.size(); ++k) g.weights[k] = -y * x[k] + l2_mu * p.weights[k];
    g.bias = -y;
  } else if (l2_mu != 0.0) {
    for (std::size_t k = 0; k < x.size(); ++k) g.weights[k] = l2_mu * p.weights[k];
  }
  return g;
}

double sample_loss(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                   double y) {
  return kind.objective == Objective::kMse ? mse_loss(p, x, y, kind.l2_mu)
                                           : hinge_loss(p, x, y, kind.l2_mu);
}

ParamVector sample_grad(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                        double y) {
  return kind.objective == Objective::kMse ? mse_grad(p, x, y, kind.l2_mu)
                                           : hinge_subgrad(p, x, y, kind.l2_mu);
}

void accumulate_data_grad(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                          double y, std::span<double> grad_w, double& grad_b) {
  check_dims(p, x);
  if (kind.objective == Objective::kMse) {
    const double r = y - predict(p, x);
    for (std::size_t k = 0; k < x.size(); ++k) grad_w[k] -= r * x[k];
    grad_b -= r;
  } else {
    check_label(y);
    const double margin = y * predict(p, x);
    if (margin < 1.0) {
      for (std::size_t k = 0; k < x.size(); ++k) grad_w[k] -= y * x[k];
      grad_b -= y;
    }
  }
}

}  // namespace aflsim
