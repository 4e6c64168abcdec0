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

#ifndef AFLSIM_MODEL_HPP
#define AFLSIM_MODEL_HPP

#include <span>

#include "aflsim/params.hpp"

namespace aflsim {

enum class Objective { kMse, kHinge };

/// Which convex objective a run trains, plus an optional L2 term on the
/// weights (the bias is never regularized). l2_mu > 0 makes both
/// objectives strongly convex, which the theory checks rely on.
struct ModelKind {
  Objective objective = Objective::kMse;
  double l2_mu = 0.0;
};

/// w . x + b
double predict(const ParamVector& p, std::span<const double> x);

/// 0.5 * (y - f(x))^2 + (l2_mu / 2) * ||w||^2
double mse_loss(const ParamVector& p, std::span<const double> x, double y, double l2_mu = 0.0);

/// d/dw = -(y - f(x)) x + l2_mu w ; d/db = -(y - f(x))
ParamVector mse_grad(const ParamVector& p, std::span<const double> x, double y, double l2_mu = 0.0);

/// max(0, 1 - y f(x)) + (l2_mu / 2) * ||w||^2. Throws std::invalid_argument
/// unless y is exactly -1 or +1.
double hinge_loss(const ParamVector& p, std::span<const double> x, double y, double l2_mu = 0.0);

/// Subgradient of hinge_loss. At the kink y f(x) = 1 the zero-loss branch
/// is returned.
ParamVector hinge_subgrad(const ParamVector& p, std::span<const double> x, double y,
                          double l2_mu = 0.0);

double sample_loss(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                   double y);
ParamVector sample_grad(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                        double y);

/// Adds the data part of the (sub)gradient at one sample into (grad_w,
/// grad_b), without the L2 term; the trainer applies the L2 term once per
/// batch since it does not depend on the sample.
void accumulate_data_grad(const ModelKind& kind, const ParamVector& p, std::span<const double> x,
                          double y, std::span<double> grad_w, double& grad_b);

}  // namespace aflsim

#endif  // AFLSIM_MODEL_HPP
