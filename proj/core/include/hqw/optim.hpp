// Copyright 2026 The hqw authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hqw {

/// First-order optimizer state: step count, both moment vectors, and the
/// hyperparameters. Defaults follow common usage; only the learning rate is
/// problem specific.
struct AdamState {
    std::size_t t = 0;
    std::vector<double> m;
    std::vector<double> v;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Fresh state for `param_count` parameters.
AdamState make_adam(std::size_t param_count, double lr);

/**
 * One bias-corrected update step. Parameters are updated in place;
 * the state advances by one step. Throws on length mismatch or non-finite
 * gradient entries.
 */
void adam_update(AdamState &state, std::vector<double> &params,
                 const std::vector<double> &grads);

/// Central differences (f(x + h e_k) - f(x - h e_k)) / 2h for every k.
std::vector<double>
finite_diff_grad(const std::function<double(const std::vector<double> &)> &f,
                 const std::vector<double> &params, double h);

} // namespace hqw
