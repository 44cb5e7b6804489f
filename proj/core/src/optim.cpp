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

#include "hqw/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace hqw {

AdamState make_adam(std::size_t param_count, double lr) {
    if (lr <= 0.0) {
        throw std::invalid_argument("learning rate must be positive");
    }
    AdamState state;
    state.lr = lr;
    state.m.assign(param_count, 0.0);
    state.v.assign(param_count, 0.0);
    return state;
}

void adam_update(AdamState &state, std::vector<double> &params,
                 const std::vector<double> &grads) {
    const std::size_t n = params.size();
    if (grads.size() != n || state.m.size() != n || state.v.size() != n) {
        throw std::invalid_argument("adam_update: length mismatch");
    }
    for (double g : grads) {
        if (!std::isfinite(g)) {
            throw std::invalid_argument("adam_update: non-finite gradient");
        }
    }
    state.t += 1;
    const double corr1 = 1.0 - std::pow(state.beta1, state.t);
    const double corr2 = 1.0 - std::pow(state.beta2, state.t);
    for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] =
            state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / corr1;
        const double v_hat = state.v[i] / corr2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

std::vector<double>
finite_diff_grad(const std::function<double(const std::vector<double> &)> &f,
                 const std::vector<double> &params, double h) {
    if (h <= 0.0) {
        throw std::invalid_argument("finite_diff_grad: h must be positive");
    }
    std::vector<double> grad(params.size());
    std::vector<double> probe = params;
    for (std::size_t k = 0; k < params.size(); ++k) {
        probe[k] = params[k] + h;
        const double fplus = f(probe);
        probe[k] = params[k] - h;
        const double fminus = f(probe);
        probe[k] = params[k];
        if (!std::isfinite(fplus) || !std::isfinite(fminus)) {
            throw std::runtime_error(
                "finite_diff_grad: objective returned a non-finite value");
        }
        grad[k] = (fplus - fminus) / (2.0 * h);
    }
    return grad;
}

} // namespace hqw
