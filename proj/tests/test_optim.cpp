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

#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hqw/optim.hpp"

using namespace hqw;

TEST_CASE("first adam step moves by lr in the gradient direction") {
    // With zero moment history the bias-corrected update is exactly
    // lr * g / (|g| + eps * correction), independent of the gradient scale.
    AdamState state = make_adam(2, 0.05);
    std::vector<double> params = {1.0, -2.0};
    adam_update(state, params, {0.5, -3.0});
    CHECK(params[0] == doctest::Approx(1.0 - 0.05).epsilon(1e-6));
    CHECK(params[1] == doctest::Approx(-2.0 + 0.05).epsilon(1e-6));
    CHECK(state.t == 1);
}

TEST_CASE("adam converges on a separable quadratic") {
    AdamState state = make_adam(2, 0.1);
    std::vector<double> params = {3.0, -4.0};
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> grad = {2.0 * params[0], 8.0 * params[1]};
        adam_update(state, params, grad);
    }
    CHECK(std::abs(params[0]) < 1e-3);
    CHECK(std::abs(params[1]) < 1e-3);
}

TEST_CASE("adam rejects malformed gradients") {
    AdamState state = make_adam(2, 0.1);
    std::vector<double> params = {0.0, 0.0};
    CHECK_THROWS_AS(adam_update(state, params, {1.0}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(adam_update(state, params, {1.0, nan}),
                    std::invalid_argument);
}

TEST_CASE("finite differences recover an analytic gradient") {
    const auto f = [](const std::vector<double> &x) {
        return x[0] * x[0] + std::sin(x[1]) + x[0] * x[2];
    };
    const std::vector<double> x = {0.7, -1.2, 2.5};
    const std::vector<double> g = finite_diff_grad(f, x, 1e-6);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(2.0 * x[0] + x[2]).epsilon(1e-7));
    CHECK(g[1] == doctest::Approx(std::cos(x[1])).epsilon(1e-7));
    CHECK(g[2] == doctest::Approx(x[0]).epsilon(1e-7));
}
