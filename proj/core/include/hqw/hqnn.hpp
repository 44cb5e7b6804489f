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
/**
 * @file
 * Small dense networks with an optional 4-qubit quantum first layer.
 *
 * The quantum layer encodes each input feature f as RX(pi * x_f) on its
 * assigned qubit, applies one trainable RY per qubit and a CNOT ring
 * 0->1->2->3->0, and reads out <Z> on a fixed set of qubits. Training is
 * plain backpropagation; the RY angles are differentiated with the
 * parameter-shift rule and chained into the dense gradients.
 *
 * Classifier outputs are logits; the sigmoid lives in the loss and in
 * predict_probability.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "hqw/dataset.hpp"

namespace hqw {

enum class Activation { identity, relu };

struct DenseLayer {
    int in_dim = 0;
    int out_dim = 0;
    bool has_bias = true;
    Activation activation = Activation::identity;
    std::vector<double> weights; // out_dim x in_dim, row-major
    std::vector<double> bias;    // out_dim when has_bias
};

struct QuantumLayer {
    int num_qubits = 4;
    std::vector<int> encoding_qubits; // feature f enters RX on this qubit
    std::vector<int> readout_qubits;  // outputs are <Z> on these qubits
    std::vector<double> thetas;       // one RY angle per qubit
};

struct Network {
    bool has_quantum = false;
    QuantumLayer quantum;
    std::vector<DenseLayer> dense;
    int input_dim = 0;

    std::size_t param_count() const;
};

/// 2 -> 40 (ReLU) -> 1, biases everywhere: 161 parameters.
Network make_classical_classifier();
/// Quantum layer (features on qubits 0,2; readouts 0,1), then 2 -> 40 (ReLU,
/// no bias) -> 1 (bias): 4 + 80 + 41 = 125 parameters.
Network make_hybrid_classifier();
/// 2 -> 4 (ReLU) -> 8 (ReLU) -> 1, biases everywhere: 61 parameters.
Network make_classical_regressor();
/// Quantum layer (features on qubits 0,2; readouts all four), then 4 -> 8
/// (ReLU) -> 1 (bias): 4 + 40 + 9 = 53 parameters.
Network make_hybrid_regressor();

/// Dense weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero,
/// RY angles uniform in [0, 2*pi).
void init_network(Network &net, std::uint64_t seed);

/// <Z> on each readout qubit for one feature row.
std::vector<double> quantum_layer_forward(const QuantumLayer &layer,
                                          const std::vector<double> &features);

std::vector<double> forward(const Network &net, const std::vector<double> &x);

/// sigmoid(logit) of the single output.
double predict_probability(const Network &net, const std::vector<double> &x);

/// Binary cross-entropy on the logit when `classification`, else squared
/// error on the raw output.
double sample_loss(const Network &net, const std::vector<double> &x, double y,
                   bool classification);

/// Gradient of sample_loss with respect to flatten_params ordering.
std::vector<double> loss_gradient(const Network &net,
                                  const std::vector<double> &x, double y,
                                  bool classification);

/// [thetas..., layer0 weights, layer0 bias, layer1 weights, ...]
std::vector<double> flatten_params(const Network &net);
void set_params(Network &net, const std::vector<double> &params);

struct Metrics {
    double loss = 0.0;     // mean BCE or mean squared error
    double accuracy = 0.0; // threshold 0.5 on the predicted probability
    double mse = 0.0;
    double mae = 0.0;
};

Metrics evaluate_network(const Network &net, const Dataset &data,
                         bool classification);

struct TrainConfig {
    int epochs = 100;
    double learning_rate = 1e-2;
    int batch_size = 0; // 0 means full batch
    std::uint64_t seed = 0;
    bool classification = true;
};

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double test_metric = 0.0; // accuracy (classification) or mse (regression)
};

struct TrainResult {
    Network network;
    std::vector<EpochRecord> history;
    Metrics test_metrics;
};

/// Adam training from a fresh seed-determined initialization. Minibatches
/// are reshuffled every epoch; batch gradients are means over the batch.
TrainResult train_network(const Network &architecture, const Dataset &train,
                          const Dataset &test, const TrainConfig &config);

/// JSON checkpoint with architecture and parameters.
void save_network(const Network &net, const std::filesystem::path &path);
Network load_network(const std::filesystem::path &path);

} // namespace hqw
