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

#include "hqw/hqnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "hqw/optim.hpp"
#include "hqw/rng.hpp"
#include "hqw/statevector.hpp"

namespace hqw {

namespace {

double sigmoid(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// max(z,0) - z*y + log(1 + exp(-|z|)), the overflow-safe form of
// -y*log(sigmoid(z)) - (1-y)*log(1-sigmoid(z)).
double bce_with_logit(double z, double y) {
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

std::vector<double> quantum_expectations(const QuantumLayer &layer,
                                         const std::vector<double> &features,
                                         const std::vector<double> &thetas) {
    StateVector state = init_zero(layer.num_qubits);
    for (std::size_t f = 0; f < features.size(); ++f)
        apply_gate_in_place(state,
                            GateSpec::rx(layer.encoding_qubits[f],
                                         std::numbers::pi * features[f]));
    for (int q = 0; q < layer.num_qubits; ++q)
        apply_gate_in_place(state, GateSpec::ry(q, thetas[q]));
    if (layer.num_qubits > 1)
        for (int q = 0; q < layer.num_qubits; ++q)
            apply_gate_in_place(
                state, GateSpec::cnot(q, (q + 1) % layer.num_qubits));
    std::vector<double> out(layer.readout_qubits.size());
    for (std::size_t r = 0; r < out.size(); ++r)
        out[r] = expectation_z(state, layer.readout_qubits[r]);
    return out;
}

void validate_quantum_layer(const QuantumLayer &layer, std::size_t n_features) {
    if (layer.num_qubits < 1)
        throw std::invalid_argument("quantum layer: need at least one qubit");
    if (layer.encoding_qubits.size() != n_features)
        throw std::invalid_argument(
            "quantum layer: feature count does not match encoding qubits");
    if (static_cast<int>(layer.thetas.size()) != layer.num_qubits)
        throw std::invalid_argument("quantum layer: one theta per qubit required");
    for (int q : layer.encoding_qubits)
        if (q < 0 || q >= layer.num_qubits)
            throw std::invalid_argument("quantum layer: encoding qubit out of range");
    for (int q : layer.readout_qubits)
        if (q < 0 || q >= layer.num_qubits)
            throw std::invalid_argument("quantum layer: readout qubit out of range");
}

double apply_activation(Activation act, double z) {
    return act == Activation::relu ? std::max(z, 0.0) : z;
}

struct ForwardCache {
    std::vector<double> quantum_out;
    std::vector<std::vector<double>> inputs; // input vector of each dense layer
    std::vector<std::vector<double>> pre;    // pre-activation of each layer
    std::vector<double> output;
};

void dense_forward(const DenseLayer &layer, const std::vector<double> &in,
                   std::vector<double> &pre, std::vector<double> &out) {
    if (static_cast<int>(in.size()) != layer.in_dim)
        throw std::invalid_argument("dense layer: input size mismatch");
    pre.assign(layer.out_dim, 0.0);
    out.assign(layer.out_dim, 0.0);
    for (int o = 0; o < layer.out_dim; ++o) {
        const double *row =
            layer.weights.data() + static_cast<std::size_t>(o) * layer.in_dim;
        double z = layer.has_bias ? layer.bias[o] : 0.0;
        for (int i = 0; i < layer.in_dim; ++i)
            z += row[i] * in[i];
        pre[o] = z;
        out[o] = apply_activation(layer.activation, z);
    }
}

ForwardCache forward_cached(const Network &net, const std::vector<double> &x) {
    if (static_cast<int>(x.size()) != net.input_dim)
        throw std::invalid_argument("forward: input size mismatch");
    ForwardCache cache;
    std::vector<double> current = x;
    if (net.has_quantum) {
        validate_quantum_layer(net.quantum, x.size());
        cache.quantum_out =
            quantum_expectations(net.quantum, x, net.quantum.thetas);
        current = cache.quantum_out;
    }
    for (const DenseLayer &layer : net.dense) {
        cache.inputs.push_back(current);
        std::vector<double> pre, out;
        dense_forward(layer, current, pre, out);
        cache.pre.push_back(std::move(pre));
        current = std::move(out);
    }
    cache.output = current;
    return cache;
}

} // namespace

std::size_t Network::param_count() const {
    std::size_t count = has_quantum ? quantum.thetas.size() : 0;
    for (const DenseLayer &layer : dense)
        count += layer.weights.size() + layer.bias.size();
    return count;
}

namespace {

DenseLayer make_dense(int in_dim, int out_dim, bool has_bias, Activation act) {
    DenseLayer layer;
    layer.in_dim = in_dim;
    layer.out_dim = out_dim;
    layer.has_bias = has_bias;
    layer.activation = act;
    layer.weights.assign(static_cast<std::size_t>(in_dim) * out_dim, 0.0);
    if (has_bias)
        layer.bias.assign(out_dim, 0.0);
    return layer;
}

QuantumLayer make_quantum(std::vector<int> encoding, std::vector<int> readout) {
    QuantumLayer layer;
    layer.num_qubits = 4;
    layer.encoding_qubits = std::move(encoding);
    layer.readout_qubits = std::move(readout);
    layer.thetas.assign(4, 0.0);
    return layer;
}

} // namespace

Network make_classical_classifier() {
    Network net;
    net.input_dim = 2;
    net.dense.push_back(make_dense(2, 40, true, Activation::relu));
    net.dense.push_back(make_dense(40, 1, true, Activation::identity));
    return net;
}

Network make_hybrid_classifier() {
    Network net;
    net.input_dim = 2;
    net.has_quantum = true;
    // Features on qubits 0 and 2 (the spacing used on the regression side):
    // after the CNOT ring, readout 0 reduces to cos(pi f_1) times a trainable
    // factor and readout 1 to cos(pi f_0) times another, so the head sees
    // both coordinates independently. Encoding on adjacent qubits would fold
    // f_0 into the product cos(pi f_0) cos(pi f_1) only.
    net.quantum = make_quantum({0, 2}, {0, 1});
    net.dense.push_back(make_dense(2, 40, false, Activation::relu));
    net.dense.push_back(make_dense(40, 1, true, Activation::identity));
    return net;
}

Network make_classical_regressor() {
    Network net;
    net.input_dim = 2;
    net.dense.push_back(make_dense(2, 4, true, Activation::relu));
    net.dense.push_back(make_dense(4, 8, true, Activation::relu));
    net.dense.push_back(make_dense(8, 1, true, Activation::identity));
    return net;
}

Network make_hybrid_regressor() {
    Network net;
    net.input_dim = 2;
    net.has_quantum = true;
    net.quantum = make_quantum({0, 2}, {0, 1, 2, 3});
    net.dense.push_back(make_dense(4, 8, true, Activation::relu));
    net.dense.push_back(make_dense(8, 1, true, Activation::identity));
    return net;
}

void init_network(Network &net, std::uint64_t seed) {
    Rng rng(seed);
    if (net.has_quantum)
        for (double &t : net.quantum.thetas)
            t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (DenseLayer &layer : net.dense) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_dim));
        for (double &w : layer.weights)
            w = rng.uniform(-bound, bound);
        for (double &b : layer.bias)
            b = 0.0;
    }
}

std::vector<double> quantum_layer_forward(const QuantumLayer &layer,
                                          const std::vector<double> &features) {
    validate_quantum_layer(layer, features.size());
    return quantum_expectations(layer, features, layer.thetas);
}

std::vector<double> forward(const Network &net, const std::vector<double> &x) {
    return forward_cached(net, x).output;
}

double predict_probability(const Network &net, const std::vector<double> &x) {
    return sigmoid(forward(net, x)[0]);
}

double sample_loss(const Network &net, const std::vector<double> &x, double y,
                   bool classification) {
    const double z = forward(net, x)[0];
    if (classification)
        return bce_with_logit(z, y);
    const double d = z - y;
    return d * d;
}

std::vector<double> loss_gradient(const Network &net,
                                  const std::vector<double> &x, double y,
                                  bool classification) {
    const ForwardCache cache = forward_cached(net, x);
    const double z = cache.output[0];
    // dL/dz for BCE-with-logit collapses to sigmoid(z) - y.
    std::vector<double> delta{classification ? sigmoid(z) - y
                                             : 2.0 * (z - y)};

    std::vector<double> grad(net.param_count(), 0.0);
    const std::size_t theta_count =
        net.has_quantum ? net.quantum.thetas.size() : 0;
    std::size_t offset = grad.size();
    for (int l = static_cast<int>(net.dense.size()) - 1; l >= 0; --l) {
        const DenseLayer &layer = net.dense[l];
        offset -= layer.weights.size() + layer.bias.size();
        // delta currently holds dL/d(out of layer l); fold in the activation.
        for (int o = 0; o < layer.out_dim; ++o)
            if (layer.activation == Activation::relu && cache.pre[l][o] <= 0.0)
                delta[o] = 0.0;
        const std::vector<double> &in = cache.inputs[l];
        double *gw = grad.data() + offset;
        for (int o = 0; o < layer.out_dim; ++o)
            for (int i = 0; i < layer.in_dim; ++i)
                gw[static_cast<std::size_t>(o) * layer.in_dim + i] =
                    delta[o] * in[i];
        if (layer.has_bias) {
            double *gb = gw + layer.weights.size();
            for (int o = 0; o < layer.out_dim; ++o)
                gb[o] = delta[o];
        }
        std::vector<double> prev(layer.in_dim, 0.0);
        for (int o = 0; o < layer.out_dim; ++o) {
            const double *row = layer.weights.data() +
                                static_cast<std::size_t>(o) * layer.in_dim;
            for (int i = 0; i < layer.in_dim; ++i)
                prev[i] += row[i] * delta[o];
        }
        delta = std::move(prev);
    }

    if (net.has_quantum) {
        // delta now holds dL/d(quantum readouts). Each theta sits in one RY
        // gate, so the +-pi/2 shift rule gives the exact derivative of every
        // readout expectation.
        std::vector<double> thetas = net.quantum.thetas;
        constexpr double half_pi = std::numbers::pi / 2.0;
        for (std::size_t q = 0; q < theta_count; ++q) {
            const double saved = thetas[q];
            thetas[q] = saved + half_pi;
            const std::vector<double> plus =
                quantum_expectations(net.quantum, x, thetas);
            thetas[q] = saved - half_pi;
            const std::vector<double> minus =
                quantum_expectations(net.quantum, x, thetas);
            thetas[q] = saved;
            double g = 0.0;
            for (std::size_t r = 0; r < delta.size(); ++r)
                g += delta[r] * 0.5 * (plus[r] - minus[r]);
            grad[q] = g;
        }
    }
    return grad;
}

std::vector<double> flatten_params(const Network &net) {
    std::vector<double> flat;
    flat.reserve(net.param_count());
    if (net.has_quantum)
        flat.insert(flat.end(), net.quantum.thetas.begin(),
                    net.quantum.thetas.end());
    for (const DenseLayer &layer : net.dense) {
        flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
        flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
    }
    return flat;
}

void set_params(Network &net, const std::vector<double> &params) {
    if (params.size() != net.param_count())
        throw std::invalid_argument("set_params: parameter count mismatch");
    std::size_t k = 0;
    if (net.has_quantum)
        for (double &t : net.quantum.thetas)
            t = params[k++];
    for (DenseLayer &layer : net.dense) {
        for (double &w : layer.weights)
            w = params[k++];
        for (double &b : layer.bias)
            b = params[k++];
    }
}

Metrics evaluate_network(const Network &net, const Dataset &data,
                         bool classification) {
    if (data.size() == 0)
        throw std::invalid_argument("evaluate_network: empty dataset");
    Metrics m;
    std::size_t correct = 0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double z = forward(net, data.features[k])[0];
        const double y = data.targets[k];
        const double d = z - y;
        m.mse += d * d;
        m.mae += std::abs(d);
        if (classification) {
            m.loss += bce_with_logit(z, y);
            if ((sigmoid(z) > 0.5) == (y > 0.5))
                ++correct;
        } else {
            m.loss += d * d;
        }
    }
    const double n = static_cast<double>(data.size());
    m.loss /= n;
    m.mse /= n;
    m.mae /= n;
    m.accuracy = static_cast<double>(correct) / n;
    return m;
}

TrainResult train_network(const Network &architecture, const Dataset &train,
                          const Dataset &test, const TrainConfig &config) {
    if (train.size() == 0)
        throw std::invalid_argument("train_network: empty training set");
    if (config.epochs < 1)
        throw std::invalid_argument("train_network: epochs must be >= 1");
    if (config.batch_size < 0)
        throw std::invalid_argument("train_network: batch_size must be >= 0");

    TrainResult result;
    result.network = architecture;
    init_network(result.network, config.seed);
    Rng rng(config.seed + 0x9e3779b97f4a7c15ull); // shuffle stream

    std::vector<double> flat = flatten_params(result.network);
    AdamState adam = make_adam(flat.size(), config.learning_rate);
    const std::size_t batch =
        config.batch_size == 0 ? train.size()
                               : std::min<std::size_t>(config.batch_size,
                                                       train.size());
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> grad(flat.size());
    std::vector<double> accum(flat.size());

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t begin = 0; begin < order.size(); begin += batch) {
            const std::size_t end = std::min(begin + batch, order.size());
            std::fill(accum.begin(), accum.end(), 0.0);
            for (std::size_t k = begin; k < end; ++k) {
                const std::size_t idx = order[k];
                grad = loss_gradient(result.network, train.features[idx],
                                     train.targets[idx], config.classification);
                for (std::size_t i = 0; i < accum.size(); ++i)
                    accum[i] += grad[i];
            }
            const double inv = 1.0 / static_cast<double>(end - begin);
            for (double &g : accum)
                g *= inv;
            adam_update(adam, flat, accum);
            set_params(result.network, flat);
        }
        const Metrics train_m =
            evaluate_network(result.network, train, config.classification);
        const Metrics test_m =
            test.size() ? evaluate_network(result.network, test,
                                           config.classification)
                        : Metrics{};
        result.history.push_back(
            {epoch, train_m.loss,
             config.classification ? test_m.accuracy : test_m.mse});
        result.test_metrics = test_m;
    }
    return result;
}

void save_network(const Network &net, const std::filesystem::path &path) {
    nlohmann::json j;
    j["input_dim"] = net.input_dim;
    j["has_quantum"] = net.has_quantum;
    if (net.has_quantum)
        j["quantum"] = {{"num_qubits", net.quantum.num_qubits},
                        {"encoding_qubits", net.quantum.encoding_qubits},
                        {"readout_qubits", net.quantum.readout_qubits},
                        {"thetas", net.quantum.thetas}};
    j["dense"] = nlohmann::json::array();
    for (const DenseLayer &layer : net.dense)
        j["dense"].push_back(
            {{"in_dim", layer.in_dim},
             {"out_dim", layer.out_dim},
             {"has_bias", layer.has_bias},
             {"activation",
              layer.activation == Activation::relu ? "relu" : "identity"},
             {"weights", layer.weights},
             {"bias", layer.bias}});
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_network: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

Network load_network(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_network: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    Network net;
    net.input_dim = j.at("input_dim").get<int>();
    net.has_quantum = j.at("has_quantum").get<bool>();
    if (net.has_quantum) {
        const auto &q = j.at("quantum");
        net.quantum.num_qubits = q.at("num_qubits").get<int>();
        net.quantum.encoding_qubits =
            q.at("encoding_qubits").get<std::vector<int>>();
        net.quantum.readout_qubits =
            q.at("readout_qubits").get<std::vector<int>>();
        net.quantum.thetas = q.at("thetas").get<std::vector<double>>();
    }
    for (const auto &l : j.at("dense")) {
        DenseLayer layer;
        layer.in_dim = l.at("in_dim").get<int>();
        layer.out_dim = l.at("out_dim").get<int>();
        layer.has_bias = l.at("has_bias").get<bool>();
        const std::string act = l.at("activation").get<std::string>();
        if (act == "relu")
            layer.activation = Activation::relu;
        else if (act == "identity")
            layer.activation = Activation::identity;
        else
            throw std::runtime_error("load_network: unknown activation " + act);
        layer.weights = l.at("weights").get<std::vector<double>>();
        layer.bias = l.at("bias").get<std::vector<double>>();
        if (layer.weights.size() !=
            static_cast<std::size_t>(layer.in_dim) * layer.out_dim)
            throw std::runtime_error("load_network: weight size mismatch");
        if (layer.bias.size() !=
            (layer.has_bias ? static_cast<std::size_t>(layer.out_dim) : 0))
            throw std::runtime_error("load_network: bias size mismatch");
        net.dense.push_back(std::move(layer));
    }
    return net;
}

} // namespace hqw
