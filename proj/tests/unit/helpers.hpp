#pragma once

#include "gbas/network.hpp"
#include "gbas/rng.hpp"

#include <filesystem>
#include <vector>

namespace gbas::test {

/// Random dense net with chosen per-layer activations; weights N(0, 2/in),
/// biases N(0, 0.1^2).
inline Network make_random_net(std::uint64_t seed, const std::vector<Index>& dims,
                               const std::vector<ActivationKind>& acts, double slope = 0.2) {
    Rng rng(seed);
    Network net;
    net.latent_dim = dims.front();
    for (std::size_t k = 1; k < dims.size(); ++k) {
        Layer layer;
        layer.activation = acts[k - 1];
        layer.slope = layer.activation == ActivationKind::LeakyReLU ? slope : 0.0;
        const Index in = dims[k - 1];
        const Index out = dims[k];
        layer.weight.resize(out, in);
        const double w_std = std::sqrt(2.0 / static_cast<double>(in));
        for (Index r = 0; r < out; ++r)
            for (Index c = 0; c < in; ++c) layer.weight(r, c) = w_std * rng.gaussian();
        layer.bias.resize(out);
        for (Index r = 0; r < out; ++r) layer.bias[r] = 0.1 * rng.gaussian();
        net.layers.push_back(std::move(layer));
    }
    validate_network(net);
    return net;
}

/// Plain-loop forward pass independent of the library path: scalar
/// accumulation in index order, explicit activation formulas.
inline std::vector<double> oracle_forward(const Network& net, const std::vector<double>& z,
                                          Index upto_layer, bool post) {
    std::vector<double> h = z;
    for (Index k = 1; k <= upto_layer; ++k) {
        const Layer& layer = net.layers[static_cast<std::size_t>(k - 1)];
        std::vector<double> pre(static_cast<std::size_t>(layer.out_dim()));
        for (Index r = 0; r < layer.out_dim(); ++r) {
            double acc = layer.bias[r];
            for (Index c = 0; c < layer.in_dim(); ++c)
                acc += layer.weight(r, c) * h[static_cast<std::size_t>(c)];
            pre[static_cast<std::size_t>(r)] = acc;
        }
        if (k == upto_layer && !post) return pre;
        std::vector<double> out(pre.size());
        for (std::size_t i = 0; i < pre.size(); ++i) {
            const double x = pre[i];
            switch (layer.activation) {
                case ActivationKind::Identity: out[i] = x; break;
                case ActivationKind::ReLU: out[i] = x > 0.0 ? x : 0.0; break;
                case ActivationKind::LeakyReLU: out[i] = x > 0.0 ? x : layer.slope * x; break;
                case ActivationKind::Tanh: out[i] = std::tanh(x); break;
                case ActivationKind::Sigmoid: out[i] = 1.0 / (1.0 + std::exp(-x)); break;
            }
        }
        h = std::move(out);
    }
    return h;
}

/// Scratch directory for test artifacts, cleaned per name.
inline std::filesystem::path test_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::path("test_tmp") / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace gbas::test
