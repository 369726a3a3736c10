#include "gbas/toy_models.hpp"

#include "gbas/rng.hpp"
#include "gbas/weights_io.hpp"

#include <cmath>

namespace gbas {

namespace {

Layer random_layer(Index in_dim, Index out_dim, ActivationKind act, double slope, Rng& rng) {
    Layer layer;
    layer.activation = act;
    layer.slope = act == ActivationKind::LeakyReLU ? slope : 0.0;
    layer.weight.resize(out_dim, in_dim);
    const double w_std = std::sqrt(2.0 / static_cast<double>(in_dim));
    for (Index r = 0; r < out_dim; ++r)
        for (Index c = 0; c < in_dim; ++c) layer.weight(r, c) = w_std * rng.gaussian();
    layer.bias.resize(out_dim);
    for (Index r = 0; r < out_dim; ++r) layer.bias[r] = 0.1 * rng.gaussian();
    return layer;
}

Network random_mlp(const std::vector<Index>& dims, ActivationKind act, double slope,
                   std::uint64_t seed) {
    if (dims.size() < 2) throw ConfigError("make_toy_model: dims needs latent plus one layer");
    Rng rng(seed);
    Network net;
    net.latent_dim = dims.front();
    for (std::size_t k = 1; k < dims.size(); ++k) {
        const bool last = k + 1 == dims.size();
        net.layers.push_back(random_layer(dims[k - 1], dims[k],
                                          last ? ActivationKind::Tanh : act, slope, rng));
    }
    validate_network(net);
    return net;
}

// Fixed pinwheel generator. Eight first-layer boundaries at angles
// k*pi/8 with staggered offsets slice the plane into many cells. The
// deeper layers route each first-layer unit to its own pair of hidden
// units and its own output group (plus weak trig cross-talk), so every
// unit owns a visibly distinct piece of the output and masking one unit
// removes mostly that piece.
Network handcrafted2d() {
    Network net;
    net.latent_dim = 2;
    net.output_shape = {{4, 4}};

    Layer l1;
    l1.activation = ActivationKind::ReLU;
    l1.weight.resize(8, 2);
    l1.bias.resize(8);
    const double offsets[8] = {0.35, -0.45, 0.25, -0.30, 0.55, -0.25, 0.40, -0.50};
    for (Index k = 0; k < 8; ++k) {
        const double angle = static_cast<double>(k) * M_PI / 8.0;
        l1.weight(k, 0) = std::cos(angle);
        l1.weight(k, 1) = std::sin(angle);
        l1.bias[k] = offsets[k];
    }
    net.layers.push_back(std::move(l1));

    Layer l2;
    l2.activation = ActivationKind::LeakyReLU;
    l2.slope = 0.2;
    l2.weight.resize(16, 8);
    l2.bias.resize(16);
    for (Index r = 0; r < 16; ++r) {
        for (Index c = 0; c < 8; ++c) {
            if (c == r / 2)
                l2.weight(r, c) = (r % 2 == 0) ? 1.0 : 0.8;
            else
                l2.weight(r, c) = 0.12 * std::cos(1.1 * static_cast<double>(r) +
                                                  2.3 * static_cast<double>(c));
        }
        l2.bias[r] = 0.06 * static_cast<double>(r % 3 - 1);
    }
    net.layers.push_back(std::move(l2));

    Layer l3;
    l3.activation = ActivationKind::Tanh;
    l3.weight.resize(16, 16);
    l3.bias = Vector::Zero(16);
    for (Index r = 0; r < 16; ++r)
        for (Index c = 0; c < 16; ++c) {
            const Index unit = c / 2;
            const bool main = (c % 2 == 0) ? (r == unit) : (r == unit + 8);
            l3.weight(r, c) = main ? ((c % 2 == 0) ? 0.5 : 0.45)
                                   : 0.05 * std::sin(0.7 * static_cast<double>(r) +
                                                     1.7 * static_cast<double>(c));
        }
    net.layers.push_back(std::move(l3));

    validate_network(net);
    return net;
}

}  // namespace

const char* toy_model_kind_name(ToyModelKind kind) {
    switch (kind) {
        case ToyModelKind::RandomMlp: return "random_mlp";
        case ToyModelKind::Trained2DMnistLike: return "mnist_like_2d";
        case ToyModelKind::Handcrafted2D: return "handcrafted2d";
    }
    return "random_mlp";
}

ToyModelKind toy_model_kind_from_name(const std::string& name) {
    if (name == "random_mlp") return ToyModelKind::RandomMlp;
    if (name == "mnist_like_2d") return ToyModelKind::Trained2DMnistLike;
    if (name == "handcrafted2d") return ToyModelKind::Handcrafted2D;
    throw ConfigError("unknown toy model kind: " + name);
}

Network make_toy_model(const ToyModelSpec& spec) {
    switch (spec.kind) {
        case ToyModelKind::RandomMlp:
            return random_mlp(spec.dims, spec.activation, spec.slope, spec.seed);
        case ToyModelKind::Trained2DMnistLike: {
            // Deterministic stand-in shaped like a 2-D-latent MNIST
            // generator; no training happens here.
            std::vector<Index> dims = spec.dims.empty()
                                          ? std::vector<Index>{2, 24, 48, 784}
                                          : spec.dims;
            Network net = random_mlp(dims, ActivationKind::LeakyReLU, 0.2, spec.seed);
            const Index out = net.output_dim();
            const Index side = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(out))));
            if (side * side == out) net.output_shape = {{side, side}};
            return net;
        }
        case ToyModelKind::Handcrafted2D:
            return handcrafted2d();
    }
    throw ConfigError("make_toy_model: unknown kind");
}

Network make_toy_model(const ToyModelSpec& spec, const std::filesystem::path& path) {
    Network net = make_toy_model(spec);
    save_network(net, path);
    return net;
}

}  // namespace gbas
