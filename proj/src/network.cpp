#include "gbas/network.hpp"

#include <cmath>
#include <string>

namespace gbas {

namespace {

std::string dim_str(Index n) { return std::to_string(static_cast<long long>(n)); }

}  // namespace

const char* activation_name(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Identity: return "identity";
        case ActivationKind::ReLU: return "relu";
        case ActivationKind::LeakyReLU: return "leaky_relu";
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::Sigmoid: return "sigmoid";
    }
    return "identity";
}

ActivationKind activation_from_name(const std::string& name) {
    if (name == "identity") return ActivationKind::Identity;
    if (name == "relu") return ActivationKind::ReLU;
    if (name == "leaky_relu") return ActivationKind::LeakyReLU;
    if (name == "tanh") return ActivationKind::Tanh;
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    throw IoError("unknown activation name: " + name);
}

std::vector<Index> Network::layer_dims() const {
    std::vector<Index> dims;
    dims.reserve(layers.size());
    for (const Layer& l : layers) dims.push_back(l.out_dim());
    return dims;
}

Index Network::layer_dim(Index layer) const {
    if (layer < 1 || layer > num_layers())
        throw DimensionError("layer index " + dim_str(layer) + " out of range [1, " +
                             dim_str(num_layers()) + "]");
    return layers[static_cast<std::size_t>(layer - 1)].out_dim();
}

void validate_network(const Network& net) {
    if (net.layers.empty()) throw DimensionError("network has no layers");
    if (net.latent_dim <= 0) throw DimensionError("latent_dim must be positive");
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const Layer& layer = net.layers[k];
        const std::string tag = "layer " + std::to_string(k + 1);
        if (layer.weight.rows() != layer.bias.size())
            throw DimensionError(tag + ": weight has " + dim_str(layer.weight.rows()) +
                                 " rows but bias has length " + dim_str(layer.bias.size()));
        const Index expected_in = (k == 0) ? net.latent_dim : net.layers[k - 1].out_dim();
        if (layer.in_dim() != expected_in)
            throw DimensionError(tag + ": in_dim " + dim_str(layer.in_dim()) +
                                 " does not match " +
                                 (k == 0 ? std::string("latent_dim ")
                                         : "layer " + std::to_string(k) + " out_dim ") +
                                 dim_str(expected_in));
        if (!layer.weight.allFinite())
            throw NumericError(tag + ": non-finite value in weight");
        if (!layer.bias.allFinite())
            throw NumericError(tag + ": non-finite value in bias");
        if (layer.activation == ActivationKind::LeakyReLU &&
            !(std::isfinite(layer.slope) && layer.slope > 0.0 && layer.slope < 1.0))
            throw NumericError(tag + ": leaky_relu slope must be finite and in (0, 1)");
    }
}

Vector apply_activation(const Layer& layer, const Vector& pre) {
    switch (layer.activation) {
        case ActivationKind::Identity:
            return pre;
        case ActivationKind::ReLU:
            return pre.cwiseMax(0.0);
        case ActivationKind::LeakyReLU: {
            Vector out(pre.size());
            for (Index i = 0; i < pre.size(); ++i)
                out[i] = pre[i] > 0.0 ? pre[i] : layer.slope * pre[i];
            return out;
        }
        case ActivationKind::Tanh:
            return pre.array().tanh().matrix();
        case ActivationKind::Sigmoid:
            return (1.0 / (1.0 + (-pre.array()).exp())).matrix();
    }
    return pre;
}

Vector activation_derivative(const Layer& layer, const Vector& pre) {
    switch (layer.activation) {
        case ActivationKind::Identity:
            return Vector::Ones(pre.size());
        case ActivationKind::ReLU: {
            Vector d(pre.size());
            for (Index i = 0; i < pre.size(); ++i) d[i] = pre[i] > 0.0 ? 1.0 : 0.0;
            return d;
        }
        case ActivationKind::LeakyReLU: {
            Vector d(pre.size());
            for (Index i = 0; i < pre.size(); ++i) d[i] = pre[i] > 0.0 ? 1.0 : layer.slope;
            return d;
        }
        case ActivationKind::Tanh: {
            Vector t = pre.array().tanh().matrix();
            return (1.0 - t.array().square()).matrix();
        }
        case ActivationKind::Sigmoid: {
            Vector s = (1.0 / (1.0 + (-pre.array()).exp())).matrix();
            return (s.array() * (1.0 - s.array())).matrix();
        }
    }
    return Vector::Ones(pre.size());
}

Activation forward_to(const Network& net, const Vector& z, Index layer) {
    if (layer < 1 || layer > net.num_layers())
        throw DimensionError("forward_to: layer " + dim_str(layer) + " out of range [1, " +
                             dim_str(net.num_layers()) + "]");
    if (z.size() != net.latent_dim)
        throw DimensionError("forward_to: input length " + dim_str(z.size()) +
                             " does not match latent_dim " + dim_str(net.latent_dim));
    if (!z.allFinite()) throw NumericError("forward_to: non-finite input");

    Vector h = z;
    Activation act;
    for (Index k = 1; k <= layer; ++k) {
        const Layer& lk = net.layers[static_cast<std::size_t>(k - 1)];
        Vector pre = lk.weight * h + lk.bias;
        Vector post = apply_activation(lk, pre);
        if (k == layer) {
            act.layer_index = layer;
            act.pre_activation = std::move(pre);
            act.post_activation = post;
        }
        h = std::move(post);
    }
    return act;
}

Vector forward_from(const Network& net, const Vector& h, Index layer) {
    if (layer < 0 || layer > net.num_layers())
        throw DimensionError("forward_from: layer " + dim_str(layer) + " out of range [0, " +
                             dim_str(net.num_layers()) + "]");
    const Index expected = layer == 0 ? net.latent_dim : net.layer_dim(layer);
    if (h.size() != expected)
        throw DimensionError("forward_from: input length " + dim_str(h.size()) +
                             " does not match layer " + dim_str(layer) + " width " +
                             dim_str(expected));

    Vector x = h;
    for (Index k = layer + 1; k <= net.num_layers(); ++k) {
        const Layer& lk = net.layers[static_cast<std::size_t>(k - 1)];
        Vector pre = lk.weight * x + lk.bias;
        x = apply_activation(lk, pre);
    }
    return x;
}

Vector generate(const Network& net, const Vector& z) { return forward_from(net, z, 0); }

Vector backprop_to_hidden(const Network& net, const Vector& h, Index layer,
                          const Vector& output_grad) {
    if (layer < 0 || layer > net.num_layers())
        throw DimensionError("backprop_to_hidden: layer " + dim_str(layer) +
                             " out of range [0, " + dim_str(net.num_layers()) + "]");
    const Index expected = layer == 0 ? net.latent_dim : net.layer_dim(layer);
    if (h.size() != expected)
        throw DimensionError("backprop_to_hidden: input length " + dim_str(h.size()) +
                             " does not match layer " + dim_str(layer) + " width " +
                             dim_str(expected));
    if (output_grad.size() != net.output_dim())
        throw DimensionError("backprop_to_hidden: output_grad length " +
                             dim_str(output_grad.size()) + " does not match output_dim " +
                             dim_str(net.output_dim()));

    // Forward through the tail, caching pre-activations.
    std::vector<Vector> pres;
    pres.reserve(static_cast<std::size_t>(net.num_layers() - layer));
    Vector x = h;
    for (Index k = layer + 1; k <= net.num_layers(); ++k) {
        const Layer& lk = net.layers[static_cast<std::size_t>(k - 1)];
        Vector pre = lk.weight * x + lk.bias;
        x = apply_activation(lk, pre);
        pres.push_back(std::move(pre));
    }

    // Reverse vector-Jacobian product.
    Vector g = output_grad;
    for (Index k = net.num_layers(); k >= layer + 1; --k) {
        const Layer& lk = net.layers[static_cast<std::size_t>(k - 1)];
        const Vector& pre = pres[static_cast<std::size_t>(k - layer - 1)];
        Vector g_pre = activation_derivative(lk, pre).cwiseProduct(g);
        g = lk.weight.transpose() * g_pre;
    }
    return g;
}

}  // namespace gbas
