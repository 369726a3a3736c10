#pragma once

#include "gbas/types.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gbas {

enum class ActivationKind { Identity, ReLU, LeakyReLU, Tanh, Sigmoid };

const char* activation_name(ActivationKind kind);
ActivationKind activation_from_name(const std::string& name);

/// One dense layer: pre = weight * x + bias, post = act(pre).
/// weight is (out_dim x in_dim); one row per output unit.
struct Layer {
    Matrix weight;
    Vector bias;
    ActivationKind activation = ActivationKind::Identity;
    double slope = 0.0;  // LeakyReLU only, required in (0, 1)

    Index in_dim() const { return weight.cols(); }
    Index out_dim() const { return weight.rows(); }
};

/// Dense feedforward stack z -> f_L(...f_1(z)...). Immutable after load;
/// every operation below is a pure function of its inputs, so a Network
/// may be shared freely across threads.
struct Network {
    std::vector<Layer> layers;
    Index latent_dim = 0;
    /// Optional (height, width) for reshaping flat outputs into images.
    std::optional<std::array<Index, 2>> output_shape;

    Index num_layers() const { return static_cast<Index>(layers.size()); }
    Index output_dim() const { return layers.back().out_dim(); }
    std::vector<Index> layer_dims() const;
    /// Width of layer l (1-based).
    Index layer_dim(Index layer) const;
};

/// Pre- and post-activation of one layer for a given input. Boundary and
/// sign tests read pre_activation; the tail composition consumes
/// post_activation.
struct Activation {
    Index layer_index = 0;  // 1-based
    Vector pre_activation;
    Vector post_activation;
};

/// Throws if dimensions do not chain, a value is non-finite, or a
/// LeakyReLU slope is out of range. Messages name the layer and field.
void validate_network(const Network& net);

Vector apply_activation(const Layer& layer, const Vector& pre);

/// Elementwise derivative of the activation at the given pre-activation.
/// ReLU/LeakyReLU use the right derivative at the kink.
Vector activation_derivative(const Layer& layer, const Vector& pre);

/// Evaluates layers 1..l and returns both value vectors at layer l.
/// Requires 1 <= l <= L, finite z of latent size.
Activation forward_to(const Network& net, const Vector& z, Index layer);

/// Evaluates layers l+1..L from a hidden vector h at layer l.
/// l = 0 feeds the latent vector, l = L returns h unchanged. Composing
/// forward_from over forward_to(...).post_activation reproduces
/// generate() bit-exactly: both paths run the identical per-layer ops.
Vector forward_from(const Network& net, const Vector& h, Index layer);

/// Full forward pass G(z).
Vector generate(const Network& net, const Vector& z);

/// Gradient of output_grad . f_{L:l+1}(h) with respect to h, i.e. the
/// vector-Jacobian product through the tail of the stack.
Vector backprop_to_hidden(const Network& net, const Vector& h, Index layer,
                          const Vector& output_grad);

}  // namespace gbas
