#pragma once

#include "gbas/network.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gbas {

enum class ToyModelKind { RandomMlp, Trained2DMnistLike, Handcrafted2D };

const char* toy_model_kind_name(ToyModelKind kind);
ToyModelKind toy_model_kind_from_name(const std::string& name);

/// dims lists [latent, layer_1, ..., layer_L]. Handcrafted2D ignores
/// dims/activation (its weights are fixed); Trained2DMnistLike uses its
/// own MNIST-shaped defaults when dims is empty.
struct ToyModelSpec {
    ToyModelKind kind = ToyModelKind::RandomMlp;
    std::vector<Index> dims;
    ActivationKind activation = ActivationKind::ReLU;
    double slope = 0.2;  // LeakyReLU hidden layers
    std::uint64_t seed = 0;
};

/// Builds the toy generator in memory. RandomMlp draws weights from
/// N(0, 2/in_dim) and biases from N(0, 0.1^2) with hidden layers using
/// spec.activation and a tanh output layer. Handcrafted2D is a fixed
/// 2 -> 8 -> 16 -> 16 stack whose first layer fans out eight boundary
/// lines at distinct angles, so the latent plane splits into many
/// visibly different regions. Same spec, same network.
Network make_toy_model(const ToyModelSpec& spec);

/// Builds and writes the weight file.
Network make_toy_model(const ToyModelSpec& spec, const std::filesystem::path& path);

}  // namespace gbas
