#include "gbas/weights_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace gbas {

using nlohmann::json;

namespace {

double finite_number(const json& j, const std::string& where) {
    // JSON cannot encode NaN/inf; serializers emit null instead, so a
    // non-number here is reported as a non-finite value.
    if (!j.is_number()) throw NumericError(where + ": non-finite or non-numeric value");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw NumericError(where + ": non-finite value");
    return v;
}

}  // namespace

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weight file: " + path.string());

    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw IoError("weight file parse error in " + path.string() + ": " + e.what());
    }

    Network net;
    if (!doc.contains("latent_dim") || !doc["latent_dim"].is_number_integer())
        throw IoError("weight file: missing or non-integer latent_dim");
    net.latent_dim = doc["latent_dim"].get<Index>();
    if (!doc.contains("layers") || !doc["layers"].is_array() || doc["layers"].empty())
        throw IoError("weight file: missing or empty layers array");

    if (doc.contains("output_shape")) {
        const json& s = doc["output_shape"];
        if (!s.is_array() || s.size() != 2)
            throw IoError("weight file: output_shape must be [height, width]");
        net.output_shape = {s[0].get<Index>(), s[1].get<Index>()};
    }

    Index layer_no = 0;
    for (const json& jl : doc["layers"]) {
        ++layer_no;
        const std::string tag = "layer " + std::to_string(layer_no);
        for (const char* field : {"in_dim", "out_dim", "activation", "weight", "bias"})
            if (!jl.contains(field)) throw IoError(tag + ": missing field " + field);

        Layer layer;
        const Index in_dim = jl["in_dim"].get<Index>();
        const Index out_dim = jl["out_dim"].get<Index>();
        if (in_dim <= 0 || out_dim <= 0)
            throw DimensionError(tag + ": in_dim and out_dim must be positive");

        const json& ja = jl["activation"];
        if (!ja.contains("name")) throw IoError(tag + ": activation missing name");
        layer.activation = activation_from_name(ja["name"].get<std::string>());
        if (layer.activation == ActivationKind::LeakyReLU) {
            if (!ja.contains("slope")) throw IoError(tag + ": leaky_relu requires slope");
            layer.slope = finite_number(ja["slope"], tag + ": slope");
        }

        const json& jw = jl["weight"];
        if (!jw.is_array() || static_cast<Index>(jw.size()) != in_dim * out_dim)
            throw DimensionError(tag + ": weight must be a flat array of length " +
                                 std::to_string(in_dim * out_dim));
        layer.weight.resize(out_dim, in_dim);
        for (Index r = 0; r < out_dim; ++r)
            for (Index c = 0; c < in_dim; ++c)
                layer.weight(r, c) =
                    finite_number(jw[static_cast<std::size_t>(r * in_dim + c)], tag + ": weight");

        const json& jb = jl["bias"];
        if (!jb.is_array() || static_cast<Index>(jb.size()) != out_dim)
            throw DimensionError(tag + ": bias must have length " + std::to_string(out_dim));
        layer.bias.resize(out_dim);
        for (Index r = 0; r < out_dim; ++r)
            layer.bias[r] = finite_number(jb[static_cast<std::size_t>(r)], tag + ": bias");

        net.layers.push_back(std::move(layer));
    }

    validate_network(net);
    return net;
}

void save_network(const Network& net, const std::filesystem::path& path) {
    validate_network(net);

    json doc;
    doc["latent_dim"] = net.latent_dim;
    if (net.output_shape)
        doc["output_shape"] = {(*net.output_shape)[0], (*net.output_shape)[1]};

    json layers = json::array();
    for (const Layer& layer : net.layers) {
        json jl;
        jl["in_dim"] = layer.in_dim();
        jl["out_dim"] = layer.out_dim();
        json ja;
        ja["name"] = activation_name(layer.activation);
        if (layer.activation == ActivationKind::LeakyReLU) ja["slope"] = layer.slope;
        jl["activation"] = ja;
        json w = json::array();
        for (Index r = 0; r < layer.out_dim(); ++r)
            for (Index c = 0; c < layer.in_dim(); ++c) w.push_back(layer.weight(r, c));
        jl["weight"] = std::move(w);
        json b = json::array();
        for (Index r = 0; r < layer.out_dim(); ++r) b.push_back(layer.bias[r]);
        jl["bias"] = std::move(b);
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write weight file: " + path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace gbas
