#include "gbas/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace gbas {

const char* sample_method_name(SampleMethod method) {
    switch (method) {
        case SampleMethod::EGBAS: return "egbas";
        case SampleMethod::EpsL2: return "eps_l2";
        case SampleMethod::EpsLinf: return "eps_linf";
    }
    return "egbas";
}

Vector output_std_per_element(const Network& net, const SampleSet& samples) {
    if (samples.points.empty()) throw NumericError("output_std: empty sample set");

    const Index out_dim = net.output_dim();
    Vector mean = Vector::Zero(out_dim);
    std::vector<Vector> outputs;
    outputs.reserve(samples.points.size());
    for (const Vector& z : samples.points) {
        outputs.push_back(generate(net, z));
        mean += outputs.back();
    }
    const double n = static_cast<double>(outputs.size());
    mean /= n;

    Vector var = Vector::Zero(out_dim);
    for (const Vector& x : outputs) var += (x - mean).cwiseAbs2();
    var /= n;  // population variance: the set is the whole region sample
    return var.cwiseSqrt();
}

double output_std(const Network& net, const SampleSet& samples) {
    return output_std_per_element(net, samples).mean();
}

std::vector<LayerCosine> disc_similarity(const Network& disc, const Network& gen,
                                         const SampleSet& samples, const Vector& z0,
                                         FeatureMode mode) {
    if (samples.points.empty()) throw NumericError("disc_similarity: empty sample set");
    if (disc.latent_dim != gen.output_dim())
        throw DimensionError("disc_similarity: discriminator input dim does not match "
                             "generator output dim");

    const auto features = [&](const Vector& x, Index layer) {
        const Activation act = forward_to(disc, x, layer);
        return mode == FeatureMode::PostActivation ? act.post_activation : act.pre_activation;
    };

    const Vector x0 = generate(gen, z0);
    std::vector<LayerCosine> report;
    for (Index layer = 1; layer <= disc.num_layers(); ++layer) {
        const Vector f0 = features(x0, layer);
        const double n0 = f0.norm();
        LayerCosine lc;
        lc.layer = layer;
        double sum = 0.0;
        int counted = 0;
        for (const Vector& z : samples.points) {
            const Vector f = features(generate(gen, z), layer);
            const double nf = f.norm();
            if (n0 == 0.0 || nf == 0.0) {
                ++lc.excluded;
                continue;
            }
            // identical features are perfectly similar; the clamp keeps
            // rounding from pushing a cosine outside [-1, 1]
            sum += f == f0 ? 1.0 : std::clamp(f.dot(f0) / (nf * n0), -1.0, 1.0);
            ++counted;
        }
        lc.mean_cosine = counted > 0 ? sum / counted : 0.0;
        report.push_back(lc);
    }
    return report;
}

double region_distortion(const Network& net, const SampleSet& samples, const Vector& z0) {
    if (samples.points.empty()) throw NumericError("region_distortion: empty sample set");
    const Vector x0 = generate(net, z0);
    double max_d = 0.0;
    for (const Vector& z : samples.points)
        max_d = std::max(max_d, (generate(net, z) - x0).norm());
    return max_d;
}

MetricReport compute_metrics(const Network& gen, const Network* disc, const SampleSet& samples,
                             const Vector& z0, FeatureMode mode) {
    MetricReport report;
    report.method = samples.method;
    report.sigma = output_std(gen, samples);
    if (disc != nullptr) report.cosine_by_layer = disc_similarity(*disc, gen, samples, z0, mode);
    report.max_region_distortion = region_distortion(gen, samples, z0);
    return report;
}

}  // namespace gbas
