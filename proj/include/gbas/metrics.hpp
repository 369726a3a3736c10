#pragma once

#include "gbas/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbas {

enum class SampleMethod { EGBAS, EpsL2, EpsLinf };

const char* sample_method_name(SampleMethod method);

/// Latent samples harvested by one method for one (query, layer) cell.
struct SampleSet {
    SampleMethod method = SampleMethod::EGBAS;
    Vector query;
    Index layer_index = 0;
    std::vector<Vector> points;
};

/// Per-output-element population standard deviation of G(z) over the
/// sample set. output_std averages it over elements; the split keeps the
/// aggregation rule swappable in one place.
Vector output_std_per_element(const Network& net, const SampleSet& samples);
double output_std(const Network& net, const SampleSet& samples);

struct LayerCosine {
    Index layer = 0;        // discriminator layer, 1-based
    double mean_cosine = 0.0;
    int excluded = 0;       // samples dropped for a zero-norm feature vector
};

enum class FeatureMode { PostActivation, PreActivation };

/// Mean cosine similarity between each sample's discriminator features
/// and the query's, per discriminator layer. Features are read
/// post-activation by default. Zero-norm feature vectors are excluded
/// from the mean and counted.
std::vector<LayerCosine> disc_similarity(const Network& disc, const Network& gen,
                                         const SampleSet& samples, const Vector& z0,
                                         FeatureMode mode = FeatureMode::PostActivation);

/// max over samples of ||G(z) - G(z0)||_2: the achieved region-wide
/// output distortion.
double region_distortion(const Network& net, const SampleSet& samples, const Vector& z0);

struct MetricReport {
    SampleMethod method = SampleMethod::EGBAS;
    double sigma = 0.0;
    std::vector<LayerCosine> cosine_by_layer;  // empty without a discriminator
    double max_region_distortion = 0.0;
};

MetricReport compute_metrics(const Network& gen, const Network* disc, const SampleSet& samples,
                             const Vector& z0, FeatureMode mode = FeatureMode::PostActivation);

}  // namespace gbas
