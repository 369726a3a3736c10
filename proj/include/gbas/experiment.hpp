#pragma once

#include "gbas/beropt.hpp"
#include "gbas/explorer.hpp"
#include "gbas/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gbas {

/// RRT knobs as they appear in config files; the interval may be a
/// scalar (expanded per dimension) and step_delta defaults to 5% of the
/// largest interval entry.
struct RrtSettings {
    std::vector<double> interval = {3.0};
    int max_iters = 20000;
    std::optional<double> step_delta;
    std::uint64_t seed = 0;
};

RrtConfig resolve_rrt(const RrtSettings& settings, Index latent_dim);

struct RandomQueries {
    int count = 0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::string generator_path;
    std::optional<std::string> discriminator_path;
    std::vector<Vector> queries;                  // explicit query latents
    std::optional<RandomQueries> random_queries;  // or drawn from N(0, I)
    std::vector<Index> target_layers;
    BerOptConfig beropt;
    RrtSettings rrt;
    std::optional<int> baseline_n;  // unset: each baseline matches |accepted|
    std::string output_dir;
    bool write_loss_trace = true;
    FeatureMode feature_mode = FeatureMode::PostActivation;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Throws ConfigError on invalid settings; file-system and numeric
/// failures surface as their own exception types.
void validate_config(const ExperimentConfig& cfg);

/// Runs the full pipeline for every (query, layer) cell: E-GBAS, epsilon
/// calibration from its accepted/rejected sets, both ball baselines, and
/// all metrics. Writes per-cell artifacts under output_dir plus a
/// summary CSV. Output bytes are a pure function of the weight files and
/// the config (including seeds).
void run_experiment(const ExperimentConfig& cfg, std::ostream& diag);

/// CLI wrapper: returns 0 on success, 2 for config validation errors,
/// 1 for runtime failures, with a machine-parsable diagnostic line.
int cli_run(const ExperimentConfig& cfg, std::ostream& diag);

}  // namespace gbas
