#include "gbas/explorer.hpp"

#include "gbas/rng.hpp"

#include <stdexcept>

namespace gbas {

RrtConfig default_rrt_config(Index latent_dim, std::uint64_t seed) {
    RrtConfig cfg;
    cfg.interval = Vector::Constant(latent_dim, 3.0);
    cfg.step_delta = 0.05 * cfg.interval.maxCoeff();
    cfg.seed = seed;
    return cfg;
}

std::pair<Index, double> nearest(std::span<const Vector> points, const Vector& q) {
    if (points.empty()) throw std::invalid_argument("nearest: empty point list");
    Index best = 0;
    double best_dist = (points[0] - q).norm();
    for (Index i = 1; i < static_cast<Index>(points.size()); ++i) {
        const double d = (points[static_cast<std::size_t>(i)] - q).norm();
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return {best, best_dist};
}

ExplorationResult gb_rrt(const Vector& z0, const RegionSpec& region, const RrtConfig& cfg) {
    if (cfg.step_delta <= 0.0) throw ConfigError("gb_rrt: step_delta must be positive");
    if (cfg.max_iters < 1) throw ConfigError("gb_rrt: max_iters must be >= 1");
    if (cfg.interval.size() != z0.size())
        throw DimensionError("gb_rrt: interval length does not match latent dimension");
    if (cfg.interval.minCoeff() <= 0.0)
        throw ConfigError("gb_rrt: interval entries must be positive");
    if (!contains(region, z0))
        throw std::invalid_argument("gb_rrt: query is not inside the region");

    const Vector lo = z0 - cfg.interval;
    const Vector hi = z0 + cfg.interval;
    Rng rng(cfg.seed);

    ExplorationResult result;
    result.accepted.push_back(z0);
    result.parent.push_back(-1);

    for (int i = 0; i < cfg.max_iters; ++i) {
        const Vector sample = rng.uniform_vector(lo, hi);
        const auto [near_idx, near_dist] = nearest(result.accepted, sample);
        if (near_dist == 0.0) continue;  // degenerate direction

        const Vector& anchor = result.accepted[static_cast<std::size_t>(near_idx)];
        const Vector candidate = anchor + (cfg.step_delta / near_dist) * (sample - anchor);

        if (!contains(region, candidate)) {
            result.rejected.push_back(candidate);
            continue;
        }
        const auto [nn_idx, nn_dist] = nearest(result.accepted, candidate);
        (void)nn_idx;
        if (nn_dist > cfg.step_delta) {
            result.accepted.push_back(candidate);
            result.parent.push_back(near_idx);
        }
    }
    return result;
}

EgbasResult e_gbas(const Network& net, const Vector& z0, Index layer, double threshold_p,
                   BerOptConfig beropt_cfg, RrtConfig rrt_cfg) {
    beropt_cfg.threshold_p = threshold_p;

    EgbasResult out;
    out.beropt = beropt(net, z0, layer, beropt_cfg);

    // A kept unit with pre-activation exactly zero has no defined side;
    // drop it rather than constrain on an undefined sign.
    const Vector pre = forward_to(net, z0, layer).pre_activation;
    IndexSet keep;
    for (Index i : out.beropt.keep_set) {
        if (pre[i] == 0.0)
            out.dropped_units.push_back(i);
        else
            keep.push_back(i);
    }

    out.region.network = &net;
    out.region.indicator = indicator_from_query(net, z0, layer, keep);
    out.exploration = gb_rrt(z0, out.region, rrt_cfg);
    return out;
}

}  // namespace gbas
