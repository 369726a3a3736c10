#pragma once

#include "gbas/beropt.hpp"
#include "gbas/regions.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gbas {

struct RrtConfig {
    Vector interval;            // per-dimension half-width I of the sampling box
    int max_iters = 20000;      // N
    double step_delta = 0.15;   // step size
    std::uint64_t seed = 0;
};

/// Defaults sized for standard-normal latents: the box covers about
/// three sigma per dimension and the step is 5% of its half-width.
RrtConfig default_rrt_config(Index latent_dim, std::uint64_t seed = 0);

struct ExplorationResult {
    std::vector<Vector> accepted;  // tree nodes in insertion order; accepted[0] == z0
    std::vector<Vector> rejected;  // candidates that failed region membership
    std::vector<Index> parent;     // parent[i] indexes accepted; parent[0] == -1
};

/// Exact linear-scan nearest neighbour: argmin Euclidean distance, ties
/// broken by lowest index. This scan is the contract; any accelerating
/// index must reproduce it exactly.
std::pair<Index, double> nearest(std::span<const Vector> points, const Vector& q);

/// Region-constrained tree exploration. Each iteration samples
/// z ~ U(z0 - I, z0 + I), steps step_delta from the nearest node toward
/// it, and accepts the candidate iff it lies in the region and its
/// distance to the then-nearest node strictly exceeds step_delta. Only
/// membership failures are recorded as rejected; spacing failures say
/// nothing about the region. Deterministic given cfg.seed.
ExplorationResult gb_rrt(const Vector& z0, const RegionSpec& region, const RrtConfig& cfg);

struct EgbasResult {
    BerOptResult beropt;
    RegionSpec region;
    ExplorationResult exploration;
    /// Keep-set units whose pre-activation at the query is exactly zero:
    /// their side of the boundary is undefined, so they are dropped with
    /// a warning before the region is built.
    IndexSet dropped_units;
};

/// End-to-end pipeline: optimize the Bernoulli mask, threshold it at
/// `threshold_p` into a keep-set, derive the query's region indicator,
/// and explore the region. The returned RegionSpec borrows `net`.
EgbasResult e_gbas(const Network& net, const Vector& z0, Index layer, double threshold_p,
                   BerOptConfig beropt_cfg, RrtConfig rrt_cfg);

}  // namespace gbas
