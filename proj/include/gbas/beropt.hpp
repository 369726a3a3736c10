#pragma once

#include "gbas/network.hpp"
#include "gbas/rng.hpp"

#include <cstdint>
#include <vector>

namespace gbas {

/// Bernoulli keep-probabilities for one layer's units, clamped to [0, 1]
/// after every update.
struct MaskParams {
    Vector theta;
    Index layer_index = 0;
};

struct BerOptConfig {
    double lambda = 0.01;          // sparsity weight on ||theta||_1
    double learning_rate = 0.05;
    int max_iters = 500;
    int samples_per_step = 8;      // Monte-Carlo draws averaged per iteration
    double threshold_p = 0.5;      // keep unit i iff theta[i] > threshold_p
    std::uint64_t seed = 0;
    double convergence_tol = 1e-5; // on the 20-step moving average of loss
};

struct BerOptResult {
    MaskParams theta_star;
    IndexSet keep_set;                 // { i : theta_star[i] > threshold_p }
    std::vector<double> loss_trace;    // smoothed loss per iteration
    double final_loss = 0.0;           // smoothed loss at theta_star
    double distortion = 0.0;           // ||G_masked(z0) - G(z0)||_2 at the hard mask
    bool converged = false;            // moving-average criterion fired before max_iters
};

/// Tail output after masking the layer's hidden vector:
/// f_{L:l+1}(f_{l:1}(z0) .* mask). The mask may be hard {0,1} or soft
/// [0,1].
Vector masked_forward(const Network& net, const Vector& z0, Index layer, const Vector& mask);

/// ||masked_forward - G(z0)||_2 + lambda * sum(theta). theta is
/// nonnegative, so the penalty is its L1 norm.
double beropt_loss(const Network& net, const Vector& z0, Index layer, const Vector& theta,
                   const Vector& mask, double lambda);

/// Straight-through gradient of the loss w.r.t. theta for one explicit
/// mask: the forward pass uses the given mask, the backward pass treats
/// d(mask)/d(theta) as 1. Passing mask = theta evaluates the relaxed
/// (mean-mask) gradient, which is the analytic derivative of the soft
/// objective.
Vector straight_through_gradient(const Network& net, const Vector& z0, Index layer,
                                 const Vector& theta, const Vector& mask, double lambda);

/// One descent step: average loss and straight-through gradient over
/// cfg.samples_per_step Bernoulli(theta) draws, move against the
/// gradient, clamp to [0, 1]. Returns the updated theta; mean_loss_out,
/// when given, receives the smoothed loss at the pre-update theta.
Vector gradient_step(const Network& net, const Vector& z0, Index layer, const Vector& theta,
                     const BerOptConfig& cfg, Rng& rng, double* mean_loss_out = nullptr);

/// Bernoulli mask optimization: starts at theta = 0.5, iterates
/// gradient_step, and returns the best theta seen by smoothed loss.
/// Non-convergence is not an error; the result carries a converged flag
/// and the full loss trace. Deterministic given cfg.seed.
BerOptResult beropt(const Network& net, const Vector& z0, Index layer, const BerOptConfig& cfg);

}  // namespace gbas
