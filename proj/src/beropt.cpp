#include "gbas/beropt.hpp"

#include <cmath>
#include <limits>

namespace gbas {

namespace {

void check_mask(const Network& net, Index layer, const Vector& mask, const char* op) {
    if (mask.size() != net.layer_dim(layer))
        throw DimensionError(std::string(op) + ": mask length " +
                             std::to_string(mask.size()) + " does not match layer width " +
                             std::to_string(net.layer_dim(layer)));
}

Vector sample_mask(const Vector& theta, Rng& rng) {
    Vector m(theta.size());
    for (Index i = 0; i < theta.size(); ++i) m[i] = rng.bernoulli(theta[i]) ? 1.0 : 0.0;
    return m;
}

Vector hard_mask(const Vector& theta, double p) {
    Vector m(theta.size());
    for (Index i = 0; i < theta.size(); ++i) m[i] = theta[i] > p ? 1.0 : 0.0;
    return m;
}

}  // namespace

Vector masked_forward(const Network& net, const Vector& z0, Index layer, const Vector& mask) {
    check_mask(net, layer, mask, "masked_forward");
    const Vector h0 = forward_to(net, z0, layer).post_activation;
    return forward_from(net, h0.cwiseProduct(mask), layer);
}

double beropt_loss(const Network& net, const Vector& z0, Index layer, const Vector& theta,
                   const Vector& mask, double lambda) {
    if (lambda < 0.0) throw NumericError("beropt_loss: lambda must be nonnegative");
    const Vector x0 = generate(net, z0);
    const Vector xm = masked_forward(net, z0, layer, mask);
    return (xm - x0).norm() + lambda * theta.sum();
}

Vector straight_through_gradient(const Network& net, const Vector& z0, Index layer,
                                 const Vector& theta, const Vector& mask, double lambda) {
    check_mask(net, layer, mask, "straight_through_gradient");
    const Vector h0 = forward_to(net, z0, layer).post_activation;
    const Vector x0 = forward_from(net, h0, layer);
    const Vector hm = h0.cwiseProduct(mask);
    const Vector xm = forward_from(net, hm, layer);

    const Vector r = xm - x0;
    const double norm = r.norm();
    Vector grad = Vector::Constant(theta.size(), lambda);
    if (norm > 0.0) {
        // d||r||/d(hm) via the tail VJP, then d(hm)/d(mask) = h0 and the
        // straight-through identity d(mask)/d(theta) = 1.
        const Vector g_hm = backprop_to_hidden(net, hm, layer, r / norm);
        grad += g_hm.cwiseProduct(h0);
    }
    return grad;
}

Vector gradient_step(const Network& net, const Vector& z0, Index layer, const Vector& theta,
                     const BerOptConfig& cfg, Rng& rng, double* mean_loss_out) {
    if (theta.size() != net.layer_dim(layer))
        throw DimensionError("gradient_step: theta length does not match layer width");

    const Vector h0 = forward_to(net, z0, layer).post_activation;
    const Vector x0 = forward_from(net, h0, layer);

    Vector grad = Vector::Zero(theta.size());
    double loss_sum = 0.0;
    for (int s = 0; s < cfg.samples_per_step; ++s) {
        const Vector m = sample_mask(theta, rng);
        const Vector hm = h0.cwiseProduct(m);
        const Vector xm = forward_from(net, hm, layer);
        const Vector r = xm - x0;
        const double norm = r.norm();
        loss_sum += norm + cfg.lambda * theta.sum();
        grad.array() += cfg.lambda;
        if (norm > 0.0)
            grad += backprop_to_hidden(net, hm, layer, r / norm).cwiseProduct(h0);
    }
    const double inv = 1.0 / cfg.samples_per_step;
    grad *= inv;
    if (mean_loss_out) *mean_loss_out = loss_sum * inv;

    Vector next = theta - cfg.learning_rate * grad;
    return next.cwiseMax(0.0).cwiseMin(1.0);
}

BerOptResult beropt(const Network& net, const Vector& z0, Index layer, const BerOptConfig& cfg) {
    if (cfg.max_iters < 1) throw ConfigError("beropt: max_iters must be >= 1");
    if (cfg.samples_per_step < 1) throw ConfigError("beropt: samples_per_step must be >= 1");
    if (!(cfg.threshold_p > 0.0 && cfg.threshold_p < 1.0))
        throw ConfigError("beropt: threshold_p must be strictly inside (0, 1)");
    if (cfg.learning_rate <= 0.0) throw ConfigError("beropt: learning_rate must be positive");
    if (cfg.lambda < 0.0) throw ConfigError("beropt: lambda must be nonnegative");
    if (cfg.convergence_tol < 0.0) throw ConfigError("beropt: convergence_tol must be >= 0");

    const Index width = net.layer_dim(layer);
    Rng rng(cfg.seed);

    BerOptResult result;
    result.theta_star.layer_index = layer;

    Vector theta = Vector::Constant(width, 0.5);
    Vector best_theta = theta;
    double best_loss = std::numeric_limits<double>::infinity();

    constexpr int kWindow = 20;
    double window_sum = 0.0;
    double prev_ma = std::numeric_limits<double>::quiet_NaN();

    for (int t = 0; t < cfg.max_iters; ++t) {
        double mean_loss = 0.0;
        Vector next = gradient_step(net, z0, layer, theta, cfg, rng, &mean_loss);
        result.loss_trace.push_back(mean_loss);
        if (mean_loss < best_loss) {
            best_loss = mean_loss;
            best_theta = theta;
        }
        theta = std::move(next);

        // Convergence: the 20-step moving average of the smoothed loss
        // moved by less than convergence_tol.
        window_sum += mean_loss;
        const int n = static_cast<int>(result.loss_trace.size());
        if (n > kWindow) window_sum -= result.loss_trace[static_cast<std::size_t>(n - kWindow - 1)];
        if (n >= kWindow) {
            const double ma = window_sum / kWindow;
            if (!std::isnan(prev_ma) && std::abs(ma - prev_ma) < cfg.convergence_tol) {
                result.converged = true;
                break;
            }
            prev_ma = ma;
        }
    }

    result.theta_star.theta = best_theta;
    result.final_loss = best_loss;
    for (Index i = 0; i < best_theta.size(); ++i)
        if (best_theta[i] > cfg.threshold_p) result.keep_set.push_back(i);
    result.distortion =
        beropt_loss(net, z0, layer, best_theta, hard_mask(best_theta, cfg.threshold_p), 0.0);
    return result;
}

}  // namespace gbas
