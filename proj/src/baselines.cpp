#include "gbas/baselines.hpp"

#include "gbas/rng.hpp"

#include <algorithm>
#include <cmath>

namespace gbas {

double l2_ball_log_volume(Index dim, double radius) {
    const double d = static_cast<double>(dim);
    return 0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d + 1.0) + d * std::log(radius);
}

double linf_ball_log_volume(Index dim, double radius) {
    return static_cast<double>(dim) * std::log(2.0 * radius);
}

double matched_linf_radius(Index dim, double eps) {
    const double d = static_cast<double>(dim);
    // (2r)^d = pi^(d/2) eps^d / Gamma(d/2 + 1)
    const double log_2r = std::log(eps) + 0.5 * std::log(M_PI) - std::lgamma(0.5 * d + 1.0) / d;
    return 0.5 * std::exp(log_2r);
}

EpsCalibration calibrate(std::span<const Vector> accepted, std::span<const Vector> rejected) {
    if (accepted.empty()) throw NumericError("calibrate: accepted sample set is empty");
    if (rejected.empty())
        throw NumericError("calibrate: rejected sample set is empty; the region was never "
                           "bounded inside the sampling box");

    Vector z_avg = Vector::Zero(accepted[0].size());
    for (const Vector& z : accepted) z_avg += z;
    z_avg /= static_cast<double>(accepted.size());

    double min_d = (z_avg - rejected[0]).norm();
    double max_d = min_d;
    for (const Vector& z : rejected.subspan(1)) {
        const double d = (z_avg - z).norm();
        min_d = std::min(min_d, d);
        max_d = std::max(max_d, d);
    }

    EpsCalibration cal;
    cal.z_avg = std::move(z_avg);
    cal.eps_l2 = 0.5 * (max_d + min_d);
    cal.eps_linf = matched_linf_radius(accepted[0].size(), cal.eps_l2);
    return cal;
}

std::vector<Vector> sample_l2_ball(const Vector& center, double eps, int n, std::uint64_t seed) {
    if (eps <= 0.0) throw NumericError("sample_l2_ball: eps must be positive");
    if (n < 1) throw ConfigError("sample_l2_ball: n must be >= 1");

    const Index dim = center.size();
    Rng rng(seed);
    std::vector<Vector> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vector dir = rng.gaussian_vector(dim);
        double norm = dir.norm();
        while (norm == 0.0) {
            dir = rng.gaussian_vector(dim);
            norm = dir.norm();
        }
        const double radius = eps * std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim));
        points.push_back(center + (radius / norm) * dir);
    }
    return points;
}

std::vector<Vector> sample_linf_ball(const Vector& center, double r, int n, std::uint64_t seed) {
    if (r <= 0.0) throw NumericError("sample_linf_ball: r must be positive");
    if (n < 1) throw ConfigError("sample_linf_ball: n must be >= 1");

    Rng rng(seed);
    const Vector lo = center.array() - r;
    const Vector hi = center.array() + r;
    std::vector<Vector> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) points.push_back(rng.uniform_vector(lo, hi));
    return points;
}

}  // namespace gbas
