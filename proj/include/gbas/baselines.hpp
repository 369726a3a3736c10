#pragma once

#include "gbas/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gbas {

/// Calibrated ball radii for the epsilon baselines. The L-inf radius is
/// chosen so both balls enclose the same volume.
struct EpsCalibration {
    Vector z_avg;     // mean of the accepted samples
    double eps_l2 = 0.0;
    double eps_linf = 0.0;
};

/// log volume of the L2 ball of the given radius in `dim` dimensions.
double l2_ball_log_volume(Index dim, double radius);

/// log volume of the L-inf ball (cube of side 2r).
double linf_ball_log_volume(Index dim, double radius);

/// Radius r with (2r)^dim equal to the L2 ball volume of eps.
double matched_linf_radius(Index dim, double eps);

/// eps_l2 = (max + min)/2 of the distances from the accepted mean to the
/// rejected samples; eps_linf by volume matching. Fails loudly when
/// either list is empty - an unbounded region has no honest epsilon.
EpsCalibration calibrate(std::span<const Vector> accepted, std::span<const Vector> rejected);

/// n points uniform in the closed L2 ball: uniform direction, radius
/// eps * U^(1/dim).
std::vector<Vector> sample_l2_ball(const Vector& center, double eps, int n, std::uint64_t seed);

/// n points componentwise uniform in [center - r, center + r].
std::vector<Vector> sample_linf_ball(const Vector& center, double r, int n, std::uint64_t seed);

}  // namespace gbas
