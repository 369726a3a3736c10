#include "gbas/baselines.hpp"

#include "gbas/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace gbas;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("calibrate averages the min and max rejected distance") {
    const std::vector<Vector> accepted = {vec2(0, 0)};
    const std::vector<Vector> rejected = {vec2(1, 0), vec2(3, 0)};
    const EpsCalibration cal = calibrate(accepted, rejected);
    CHECK(cal.z_avg == vec2(0, 0));
    CHECK(cal.eps_l2 == doctest::Approx(2.0));
}

TEST_CASE("two-dimensional volume matching has a closed form") {
    // pi eps^2 = (2r)^2  =>  r = eps sqrt(pi) / 2
    const double eps = 1.7;
    CHECK(matched_linf_radius(2, eps) == doctest::Approx(eps * std::sqrt(M_PI) / 2.0));
}

TEST_CASE("ball volumes match analytically across dimensions") {
    for (Index dim : {2, 5, 10, 64}) {
        const double eps = 0.8;
        const double r = matched_linf_radius(dim, eps);
        CHECK(std::abs(l2_ball_log_volume(dim, eps) - linf_ball_log_volume(dim, r)) < 1e-9);
    }
}

TEST_CASE("volume matching in ten dimensions survives a Monte-Carlo check") {
    // Estimate the unit L2 ball volume from the enclosing cube and
    // compare against the cube implied by the matched radius.
    const Index dim = 10;
    const double eps = 1.0;
    const double r = matched_linf_radius(dim, eps);

    Rng rng(2024);
    const int n = 10'000'000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (Index d = 0; d < dim; ++d) {
            const double x = rng.uniform(-1.0, 1.0);
            sq += x * x;
        }
        if (sq <= 1.0) ++inside;
    }
    const double mc_volume = std::pow(2.0, dim) * inside / n;
    const double matched_volume = std::exp(linf_ball_log_volume(dim, r));
    CHECK(std::abs(mc_volume - matched_volume) / matched_volume < 0.02);
}

TEST_CASE("calibration only sees the multiset of distances") {
    Rng rng(5);
    std::vector<Vector> accepted, rejected;
    for (int i = 0; i < 40; ++i) accepted.push_back(rng.gaussian_vector(3));
    for (int i = 0; i < 25; ++i) rejected.push_back(rng.gaussian_vector(3) * 2.0);

    const EpsCalibration a = calibrate(accepted, rejected);
    std::reverse(rejected.begin(), rejected.end());
    const EpsCalibration b = calibrate(accepted, rejected);
    CHECK(a.eps_l2 == b.eps_l2);
    CHECK(a.eps_linf == b.eps_linf);
}

TEST_CASE("calibration refuses empty inputs") {
    const std::vector<Vector> some = {vec2(0, 0)};
    const std::vector<Vector> none;
    CHECK_THROWS_AS(calibrate(none, some), NumericError);
    CHECK_THROWS_AS(calibrate(some, none), NumericError);
}

TEST_CASE("l2 ball samples stay inside and have the right radial law") {
    const Vector center = vec2(1.0, -2.0);
    const double eps = 0.7;
    const auto points = sample_l2_ball(center, eps, 1000, 11);

    double radius_sum = 0.0;
    int inside_half = 0;
    for (const Vector& p : points) {
        const double r = (p - center).norm();
        CHECK(r <= eps + 1e-12);
        radius_sum += r;
        if (r <= eps / 2.0) ++inside_half;
    }
    // mean radius for D=2 is (2/3) eps
    CHECK(radius_sum / 1000.0 == doctest::Approx(2.0 / 3.0 * eps).epsilon(0.05));
    // uniform volume law: P(r <= eps/2) = (1/2)^D, within 3 sigma
    const double p = 0.25;
    const double sigma = std::sqrt(p * (1 - p) / 1000.0);
    CHECK(std::abs(inside_half / 1000.0 - p) <= 3.0 * sigma);
}

TEST_CASE("l2 ball volume law holds in five dimensions") {
    Vector center = Vector::Zero(5);
    const auto points = sample_l2_ball(center, 1.0, 4000, 13);
    int inside_half = 0;
    for (const Vector& p : points)
        if (p.norm() <= 0.5) ++inside_half;
    const double p = std::pow(0.5, 5);
    const double sigma = std::sqrt(p * (1 - p) / 4000.0);
    CHECK(std::abs(inside_half / 4000.0 - p) <= 3.0 * sigma);
}

TEST_CASE("a degenerate ball collapses to its center") {
    const Vector center = vec2(0.25, 0.75);
    for (const Vector& p : sample_l2_ball(center, 1e-12, 50, 17))
        CHECK((p - center).norm() <= 1e-11);
}

TEST_CASE("linf ball samples respect the box exactly") {
    const Vector center = vec2(-0.5, 2.0);
    const double r = 0.4;
    const auto points = sample_linf_ball(center, r, 1000, 19);
    Vector mean = Vector::Zero(2);
    for (const Vector& p : points) {
        CHECK((p - center).lpNorm<Eigen::Infinity>() <= r);
        mean += p;
    }
    mean /= 1000.0;
    // CLT bound: sd of the mean per coordinate is r/sqrt(3n)
    const double bound = 3.0 * r / std::sqrt(3.0 * 1000.0);
    CHECK(std::abs(mean[0] - center[0]) <= bound);
    CHECK(std::abs(mean[1] - center[1]) <= bound);
}

TEST_CASE("one-dimensional linf sampling is uniform by chi-square") {
    Vector center(1);
    center << 0.0;
    const double r = 1.0;
    const auto points = sample_linf_ball(center, r, 1000, 23);

    constexpr int kBins = 20;
    int counts[kBins] = {};
    for (const Vector& p : points) {
        int bin = static_cast<int>((p[0] + r) / (2.0 * r) * kBins);
        bin = std::clamp(bin, 0, kBins - 1);
        ++counts[bin];
    }
    const double expected = 1000.0 / kBins;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // chi-square critical value, 19 degrees of freedom, alpha = 0.01
    CHECK(chi2 < 36.1909);
}
