#include "gbas/metrics.hpp"

#include "gbas/baselines.hpp"
#include "gbas/explorer.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gbas;
using gbas::test::make_random_net;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Network identity2() {
    Network net;
    net.latent_dim = 2;
    Layer layer;
    layer.weight = Matrix::Identity(2, 2);
    layer.bias = Vector::Zero(2);
    layer.activation = ActivationKind::Identity;
    net.layers.push_back(std::move(layer));
    return net;
}

SampleSet set_of(std::vector<Vector> points, const Vector& query) {
    SampleSet set;
    set.method = SampleMethod::EGBAS;
    set.query = query;
    set.layer_index = 1;
    set.points = std::move(points);
    return set;
}

}  // namespace

TEST_CASE("a single sample has zero output deviation") {
    const Network net = make_random_net(1, {2, 6, 4},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    CHECK(output_std(net, set_of({vec2(0.3, 0.4)}, vec2(0.3, 0.4))) == 0.0);
}

TEST_CASE("two outputs differing by a constant shift give half the shift") {
    // identity net: outputs are the latents themselves
    const Network net = identity2();
    const double c = 0.6;
    const auto set = set_of({vec2(0.0, 0.0), vec2(c, c)}, vec2(0, 0));
    // per element population std = c/2, mean over elements = c/2
    CHECK(output_std(net, set) == doctest::Approx(c / 2.0).epsilon(1e-12));
}

TEST_CASE("output_std matches an independent two-formula computation") {
    const Network net = make_random_net(8, {2, 7, 5},
                                        {ActivationKind::LeakyReLU, ActivationKind::Tanh});
    Rng rng(9);
    std::vector<Vector> points;
    for (int i = 0; i < 100; ++i) points.push_back(rng.gaussian_vector(2));
    const double sigma = output_std(net, set_of(points, points[0]));

    // E[x^2] - E[x]^2 route, plain loops
    const Index out_dim = net.output_dim();
    std::vector<double> sum(out_dim, 0.0), sum_sq(out_dim, 0.0);
    for (const Vector& z : points) {
        const Vector x = generate(net, z);
        for (Index e = 0; e < out_dim; ++e) {
            sum[static_cast<std::size_t>(e)] += x[e];
            sum_sq[static_cast<std::size_t>(e)] += x[e] * x[e];
        }
    }
    double expect = 0.0;
    for (Index e = 0; e < out_dim; ++e) {
        const double mean = sum[static_cast<std::size_t>(e)] / 100.0;
        expect += std::sqrt(sum_sq[static_cast<std::size_t>(e)] / 100.0 - mean * mean);
    }
    expect /= static_cast<double>(out_dim);
    CHECK(sigma == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("output_std ignores sample order and duplication") {
    const Network net = make_random_net(12, {2, 5, 3},
                                        {ActivationKind::Tanh, ActivationKind::Identity});
    Rng rng(13);
    std::vector<Vector> points;
    for (int i = 0; i < 30; ++i) points.push_back(rng.gaussian_vector(2));
    const double base = output_std(net, set_of(points, points[0]));

    std::vector<Vector> shuffled = points;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(output_std(net, set_of(shuffled, points[0])) == doctest::Approx(base).epsilon(1e-12));

    std::vector<Vector> doubled = points;
    doubled.insert(doubled.end(), points.begin(), points.end());
    CHECK(output_std(net, set_of(doubled, points[0])) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("the query is perfectly similar to itself at every layer") {
    const Network gen = make_random_net(21, {2, 6, 4},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    const Network disc = make_random_net(22, {4, 5, 3, 1},
                                         {ActivationKind::LeakyReLU, ActivationKind::LeakyReLU,
                                          ActivationKind::Sigmoid});
    const Vector z0 = vec2(0.2, -0.8);
    const auto report = disc_similarity(disc, gen, set_of({z0}, z0), z0);
    REQUIRE(report.size() == 3);
    for (const LayerCosine& lc : report) {
        CHECK(lc.mean_cosine == 1.0);  // exact: identical feature vectors
        CHECK(lc.excluded == 0);
    }
}

TEST_CASE("orthogonal features give zero cosine") {
    const Network gen = identity2();
    Network disc = identity2();  // features are the generated coordinates
    const Vector z0 = vec2(1.0, 0.0);
    const auto report = disc_similarity(disc, gen, set_of({vec2(0.0, 1.0)}, z0), z0);
    REQUIRE(report.size() == 1);
    CHECK(report[0].mean_cosine == doctest::Approx(0.0));
}

TEST_CASE("zero-norm features are excluded and counted") {
    const Network gen = identity2();
    Network disc;
    disc.latent_dim = 2;
    Layer layer;
    layer.weight = Matrix::Identity(2, 2);
    layer.bias = Vector::Zero(2);
    layer.activation = ActivationKind::ReLU;
    disc.layers.push_back(layer);

    const Vector z0 = vec2(1.0, 1.0);
    // first sample lands in the dead quadrant of the ReLU features
    const auto report =
        disc_similarity(disc, gen, set_of({vec2(-1.0, -1.0), vec2(1.0, 0.5)}, z0), z0);
    REQUIRE(report.size() == 1);
    CHECK(report[0].excluded == 1);
    CHECK(report[0].mean_cosine > 0.9);
}

TEST_CASE("disc_similarity matches a direct recomputation over 50 samples") {
    const Network gen = make_random_net(31, {2, 8, 6},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    const Network disc = make_random_net(32, {6, 7, 4},
                                         {ActivationKind::LeakyReLU, ActivationKind::Tanh});
    Rng rng(33);
    std::vector<Vector> points;
    for (int i = 0; i < 50; ++i) points.push_back(rng.gaussian_vector(2));
    const Vector z0 = rng.gaussian_vector(2);
    const auto report = disc_similarity(disc, gen, set_of(points, z0), z0);

    for (Index layer = 1; layer <= 2; ++layer) {
        const Vector f0 = forward_to(disc, generate(gen, z0), layer).post_activation;
        double sum = 0.0;
        for (const Vector& z : points) {
            const Vector f = forward_to(disc, generate(gen, z), layer).post_activation;
            sum += f.dot(f0) / (f.norm() * f0.norm());
        }
        CHECK(report[static_cast<std::size_t>(layer - 1)].mean_cosine ==
              doctest::Approx(sum / 50.0).epsilon(1e-10));
    }
}

TEST_CASE("region distortion is the max output displacement") {
    const Network net = identity2();
    const Vector z0 = vec2(0, 0);

    CHECK(region_distortion(net, set_of({z0}, z0), z0) == 0.0);

    const auto set = set_of({vec2(0.3, 0.4), vec2(-0.6, 0.8)}, z0);
    CHECK(region_distortion(net, set, z0) == doctest::Approx(1.0));  // max(0.5, 1.0)
}

TEST_CASE("scaling a homogeneous pipeline scales sigma and fixes cosines") {
    // zero-bias ReLU stacks are positively homogeneous, so doubling the
    // generator output scales features linearly
    Network gen = make_random_net(41, {2, 6, 4},
                                  {ActivationKind::ReLU, ActivationKind::Identity});
    for (Layer& layer : gen.layers) layer.bias.setZero();
    Network disc = make_random_net(42, {4, 5, 3},
                                   {ActivationKind::ReLU, ActivationKind::ReLU});
    for (Layer& layer : disc.layers) layer.bias.setZero();

    Network gen_scaled = gen;
    gen_scaled.layers.back().weight *= 3.0;

    Rng rng(43);
    std::vector<Vector> points;
    for (int i = 0; i < 40; ++i) points.push_back(rng.gaussian_vector(2));
    const Vector z0 = rng.gaussian_vector(2);

    const auto set = set_of(points, z0);
    CHECK(output_std(gen_scaled, set) ==
          doctest::Approx(3.0 * output_std(gen, set)).epsilon(1e-10));

    const auto base = disc_similarity(disc, gen, set, z0);
    const auto scaled = disc_similarity(disc, gen_scaled, set, z0);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t l = 0; l < base.size(); ++l)
        CHECK(scaled[l].mean_cosine == doctest::Approx(base[l].mean_cosine).epsilon(1e-10));
}

TEST_CASE("region-constrained sampling usually beats the l2 ball on distortion") {
    const Network net = make_random_net(51, {2, 9, 7},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    int wins = 0;
    for (std::uint64_t q = 0; q < 10; ++q) {
        Rng rng(60 + q);
        const Vector z0 = rng.gaussian_vector(2);
        BerOptConfig bo;
        bo.lambda = 0.01;
        bo.seed = 70 + q;
        RrtConfig rrt;
        rrt.interval = Vector::Constant(2, 3.0);
        rrt.step_delta = 0.15;
        rrt.max_iters = 1500;
        rrt.seed = 80 + q;
        const EgbasResult eg = e_gbas(net, z0, 1, 0.5, bo, rrt);
        if (eg.exploration.rejected.empty()) continue;

        const EpsCalibration cal = calibrate(eg.exploration.accepted, eg.exploration.rejected);
        const auto ball = sample_l2_ball(z0, cal.eps_l2,
                                         static_cast<int>(eg.exploration.accepted.size()),
                                         90 + q);
        const double d_egbas =
            region_distortion(net, set_of(eg.exploration.accepted, z0), z0);
        const double d_ball = region_distortion(net, set_of(ball, z0), z0);
        if (d_egbas <= d_ball) ++wins;
    }
    CHECK(wins >= 8);
}
