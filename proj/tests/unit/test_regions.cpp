#include "gbas/regions.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace gbas;
using gbas::test::make_random_net;
using gbas::test::oracle_forward;

namespace {

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

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("sign_pattern reads the sign of the input through an identity net") {
    const Network net = identity2();
    const SignVector s = sign_pattern(net, vec2(1.0, -2.0), 1);
    CHECK(s[0] == 1);
    CHECK(s[1] == -1);
}

TEST_CASE("sign_pattern is zero exactly on a boundary") {
    const Network net = identity2();
    const SignVector s = sign_pattern(net, vec2(0.0, 3.0), 1);
    CHECK(s[0] == 0);
    CHECK(s[1] == 1);
}

TEST_CASE("sign_pattern matches direct evaluation on a grid") {
    const Network net = make_random_net(12, {2, 8}, {ActivationKind::ReLU});
    for (double x : {-1.0, 0.0, 1.0}) {
        for (double y : {-1.0, 0.0, 1.0}) {
            const SignVector s = sign_pattern(net, vec2(x, y), 1);
            const auto pre = oracle_forward(net, {x, y}, 1, false);
            for (Index i = 0; i < 8; ++i) {
                const double v = pre[static_cast<std::size_t>(i)];
                const int expect = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
                CHECK(s[i] == expect);
            }
        }
    }
}

TEST_CASE("an all-zero indicator accepts everything") {
    const Network net = make_random_net(4, {2, 6}, {ActivationKind::Tanh});
    RegionSpec region{&net, HalfspaceIndicator{1, SignVector::Zero(6)}};
    Rng rng(5);
    for (int i = 0; i < 50; ++i) CHECK(contains(region, rng.gaussian_vector(2)));
}

TEST_CASE("the query is a member of any region built from its own signs") {
    const Network net = make_random_net(8, {2, 10, 7},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const Vector z0 = rng.gaussian_vector(2);
        for (Index layer = 1; layer <= 2; ++layer) {
            IndexSet keep;
            for (Index i = 0; i < net.layer_dim(layer); ++i)
                if (rng.bernoulli(0.5)) keep.push_back(i);
            RegionSpec region{&net, indicator_from_query(net, z0, layer, keep)};
            CHECK(contains(region, z0));
        }
    }
}

TEST_CASE("contains agrees with a brute-force inequality check") {
    const Network net = make_random_net(31, {2, 9}, {ActivationKind::ReLU});
    const Vector z0 = vec2(0.3, -0.4);
    const IndexSet keep = {0, 2, 3, 7};
    const RegionSpec region{&net, indicator_from_query(net, z0, 1, keep)};

    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        const Vector z = rng.gaussian_vector(2);
        const auto pre = oracle_forward(net, {z[0], z[1]}, 1, false);
        bool expect = true;
        for (Index k : keep) {
            const double v = pre[static_cast<std::size_t>(k)];
            if (static_cast<double>(region.indicator.entries[k]) * v < 0.0) expect = false;
        }
        CHECK(contains(region, z) == expect);
    }
}

TEST_CASE("contains agrees with brute force on a dense 200x200 grid") {
    const Network net = make_random_net(63, {2, 8, 6},
                                        {ActivationKind::ReLU, ActivationKind::Tanh});
    const Vector z0 = vec2(0.5, 0.25);
    const IndexSet keep = {0, 1, 4};
    const RegionSpec region{&net, indicator_from_query(net, z0, 2, keep)};

    int mismatches = 0;
    for (int ix = 0; ix < 200; ++ix) {
        for (int iy = 0; iy < 200; ++iy) {
            const double x = -3.0 + 6.0 * (ix + 0.5) / 200.0;
            const double y = -3.0 + 6.0 * (iy + 0.5) / 200.0;
            const auto pre = oracle_forward(net, {x, y}, 2, false);
            bool expect = true;
            for (Index k : keep)
                if (static_cast<double>(region.indicator.entries[k]) *
                        pre[static_cast<std::size_t>(k)] < 0.0)
                    expect = false;
            if (contains(region, vec2(x, y)) != expect) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("shares_nrs is reflexive and vacuous on an empty support") {
    const Network net = make_random_net(3, {2, 5}, {ActivationKind::Tanh});
    Rng rng(9);
    const Vector z1 = rng.gaussian_vector(2);
    const Vector z2 = rng.gaussian_vector(2);
    CHECK(shares_nrs(net, z1, z1, 1));
    CHECK(shares_nrs(net, z1, z1, 1, IndexSet{0, 3}));
    CHECK(shares_nrs(net, z1, z2, 1, IndexSet{}));
}

TEST_CASE("points straddling one boundary fail sharing on that unit") {
    const Network net = make_random_net(14, {2, 6}, {ActivationKind::Identity});
    // walk along a line until unit 2 flips sign
    Rng rng(2);
    Vector z1, z2;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
        const Vector a = rng.gaussian_vector(2);
        const Vector b = rng.gaussian_vector(2);
        const SignVector sa = sign_pattern(net, a, 1);
        const SignVector sb = sign_pattern(net, b, 1);
        if (sa[2] != 0 && sb[2] != 0 && sa[2] != sb[2]) {
            z1 = a;
            z2 = b;
            found = true;
        }
    }
    REQUIRE(found);
    CHECK_FALSE(shares_nrs(net, z1, z2, 1, IndexSet{2}));
}

TEST_CASE("indicator_from_query keeps only the requested units") {
    const Network net = make_random_net(25, {2, 8}, {ActivationKind::ReLU});
    const Vector z0 = vec2(-0.8, 1.1);
    const SignVector full = sign_pattern(net, z0, 1);

    SUBCASE("empty keep yields the all-zero indicator") {
        const HalfspaceIndicator ind = indicator_from_query(net, z0, 1, IndexSet{});
        CHECK(ind.entries.isZero());
        CHECK(ind.support().empty());
    }

    SUBCASE("full keep reproduces the sign pattern") {
        IndexSet all;
        for (Index i = 0; i < 8; ++i) all.push_back(i);
        const HalfspaceIndicator ind = indicator_from_query(net, z0, 1, all);
        CHECK(ind.entries == full);
    }

    SUBCASE("partial keep zeroes the rest") {
        const HalfspaceIndicator ind = indicator_from_query(net, z0, 1, IndexSet{2, 5});
        for (Index i = 0; i < 8; ++i)
            CHECK(ind.entries[i] == ((i == 2 || i == 5) ? full[i] : 0));
        CHECK(ind.support() == IndexSet{2, 5});
    }
}

TEST_CASE("membership is monotone in the keep-set") {
    const Network net = make_random_net(44, {2, 7}, {ActivationKind::ReLU});
    const Vector z0 = vec2(0.2, 0.6);
    const IndexSet small = {1, 3};
    const IndexSet large = {1, 3, 4, 6};
    const RegionSpec region_small{&net, indicator_from_query(net, z0, 1, small)};
    const RegionSpec region_large{&net, indicator_from_query(net, z0, 1, large)};

    Rng rng(100);
    for (int i = 0; i < 200; ++i) {
        const Vector z = rng.gaussian_vector(2) * 2.0;
        if (contains(region_large, z)) CHECK(contains(region_small, z));
    }
}

TEST_CASE("mutual membership matches relaxed sharing away from boundaries") {
    const Network net = make_random_net(50, {2, 6, 5},
                                        {ActivationKind::LeakyReLU, ActivationKind::Tanh});
    const IndexSet support = {0, 2, 4};
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const Vector z1 = rng.gaussian_vector(2);
        const Vector z2 = rng.gaussian_vector(2);
        const SignVector s1 = sign_pattern(net, z1, 2);
        const SignVector s2 = sign_pattern(net, z2, 2);
        bool on_boundary = false;
        for (Index k : support)
            if (s1[k] == 0 || s2[k] == 0) on_boundary = true;
        if (on_boundary) continue;

        const RegionSpec r1{&net, indicator_from_query(net, z1, 2, support)};
        const RegionSpec r2{&net, indicator_from_query(net, z2, 2, support)};
        const bool mutual = contains(r1, z2) && contains(r2, z1);
        CHECK(mutual == shares_nrs(net, z1, z2, 2, support));
    }
}
