#pragma once

#include "gbas/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace gbas {

/// Mixes a base seed with stream tags (e.g. query index, layer, role) so
/// that each pipeline cell owns an independent, reproducible stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    auto split = [](std::uint64_t& s) {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t s = seed;
    std::uint64_t h = split(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= split(s);
    s ^= b + 0xc2b2ae3d27d4eb4fULL;
    h ^= split(s);
    s ^= c + 0x165667b19e3779f9ULL;
    h ^= split(s);
    return h;
}

// Seeded random source. Uniform and gaussian draws are implemented here
// rather than via std:: distributions so that a seed produces the same
// sequence on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    Vector gaussian_vector(Index n) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    Vector uniform_vector(const Vector& lo, const Vector& hi) {
        Vector v(lo.size());
        for (Index i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
        return v;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gbas
