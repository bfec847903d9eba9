#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace selfsim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for sub-stream k of a master seed: the k-th output of a SplitMix64
// generator seeded with `master`.  Every consumer of randomness (traffic
// source i, sweep row j, the service process) owns one sub-stream, so
// reseeding or re-ordering one consumer leaves all other draws untouched.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t k) noexcept {
    return splitmix_mix(master + (k + 1) * 0x9e3779b97f4a7c15ULL);
}

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

// 53-bit uniform on (0, 1]; never zero, so it is safe under log(u) and
// u^(-1/beta).
inline double uniform_open0(Rng& g) {
    return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
}

// 53-bit uniform on [0, 1).
inline double uniform_co(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Box-Muller, cosine branch.  Stateless: two uniforms in, one variate out,
// so the draw sequence does not depend on hidden cache state.
inline double standard_normal(Rng& g) {
    const double u1 = uniform_open0(g);
    const double u2 = uniform_co(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Exponential with the given mean, by inversion.
inline double exponential_sample(Rng& g, double mean) {
    return -mean * std::log(uniform_open0(g));
}

namespace detail {

// Knuth's product method; valid while exp(-mean) stays away from underflow.
inline std::uint64_t poisson_small(Rng& g, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = uniform_open0(g);
    while (p > limit) {
        ++k;
        p *= uniform_open0(g);
    }
    return k;
}

}  // namespace detail

// Exact Poisson sample.  Means above 30 are drawn as sums of independent
// smaller Poissons, which keeps exp(-mean) representable at any rate.
inline std::uint64_t poisson_sample(Rng& g, double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
        total += detail::poisson_small(g, 30.0);
        mean -= 30.0;
    }
    return total + detail::poisson_small(g, mean);
}

}  // namespace selfsim
