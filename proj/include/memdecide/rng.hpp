// Seeded random source for every stochastic operation in the simulator.
//
// Distributions are computed from raw engine bits with fixed formulas so that
// a given seed produces identical streams on every standard library.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace memdecide {

/// SplitMix64 finalizer. Used for seed derivation, not as a generator.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stable hash of (master seed, coordinates...). The chain is
/// h0 = mix64(master), h_{i+1} = mix64(h_i ^ c_i); changing it changes every
/// published result, so treat it as frozen.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> coords) noexcept
{
    std::uint64_t h = mix64(master);
    for (auto c : coords) {
        h = mix64(h ^ c);
    }
    return h;
}

class Rng {
public:
    using Engine = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one draw per call, no caching so the
    /// stream position depends only on the call count).
    double normal();

    /// Independent child stream; advances this stream by one draw.
    Rng split() { return Rng(mix64(engine_())); }

private:
    Engine engine_;
};

}  // namespace memdecide
