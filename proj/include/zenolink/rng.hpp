#pragma once

#include <cstdint>
#include <random>

namespace zenolink {

// splitmix64 finalizer; used to derive well-separated substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded random stream. Every stochastic operation in the library takes one
// of these explicitly; a run is reproducible from (seed, parameters).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

    // Deterministic substream: independent stream keyed on (seed, a, b).
    static RandomStream substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        return RandomStream(mix64(seed ^ mix64(a ^ mix64(b))));
    }

    double uniform() { return uniform_(engine_); }                  // [0, 1)
    double normal(double mu, double sigma) { return mu + sigma * normal_(engine_); }
    bool bernoulli(double p) { return uniform() < p; }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace zenolink
