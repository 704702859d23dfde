#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zenolink/protocol.hpp"

namespace zenolink {

enum class NoiseMode { PerShot, StaticDevice };

// Gaussian beam-splitter angle noise: theta_i ~ Normal(mean_angle, sigma^2).
// PerShot draws a fresh stack for every process; StaticDevice draws one stack
// per logical bit (shared by its M processes).
struct NoiseModel {
    double mean_angle = 0.0;  // radians; pi/2N for the ideal device
    double sigma_theta = 0.0; // radians, >= 0
    NoiseMode mode = NoiseMode::PerShot;

    static NoiseModel for_device(int n_splitters, double sigma,
                                 NoiseMode mode = NoiseMode::PerShot);
};

const char* to_string(NoiseMode m);

// Draw N i.i.d. angles. Samples with |theta| >= pi/2 are clamped to
// +-(pi/2 - 1e-9) and counted (probability ~0 at sigma = 0.01).
BeamSplitterStack sample_stack(int n_splitters, const NoiseModel& noise, RandomStream& rng);

// In-place variant used by the trial loops; returns number of clamped draws.
int sample_stack_into(std::vector<double>& angles, int n_splitters,
                      const NoiseModel& noise, RandomStream& rng);

struct RateRow {
    int m = 0;
    double bit_error_rate = 0.0;
    double violation_rate = 0.0;
    double stderr_bit = 0.0;
    double stderr_violation = 0.0;
    std::uint64_t trials = 0;
};

struct RateCurve {
    std::vector<RateRow> rows;
    int n_splitters = 0;
    double sigma_theta = 0.0;
    double bit_mix = 0.5;
    NoiseMode mode = NoiseMode::PerShot;
    std::uint64_t seed = 0;
    std::uint64_t clamped_samples = 0;
    // Rates are reported per logical bit of the mixed sent stream.
    std::string normalization = "per_logical_bit";
};

// Monte Carlo of the M-encoding: for each M, trials_per_m logical bits are
// simulated through run_logical_bit; bit errors (decoded != sent) and
// interaction-free violations are tallied with binomial standard errors.
// bit_mix is the fraction of logical-1 transmissions in the sent stream.
// Deterministic for fixed (seed, config), independent of thread count.
RateCurve estimate_rates(int n_splitters, const NoiseModel& noise,
                         const std::vector<int>& m_values, std::uint64_t trials_per_m,
                         double bit_mix, std::uint64_t seed, unsigned threads = 0);

// Expected rates by numerical integration over the angle noise: quadrature
// over sum(theta) for the 0-bit return probability, per-angle product
// expectation for the 1-bit success, combined per the M-encoding. Exact for
// PerShot (processes are independent); for StaticDevice the logical-1 side is
// integrated by a fixed-seed Monte Carlo average over device stacks.
RateCurve analytic_rates(int n_splitters, const NoiseModel& noise,
                         const std::vector<int>& m_values, double bit_mix = 0.5);

// Mean of f(theta), theta ~ Normal(mu, sigma^2), by composite Simpson over
// +-10 sigma. Exposed for the quadrature-vs-identity cross checks.
double gaussian_expect(const std::function<double(double)>& f, double mu, double sigma);

// ZENOLINK_THREADS env var caps the worker count; 0 requests the default.
unsigned resolve_thread_count(unsigned requested);

} // namespace zenolink
