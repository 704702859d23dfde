#include "zenolink/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace zenolink {

namespace {
constexpr double kAngleClamp = std::numbers::pi / 2.0 - 1e-9;
constexpr std::uint64_t kChunkTrials = 8192;
} // namespace

NoiseModel NoiseModel::for_device(int n_splitters, double sigma, NoiseMode mode) {
    if (n_splitters < 1)
        throw std::invalid_argument("NoiseModel::for_device: N >= 1 required");
    if (sigma < 0.0)
        throw std::invalid_argument("NoiseModel::for_device: sigma_theta >= 0 required");
    return NoiseModel{std::numbers::pi / (2.0 * n_splitters), sigma, mode};
}

const char* to_string(NoiseMode m) {
    return m == NoiseMode::PerShot ? "per_shot" : "static_device";
}

int sample_stack_into(std::vector<double>& angles, int n_splitters,
                      const NoiseModel& noise, RandomStream& rng) {
    if (n_splitters < 1)
        throw std::invalid_argument("sample_stack: N >= 1 required");
    if (noise.sigma_theta < 0.0)
        throw std::invalid_argument("sample_stack: sigma_theta >= 0 required");
    angles.resize(static_cast<std::size_t>(n_splitters));
    int clamped = 0;
    for (double& th : angles) {
        th = noise.sigma_theta == 0.0 ? noise.mean_angle
                                      : rng.normal(noise.mean_angle, noise.sigma_theta);
        if (th >= kAngleClamp) { th = kAngleClamp; ++clamped; }
        else if (th <= -kAngleClamp) { th = -kAngleClamp; ++clamped; }
    }
    return clamped;
}

BeamSplitterStack sample_stack(int n_splitters, const NoiseModel& noise, RandomStream& rng) {
    std::vector<double> angles;
    sample_stack_into(angles, n_splitters, noise, rng);
    return BeamSplitterStack(std::move(angles));
}

unsigned resolve_thread_count(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (const char* env = std::getenv("ZENOLINK_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

namespace {

struct ChunkTally {
    std::uint64_t errors = 0;
    std::uint64_t violations = 0;
    std::uint64_t clamped = 0;
};

// One chunk of logical-bit trials; the stream is derived from
// (seed, M-cell, chunk), so the tally is independent of thread scheduling.
ChunkTally run_chunk(int n_splitters, const NoiseModel& noise, int m, double bit_mix,
                     std::uint64_t seed, std::size_t cell, std::uint64_t chunk,
                     std::uint64_t n_trials) {
    RandomStream rng = RandomStream::substream(seed, 0x1000 + cell, chunk);
    ChunkTally tally;
    std::vector<double> scratch;
    BeamSplitterStack stack = BeamSplitterStack::ideal(n_splitters);
    LogicalBitConfig cfg;
    cfg.n_splitters = n_splitters;
    cfg.m_processes = m;
    const LogicalRunOptions opt{false};

    const bool per_shot = noise.mode == NoiseMode::PerShot;
    auto per_shot_source = [&](RandomStream& r) -> const BeamSplitterStack& {
        tally.clamped += sample_stack_into(scratch, n_splitters, noise, r);
        stack.assign(scratch.data(), scratch.data() + scratch.size());
        return stack;
    };

    for (std::uint64_t t = 0; t < n_trials; ++t) {
        cfg.bit = rng.bernoulli(bit_mix) ? 1 : 0;
        LogicalOutcome lo;
        if (per_shot) {
            lo = run_logical_bit(cfg, per_shot_source, rng, opt);
        } else {
            tally.clamped += sample_stack_into(scratch, n_splitters, noise, rng);
            stack.assign(scratch.data(), scratch.data() + scratch.size());
            lo = run_logical_bit(cfg, stack, rng, opt);
        }
        if (lo.decoded_bit != cfg.bit) ++tally.errors;
        if (lo.violation) ++tally.violations;
    }
    return tally;
}

} // namespace

RateCurve estimate_rates(int n_splitters, const NoiseModel& noise,
                         const std::vector<int>& m_values, std::uint64_t trials_per_m,
                         double bit_mix, std::uint64_t seed, unsigned threads) {
    if (trials_per_m < 1)
        throw std::invalid_argument("estimate_rates: trials_per_m >= 1 required");
    if (!(bit_mix >= 0.0 && bit_mix <= 1.0))
        throw std::invalid_argument("estimate_rates: bit_mix in [0,1] required");
    for (int m : m_values)
        if (m < 1) throw std::invalid_argument("estimate_rates: M >= 1 required");

    struct Task {
        std::size_t cell;
        std::uint64_t chunk;
        std::uint64_t trials;
    };
    std::vector<Task> tasks;
    const std::uint64_t chunks_per_cell = (trials_per_m + kChunkTrials - 1) / kChunkTrials;
    for (std::size_t cell = 0; cell < m_values.size(); ++cell) {
        std::uint64_t left = trials_per_m;
        for (std::uint64_t c = 0; c < chunks_per_cell; ++c) {
            const std::uint64_t take = std::min(kChunkTrials, left);
            tasks.push_back({cell, c, take});
            left -= take;
        }
    }

    std::vector<ChunkTally> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& tk = tasks[i];
            results[i] = run_chunk(n_splitters, noise, m_values[tk.cell], bit_mix,
                                   seed, tk.cell, tk.chunk, tk.trials);
        }
    };

    const unsigned n_threads = resolve_thread_count(threads);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    RateCurve curve;
    curve.n_splitters = n_splitters;
    curve.sigma_theta = noise.sigma_theta;
    curve.bit_mix = bit_mix;
    curve.mode = noise.mode;
    curve.seed = seed;
    curve.rows.reserve(m_values.size());
    std::vector<ChunkTally> cells(m_values.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        ChunkTally& c = cells[tasks[i].cell];
        c.errors += results[i].errors;
        c.violations += results[i].violations;
        c.clamped += results[i].clamped;
    }
    for (std::size_t cell = 0; cell < m_values.size(); ++cell) {
        RateRow row;
        row.m = m_values[cell];
        row.trials = trials_per_m;
        const double n = static_cast<double>(trials_per_m);
        row.bit_error_rate = static_cast<double>(cells[cell].errors) / n;
        row.violation_rate = static_cast<double>(cells[cell].violations) / n;
        row.stderr_bit = std::sqrt(row.bit_error_rate * (1.0 - row.bit_error_rate) / n);
        row.stderr_violation =
            std::sqrt(row.violation_rate * (1.0 - row.violation_rate) / n);
        curve.rows.push_back(row);
        curve.clamped_samples += cells[cell].clamped;
    }
    return curve;
}

double gaussian_expect(const std::function<double(double)>& f, double mu, double sigma) {
    if (sigma == 0.0) return f(mu);
    // composite Simpson, +-10 sigma, smooth integrands only
    constexpr int kIntervals = 4000;  // even
    const double a = mu - 10.0 * sigma;
    const double h = 20.0 * sigma / kIntervals;
    const double inv = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    auto g = [&](double x) {
        const double z = (x - mu) / sigma;
        return f(x) * inv * std::exp(-0.5 * z * z);
    };
    double s = g(a) + g(a + 20.0 * sigma);
    for (int i = 1; i < kIntervals; ++i) s += g(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

namespace {

double cos_sq(double x) {
    const double c = std::cos(x);
    return c * c;
}

// E[(1 - prod_i cos^2 theta_i)^M] over device stacks, fixed-seed Monte Carlo.
// Used only for the StaticDevice logical-1 branch where the M processes share
// one stack and no low-dimensional quadrature applies.
std::vector<double> static_p1_fail(int n_splitters, const NoiseModel& noise,
                                   const std::vector<int>& m_values) {
    constexpr int kStacks = 200000;
    RandomStream rng(0x5eedcafe);
    std::vector<double> acc(m_values.size(), 0.0);
    std::vector<double> scratch;
    for (int s = 0; s < kStacks; ++s) {
        sample_stack_into(scratch, n_splitters, noise, rng);
        double p1 = 1.0;
        for (double th : scratch) p1 *= cos_sq(th);
        for (std::size_t i = 0; i < m_values.size(); ++i)
            acc[i] += std::pow(1.0 - p1, m_values[i]);
    }
    for (double& v : acc) v /= kStacks;
    return acc;
}

} // namespace

RateCurve analytic_rates(int n_splitters, const NoiseModel& noise,
                         const std::vector<int>& m_values, double bit_mix) {
    if (n_splitters < 1)
        throw std::invalid_argument("analytic_rates: N >= 1 required");

    const double p1_single = gaussian_expect(cos_sq, noise.mean_angle, noise.sigma_theta);
    const double p1_bar = std::pow(p1_single, n_splitters);
    // sum of N i.i.d. normals
    const double sum_mu = n_splitters * noise.mean_angle;
    const double sum_sigma = noise.sigma_theta * std::sqrt(static_cast<double>(n_splitters));
    const double p0_bar = gaussian_expect(cos_sq, sum_mu, sum_sigma);

    RateCurve curve;
    curve.n_splitters = n_splitters;
    curve.sigma_theta = noise.sigma_theta;
    curve.bit_mix = bit_mix;
    curve.mode = noise.mode;
    curve.rows.reserve(m_values.size());

    std::vector<double> static_fail1;
    if (noise.mode == NoiseMode::StaticDevice && noise.sigma_theta > 0.0)
        static_fail1 = static_p1_fail(n_splitters, noise, m_values);

    for (std::size_t i = 0; i < m_values.size(); ++i) {
        const int m = m_values[i];
        if (m < 1) throw std::invalid_argument("analytic_rates: M >= 1 required");
        double fail1;  // logical 1 lost: no Alice detection in M processes
        double fail0;  // logical 0 violated: >= 1 Alice detection in M processes
        if (noise.mode == NoiseMode::PerShot || noise.sigma_theta == 0.0) {
            fail1 = std::pow(1.0 - p1_bar, m);
            fail0 = 1.0 - std::pow(1.0 - p0_bar, m);
        } else {
            fail1 = static_fail1[i];
            // sum(theta) is exactly Normal even for a static stack
            fail0 = 1.0 - gaussian_expect(
                [m](double s) {
                    const double sn = std::sin(s);
                    return std::pow(sn * sn, m);
                },
                sum_mu, sum_sigma);
        }
        RateRow row;
        row.m = m;
        row.bit_error_rate = bit_mix * fail1 + (1.0 - bit_mix) * fail0;
        row.violation_rate = (1.0 - bit_mix) * fail0;
        curve.rows.push_back(row);
    }
    return curve;
}

} // namespace zenolink
