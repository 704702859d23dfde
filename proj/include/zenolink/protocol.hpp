#pragma once

#include <concepts>
#include <vector>

#include "zenolink/quantum.hpp"

namespace zenolink {

// One round of the communication protocol, as seen by the bookkeeping.
struct ProcessOutcome {
    bool alice_detects = false;
    bool bob_detects = false;
    // Whether the coherent branch measured at Alice's detector ever had
    // nonzero amplitude in B. Collapse removes B support, so in ideal 1-bit
    // rounds the surviving branch carries no B history.
    bool entered_bob_support = false;
    int pass_count = 0;
};

struct LogicalBitConfig {
    int bit = 0;  // 0 or 1
    int n_splitters = 1;
    int m_processes = 1;
};

struct LogicalOutcome {
    int decoded_bit = 0;
    bool violation = false;  // 0-bit transmission in which Alice detected
    std::vector<ProcessOutcome> per_process;
};

// Execute one process: create at A, send to Tr, N beam-splitter passes
// (Bob's detectors collapse after each pass iff bit = 1), return Tr to A,
// apply Alice's number operator.
ProcessOutcome run_process(int bit, const BeamSplitterStack& angles, RandomStream& rng);

// Probability that a 1-bit process delivers the particle to Alice:
// prod_i cos^2(theta_i).
double p1_success(const BeamSplitterStack& angles);

// Probability that a 0-bit process returns the particle to Alice (an
// interaction-freeness violation): cos^2(sum_i theta_i).
double p0_return(const BeamSplitterStack& angles);

// cos(pi/2N)^(2N) for each N; strictly increasing, -> 1 as N -> infinity.
std::vector<std::pair<int, double>> zeno_limit_table(const std::vector<int>& n_values);

struct LogicalRunOptions {
    bool keep_per_process = true;  // false skips the per_process vector (hot loops)
};

// M processes decode to 1 iff at least one Alice detection. The stack source
// is invoked once per process; noise models resample there.
template <typename StackSource>
    requires std::invocable<StackSource&, RandomStream&>
LogicalOutcome run_logical_bit(const LogicalBitConfig& cfg, StackSource&& source,
                               RandomStream& rng, const LogicalRunOptions& opt = {}) {
    LogicalOutcome out;
    if (opt.keep_per_process) out.per_process.reserve(static_cast<std::size_t>(cfg.m_processes));
    bool any_alice = false;
    for (int j = 0; j < cfg.m_processes; ++j) {
        const BeamSplitterStack& stack = source(rng);
        ProcessOutcome po = run_process(cfg.bit, stack, rng);
        any_alice = any_alice || po.alice_detects;
        if (opt.keep_per_process) out.per_process.push_back(po);
    }
    out.decoded_bit = any_alice ? 1 : 0;
    out.violation = (cfg.bit == 0 && out.decoded_bit == 1);
    return out;
}

// Fixed-angle convenience overload (ideal devices).
LogicalOutcome run_logical_bit(const LogicalBitConfig& cfg, const BeamSplitterStack& stack,
                               RandomStream& rng, const LogicalRunOptions& opt = {});

} // namespace zenolink
