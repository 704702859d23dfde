#include "zenolink/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zenolink {

ProcessOutcome run_process(int bit, const BeamSplitterStack& angles, RandomStream& rng) {
    if (bit != 0 && bit != 1)
        throw std::invalid_argument("run_process: bit must be 0 or 1");

    ProcessOutcome out;
    OneParticleState state = create_particle_at_a();        // step 1
    state = transfer(state, Region::A, Region::Tr).state;   // step 2

    // B-support history of the live coherent branch; reset when Bob's
    // detector projects B out.
    bool b_history = false;

    for (double theta : angles.angles()) {                  // step 3
        state = apply_beam_splitter(state, theta);
        ++out.pass_count;
        if (state.amp_b != Complex{0.0, 0.0}) b_history = true;
        if (bit == 1) {
            CollapseResult c = collapse_bob(state, out.pass_count, rng);
            state = c.state;
            if (c.outcome == CollapseOutcome::DetectedAtBob) {
                out.bob_detects = true;
                out.entered_bob_support = b_history;
                return out;
            }
            b_history = false;  // surviving branch has no support left in B
        }
    }

    state = transfer(state, Region::Tr, Region::A).state;   // step 4
    MeasureResult m = measure_alice_number(state, rng);     // step 5
    out.alice_detects = (m.count == 1);
    out.entered_bob_support = b_history;
    return out;
}

double p1_success(const BeamSplitterStack& angles) {
    double p = 1.0;
    for (double th : angles.angles()) {
        const double c = std::cos(th);
        p *= c * c;
    }
    return p;
}

double p0_return(const BeamSplitterStack& angles) {
    const double c = std::cos(angles.total_angle());
    return c * c;
}

std::vector<std::pair<int, double>> zeno_limit_table(const std::vector<int>& n_values) {
    std::vector<std::pair<int, double>> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 1) throw std::invalid_argument("zeno_limit_table: N >= 1 required");
        const double c = std::cos(std::numbers::pi / (2.0 * n));
        rows.emplace_back(n, std::pow(c, 2.0 * n));
    }
    return rows;
}

LogicalOutcome run_logical_bit(const LogicalBitConfig& cfg, const BeamSplitterStack& stack,
                               RandomStream& rng, const LogicalRunOptions& opt) {
    auto fixed = [&stack](RandomStream&) -> const BeamSplitterStack& { return stack; };
    return run_logical_bit(cfg, fixed, rng, opt);
}

} // namespace zenolink
