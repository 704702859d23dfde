#include "zenolink/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zenolink {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kExactTol = 1e-9;

OneParticleState zero_state(Status st) {
    OneParticleState s;
    s.status = st;
    return s;
}
} // namespace

void BeamSplitterStack::validate(const std::vector<double>& angles) {
    if (angles.empty())
        throw std::invalid_argument("BeamSplitterStack: need at least one angle");
    for (double th : angles)
        if (!(th > -kHalfPi && th < kHalfPi))
            throw std::invalid_argument("BeamSplitterStack: angle outside (-pi/2, pi/2)");
}

BeamSplitterStack::BeamSplitterStack(std::vector<double> angles)
    : angles_(std::move(angles)) {
    validate(angles_);
}

BeamSplitterStack BeamSplitterStack::ideal(int n_splitters) {
    if (n_splitters < 1)
        throw std::invalid_argument("BeamSplitterStack::ideal: N >= 1 required");
    return BeamSplitterStack(
        std::vector<double>(static_cast<std::size_t>(n_splitters),
                            std::numbers::pi / (2.0 * n_splitters)));
}

double BeamSplitterStack::total_angle() const {
    double s = 0.0;
    for (double th : angles_) s += th;
    return s;
}

void BeamSplitterStack::assign(const double* begin, const double* end) {
    angles_.assign(begin, end);
    validate(angles_);
}

OneParticleState create_particle_at_a() {
    OneParticleState s;
    s.amp_a = 1.0;
    s.status = Status::Coherent;
    return s;
}

TransferResult transfer(const OneParticleState& s, Region from, Region to) {
    if (from == to)
        throw std::invalid_argument("transfer: from == to");
    if (s.status == Status::DetectedAtBob)
        throw std::invalid_argument("transfer: state already detected at Bob");

    TransferResult r;
    r.state = s;
    if (s.status == Status::Vacuum) return r;

    auto pick = [&](Region which) -> Complex& {
        switch (which) {
            case Region::A: return r.state.amp_a;
            case Region::Tr: return r.state.amp_tr;
            default: return r.state.amp_b;
        }
    };
    Complex& src = pick(from);
    Complex& dst = pick(to);
    r.weight_moved = std::norm(src);
    dst += src;
    src = 0.0;
    return r;
}

OneParticleState apply_beam_splitter(const OneParticleState& s, double theta) {
    if (s.status != Status::Coherent)
        throw std::invalid_argument("apply_beam_splitter: state is not coherent");
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const Complex is{0.0, sn};
    OneParticleState out = s;
    out.amp_tr = c * s.amp_tr + is * s.amp_b;
    out.amp_b = is * s.amp_tr + c * s.amp_b;
    return out;
}

CollapseResult collapse_bob(const OneParticleState& s, int pass_index, RandomStream& rng) {
    if (s.status != Status::Coherent)
        throw std::invalid_argument("collapse_bob: state is not coherent");
    CollapseResult r;
    r.record.pass_index = pass_index;
    const double p_b = std::norm(s.amp_b);
    r.record.probability_removed = p_b;
    if (rng.uniform() < p_b) {
        r.outcome = CollapseOutcome::DetectedAtBob;
        r.state = zero_state(Status::DetectedAtBob);
        return r;
    }
    r.outcome = CollapseOutcome::Survived;
    r.state = s;
    r.state.amp_b = 0.0;
    const double rem = std::norm(r.state.amp_a) + std::norm(r.state.amp_tr);
    if (rem <= 0.0) {
        // all weight was in B yet the draw said "survived": p_b < 1 only by
        // rounding, treat as detection
        r.outcome = CollapseOutcome::DetectedAtBob;
        r.state = zero_state(Status::DetectedAtBob);
        return r;
    }
    const double scale = 1.0 / std::sqrt(rem);
    r.state.amp_a *= scale;
    r.state.amp_tr *= scale;
    return r;
}

MeasureResult measure_alice_number(const OneParticleState& s, RandomStream& rng) {
    MeasureResult r;
    if (s.status != Status::Coherent) {
        r.count = 0;
        r.state = s;
        return r;
    }
    const double p_a = std::norm(s.amp_a);
    bool found;
    if (p_a >= 1.0 - kExactTol)
        found = true;
    else if (p_a <= kExactTol)
        found = false;
    else
        found = rng.uniform() < p_a;  // noise-induced superposition

    r.count = found ? 1 : 0;
    r.state = s;
    if (found) {
        const double mag = std::abs(s.amp_a);
        r.state.amp_a = mag > 0.0 ? s.amp_a / mag : Complex{1.0, 0.0};
        r.state.amp_tr = 0.0;
        r.state.amp_b = 0.0;
    } else {
        r.state.amp_a = 0.0;
        const double rem = std::norm(s.amp_tr) + std::norm(s.amp_b);
        if (rem <= 0.0) {
            r.state = zero_state(Status::Vacuum);
        } else {
            const double scale = 1.0 / std::sqrt(rem);
            r.state.amp_tr *= scale;
            r.state.amp_b *= scale;
        }
    }
    return r;
}

} // namespace zenolink
