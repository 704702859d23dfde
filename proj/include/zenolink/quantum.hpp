#pragma once

#include <complex>
#include <vector>

#include "zenolink/rng.hpp"

namespace zenolink {

using Complex = std::complex<double>;

enum class Region { A, Tr, B };
enum class Status { Coherent, DetectedAtBob, Vacuum };

// One particle restricted to three spatial regions: Alice's laboratory (A),
// the transmission line (Tr) and Bob's laboratory (B). The one-particle
// sector is exactly a 3-vector of complex amplitudes.
struct OneParticleState {
    Complex amp_a{0.0, 0.0};
    Complex amp_tr{0.0, 0.0};
    Complex amp_b{0.0, 0.0};
    Status status = Status::Vacuum;

    double norm2() const {
        return std::norm(amp_a) + std::norm(amp_tr) + std::norm(amp_b);
    }
    Complex amp(Region r) const {
        switch (r) {
            case Region::A: return amp_a;
            case Region::Tr: return amp_tr;
            default: return amp_b;
        }
    }
};

// Ordered beam-splitter angles theta_i, each in (-pi/2, pi/2).
class BeamSplitterStack {
public:
    explicit BeamSplitterStack(std::vector<double> angles);

    // Ideal device: N splitters, each theta = pi / (2N).
    static BeamSplitterStack ideal(int n_splitters);

    const std::vector<double>& angles() const { return angles_; }
    std::size_t size() const { return angles_.size(); }
    double total_angle() const;

    // In-place refill, reusing storage (hot path in Monte Carlo loops).
    void assign(const double* begin, const double* end);

private:
    std::vector<double> angles_;
    static void validate(const std::vector<double>& angles);
};

struct CollapseRecord {
    int pass_index = 0;              // >= 1
    double probability_removed = 0;  // |amp_b|^2 at the instant of collapse
};

enum class CollapseOutcome { Survived, DetectedAtBob };

struct TransferResult {
    OneParticleState state;
    double weight_moved = 0.0;  // |amp_from|^2 that was relocated
};

struct CollapseResult {
    OneParticleState state;
    CollapseOutcome outcome = CollapseOutcome::Survived;
    CollapseRecord record;
};

struct MeasureResult {
    int count = 0;  // 0 or 1
    OneParticleState state;
};

// Alice creates the particle in her laboratory: |1,0,0>.
OneParticleState create_particle_at_a();

// Relocate the `from` amplitude onto `to`. Acting on an empty source region
// is the identity (the annihilator gives zero weight to move).
TransferResult transfer(const OneParticleState& s, Region from, Region to);

// Two-mode beam splitter on (Tr, B):
//   amp_tr' = cos(theta) amp_tr + i sin(theta) amp_b
//   amp_b'  = i sin(theta) amp_tr + cos(theta) amp_b
OneParticleState apply_beam_splitter(const OneParticleState& s, double theta);

// Bob's detector: clicks with probability |amp_b|^2; otherwise projects B out
// and renormalizes.
CollapseResult collapse_bob(const OneParticleState& s, int pass_index, RandomStream& rng);

// Alice's number operator. Protocol-exact outcomes (|amp_a|^2 within 1e-9 of
// 0 or 1) are read off deterministically; intermediate values, reachable only
// under noise, are resolved by a Born-rule draw and the state collapses
// accordingly.
MeasureResult measure_alice_number(const OneParticleState& s, RandomStream& rng);

} // namespace zenolink
