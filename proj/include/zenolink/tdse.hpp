#pragma once

#include <cstdint>
#include <vector>

#include "zenolink/errors.hpp"

namespace zenolink {

// Uniform spatial grid with hard-wall (psi = 0) endpoints.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_points = 0;

    double dx() const { return (x_max - x_min) / (n_points - 1); }
    double x(int i) const { return x_min + i * dx(); }
    // smallest index with x(i) >= pos
    int index_at_or_above(double pos) const;
    void validate() const;
};

struct HarmonicWell {
    double center = 0.0;
    double omega = 1.0;  // angular frequency, hbar = m = 1
};

struct BarrierSpec {
    double height = 0.0;  // > 0
    double width = 0.1;   // Gaussian sigma of the bump
    double center = 0.0;  // bump position; matches RegionPartition::barrier_center
};

// One stage of the drive: a potential held for `duration` time units.
struct StagePotential {
    enum class Kind { Harmonic, Composite, Tabulated };
    Kind kind = Kind::Harmonic;
    HarmonicWell well;
    BarrierSpec barrier;         // Composite only
    std::vector<double> table;   // Tabulated only; one value per grid point
};

struct Stage {
    double duration = 0.0;  // > 0
    StagePotential potential;
};

struct PotentialSchedule {
    std::vector<Stage> stages;
    double total_duration() const;
};

// Spatial division of the domain: A = [x_min, a_tr_boundary),
// Tr = [a_tr_boundary, barrier_center + barrier_half_width],
// B = everything beyond the barrier. The barrier region belongs to Tr.
struct RegionPartition {
    double a_tr_boundary = 0.0;
    double barrier_center = 0.0;
    double barrier_half_width = 0.0;
};

// Bob's detector model: a beam-splitter interaction is over once the flux
// through the Tr|B boundary has stayed below flux_fire for quiet_hold time
// units (after having exceeded flux_arm); collapse fires then.
struct CollapsePolicy {
    bool enabled = false;
    double flux_arm = 1e-3;
    double flux_fire = 1e-6;
    double quiet_hold = 0.25;
};

// Potential sampled onto a grid, with its stability bound precomputed.
struct PotentialGrid {
    std::vector<double> values;
    double v_max = 0.0;
    double v_min = 0.0;
    double dt_max = 0.0;  // 2 / (2/dx^2 + V_max), hbar = m = 1
};

PotentialGrid potential_on_grid(const Grid1D& grid, const StagePotential& spec);

// Staggered-leapfrog state: real part at integer steps, imaginary part at the
// two bracketing half steps (the Visscher product form R^2 + I_prev * I_next
// is the exactly conserved density of the scheme).
struct Wavefunction1D {
    Grid1D grid;
    std::vector<double> re;
    std::vector<double> im_cur;   // t + dt/2
    std::vector<double> im_prev;  // t - dt/2
    double time = 0.0;
    bool staggered = false;

    double norm() const;                              // sum rho * dx
    void density_into(std::vector<double>& rho) const;
    double probability_between(int i0, int i1) const; // [i0, i1) * dx
};

// Gaussian ground state of the well, normalized to 1. Rejects wells whose
// width is not resolvable (< 8 grid points per standard deviation).
Wavefunction1D init_ground_state(const Grid1D& grid, const HarmonicWell& well);

// Prepare the half-step imaginary fields for the leapfrog and rescale so the
// product-form norm is exactly 1. Idempotent once staggered.
void stagger(Wavefunction1D& wf, const PotentialGrid& pot, double dt);

// Advance one leapfrog step. Throws NumericalError if dt violates the
// stability bound of this potential.
void step(Wavefunction1D& wf, const PotentialGrid& pot, double dt);

struct RegionProbabilities {
    double p_a = 0.0;
    double p_tr = 0.0;
    double p_b = 0.0;
};

RegionProbabilities region_probabilities(const Wavefunction1D& wf,
                                         const RegionPartition& partition);

// <psi|H|psi> for an unstaggered (real) field; test oracle for well ground
// states.
double energy_of_real_field(const Grid1D& grid, const std::vector<double>& re,
                            const PotentialGrid& pot);

struct ScenarioConfig {
    Grid1D grid;
    HarmonicWell initial;   // launch well whose ground state is prepared
    PotentialSchedule schedule;
    RegionPartition partition;
    int n_bounces = 0;
    int bit = 0;
    CollapsePolicy collapse;  // enabled is forced to (bit == 1)
    int frame_stride = 2000;
    double dt_safety = 0.9;
    std::uint64_t seed = 0;   // recorded in outputs; the integrator is deterministic
    bool store_density = false;

    void validate() const;
};

struct Frame {
    std::uint64_t step = 0;
    double t = 0.0;
    double p_a = 0.0;
    double p_tr = 0.0;
    double p_b = 0.0;
    double collapsed = 0.0;
    double norm = 0.0;
};

struct DensityFrame {
    std::uint64_t index = 0;
    double t = 0.0;
    std::vector<double> density;
};

struct CollapseEvent {
    double time = 0.0;
    double removed = 0.0;
    int bounce_index = 0;  // 1-based
};

struct ScenarioResult {
    std::vector<Frame> timeseries;
    std::vector<DensityFrame> density_frames;
    std::vector<CollapseEvent> collapse_events;
    std::vector<double> bounce_transmissions;  // removed / norm just before
    double final_p_a = 0.0;
    double final_p_tr = 0.0;
    double final_p_b = 0.0;
    double cumulative_collapsed = 0.0;
    double survival = 1.0;          // 1 - cumulative_collapsed
    double final_norm = 0.0;
    double max_ledger_error = 0.0;  // max |P_A + P_Tr + P_B + collapsed - 1|
    double backflow = 0.0;          // integral of B->Tr flux after first collapse
    double dt = 0.0;
    std::uint64_t steps = 0;
};

// Integrate the TDSE through the schedule. For bit = 1, after each
// beam-splitter interaction the wavefunction on region B is zeroed (no
// renormalization; survival is the running norm).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Barrier calibration setup: the scenario geometry with the barrier height
// left free. The probe integrates from launch through the first interaction
// (probe_duration, typically half a well period) and measures the norm
// transmitted into B.
struct BarrierCalibration {
    Grid1D grid;
    HarmonicWell stage_well;
    HarmonicWell launch_well;
    RegionPartition partition;
    double barrier_width = 0.1;
    double probe_duration = 0.0;
    double dt_safety = 0.9;
    double bracket_hi = 500.0;  // search heights in [0, bracket_hi]
};

// Single-probe transmission for a given barrier height.
double probe_transmission(const BarrierCalibration& setup, double height);

// Bisection on the monotone transmission-vs-height curve until the probe
// transmits target +- tol. Throws NumericalError if the bracket does not
// contain the target.
BarrierSpec calibrate_barrier(const BarrierCalibration& setup, double target,
                              double tol = 5e-4);

} // namespace zenolink
