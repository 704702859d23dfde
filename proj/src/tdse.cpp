#include "zenolink/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zenolink/kernels.hpp"

namespace zenolink {

namespace {
const kernels::Table& K() { return kernels::active_table(); }
} // namespace

int Grid1D::index_at_or_above(double pos) const {
    const double raw = (pos - x_min) / dx();
    int i = static_cast<int>(std::ceil(raw - 1e-12));
    return std::clamp(i, 0, n_points - 1);
}

void Grid1D::validate() const {
    if (n_points < 3) throw std::invalid_argument("Grid1D: n_points >= 3 required");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max > x_min required");
}

double PotentialSchedule::total_duration() const {
    double t = 0.0;
    for (const Stage& s : stages) t += s.duration;
    return t;
}

PotentialGrid potential_on_grid(const Grid1D& grid, const StagePotential& spec) {
    grid.validate();
    PotentialGrid pot;
    pot.values.resize(static_cast<std::size_t>(grid.n_points));
    switch (spec.kind) {
        case StagePotential::Kind::Harmonic:
            for (int i = 0; i < grid.n_points; ++i) {
                const double d = grid.x(i) - spec.well.center;
                pot.values[static_cast<std::size_t>(i)] =
                    0.5 * spec.well.omega * spec.well.omega * d * d;
            }
            break;
        case StagePotential::Kind::Composite: {
            if (!(spec.barrier.height > 0.0))
                throw std::invalid_argument("StagePotential: barrier height > 0 required");
            if (!(spec.barrier.width > 0.0))
                throw std::invalid_argument("StagePotential: barrier width > 0 required");
            const double inv2w2 = 1.0 / (2.0 * spec.barrier.width * spec.barrier.width);
            for (int i = 0; i < grid.n_points; ++i) {
                const double dw = grid.x(i) - spec.well.center;
                const double db = grid.x(i) - spec.barrier.center;
                pot.values[static_cast<std::size_t>(i)] =
                    0.5 * spec.well.omega * spec.well.omega * dw * dw +
                    spec.barrier.height * std::exp(-db * db * inv2w2);
            }
            break;
        }
        case StagePotential::Kind::Tabulated:
            if (spec.table.size() != static_cast<std::size_t>(grid.n_points))
                throw std::invalid_argument("StagePotential: table size != grid size");
            pot.values = spec.table;
            break;
    }
    for (double v : pot.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("StagePotential: potential must be finite");
    const auto [mn, mx] = std::minmax_element(pot.values.begin(), pot.values.end());
    pot.v_min = *mn;
    pot.v_max = *mx;
    const double dx = grid.dx();
    const double denom = 2.0 / (dx * dx) + std::max(pot.v_max, 0.0) + std::max(-pot.v_min, 0.0);
    pot.dt_max = 2.0 / denom;
    return pot;
}

double Wavefunction1D::norm() const {
    const std::size_t n = re.size();
    return K().density_sum(re.data(), im_prev.data(), im_cur.data(), 0, n) * grid.dx();
}

void Wavefunction1D::density_into(std::vector<double>& rho) const {
    rho.resize(re.size());
    K().density_fill(rho.data(), re.data(), im_prev.data(), im_cur.data(), re.size());
}

double Wavefunction1D::probability_between(int i0, int i1) const {
    if (i0 >= i1) return 0.0;
    return K().density_sum(re.data(), im_prev.data(), im_cur.data(),
                           static_cast<std::size_t>(i0), static_cast<std::size_t>(i1)) *
           grid.dx();
}

Wavefunction1D init_ground_state(const Grid1D& grid, const HarmonicWell& well) {
    grid.validate();
    if (!(well.omega > 0.0))
        throw std::invalid_argument("init_ground_state: omega > 0 required");
    if (!(well.center > grid.x_min && well.center < grid.x_max))
        throw std::invalid_argument("init_ground_state: well center outside grid");
    const double sigma = 1.0 / std::sqrt(2.0 * well.omega);
    if (sigma / grid.dx() < 8.0)
        throw std::invalid_argument(
            "init_ground_state: under-resolved width (need >= 8 points per sigma)");

    Wavefunction1D wf;
    wf.grid = grid;
    const std::size_t n = static_cast<std::size_t>(grid.n_points);
    wf.re.assign(n, 0.0);
    wf.im_cur.assign(n, 0.0);
    wf.im_prev.assign(n, 0.0);
    const double amp = std::pow(well.omega / std::numbers::pi, 0.25);
    for (int i = 1; i < grid.n_points - 1; ++i) {
        const double d = grid.x(i) - well.center;
        wf.re[static_cast<std::size_t>(i)] = amp * std::exp(-0.5 * well.omega * d * d);
    }
    double s = 0.0;
    for (double v : wf.re) s += v * v;
    s *= grid.dx();
    const double scale = 1.0 / std::sqrt(s);
    for (double& v : wf.re) v *= scale;
    return wf;
}

namespace {

// (H f)[i] into out, interior points only.
void apply_h(const Grid1D& grid, const PotentialGrid& pot, const std::vector<double>& f,
             std::vector<double>& out) {
    const std::size_t n = f.size();
    out.assign(n, 0.0);
    const double inv2dx2 = 1.0 / (2.0 * grid.dx() * grid.dx());
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = -inv2dx2 * (f[i + 1] - 2.0 * f[i] + f[i - 1]) + pot.values[i] * f[i];
}

} // namespace

void stagger(Wavefunction1D& wf, const PotentialGrid& pot, double dt) {
    if (wf.staggered) return;
    std::vector<double> h;
    apply_h(wf.grid, pot, wf.re, h);
    const std::size_t n = wf.re.size();
    for (std::size_t i = 0; i < n; ++i) {
        // exact-evolution half steps of a real field: I(+-dt/2) = -+ (dt/2) H R
        const double half = 0.5 * dt * h[i];
        wf.im_cur[i] = wf.im_cur[i] - half;
        wf.im_prev[i] = wf.im_prev[i] + half;
    }
    wf.staggered = true;
    const double p0 = wf.norm();
    if (!(p0 > 0.0)) throw NumericalError("stagger: vanishing norm");
    const double scale = 1.0 / std::sqrt(p0);
    for (std::size_t i = 0; i < n; ++i) {
        wf.re[i] *= scale;
        wf.im_cur[i] *= scale;
        wf.im_prev[i] *= scale;
    }
}

void step(Wavefunction1D& wf, const PotentialGrid& pot, double dt) {
    if (!(dt > 0.0) || dt >= pot.dt_max)
        throw NumericalError("step: dt violates the leapfrog stability bound");
    if (!wf.staggered) stagger(wf, pot, dt);
    const std::size_t n = wf.re.size();
    const double inv2dx2 = 1.0 / (2.0 * wf.grid.dx() * wf.grid.dx());
    K().leapfrog_real(wf.re.data(), wf.im_cur.data(), pot.values.data(), dt, inv2dx2, n);
    std::copy(wf.im_cur.begin(), wf.im_cur.end(), wf.im_prev.begin());
    K().leapfrog_imag(wf.im_cur.data(), wf.re.data(), pot.values.data(), dt, inv2dx2, n);
    wf.time += dt;
}

RegionProbabilities region_probabilities(const Wavefunction1D& wf,
                                         const RegionPartition& partition) {
    const Grid1D& g = wf.grid;
    const int ia = g.index_at_or_above(partition.a_tr_boundary);
    const int ib = g.index_at_or_above(partition.barrier_center + partition.barrier_half_width +
                                       0.5 * g.dx());
    RegionProbabilities p;
    p.p_a = wf.probability_between(0, ia);
    p.p_tr = wf.probability_between(ia, ib);
    p.p_b = wf.probability_between(ib, g.n_points);
    return p;
}

double energy_of_real_field(const Grid1D& grid, const std::vector<double>& re,
                            const PotentialGrid& pot) {
    std::vector<double> h;
    apply_h(grid, pot, re, h);
    double e = 0.0;
    for (std::size_t i = 0; i < re.size(); ++i) e += re[i] * h[i];
    return e * grid.dx();
}

void ScenarioConfig::validate() const {
    grid.validate();
    if (schedule.stages.empty())
        throw std::invalid_argument("ScenarioConfig: schedule needs >= 1 stage");
    for (const Stage& s : schedule.stages)
        if (!(s.duration > 0.0))
            throw std::invalid_argument("ScenarioConfig: stage durations must be > 0");
    if (bit != 0 && bit != 1)
        throw std::invalid_argument("ScenarioConfig: bit must be 0 or 1");
    if (n_bounces < 0)
        throw std::invalid_argument("ScenarioConfig: n_bounces >= 0 required");
    if (frame_stride < 1)
        throw std::invalid_argument("ScenarioConfig: frame_stride >= 1 required");
    if (!(dt_safety > 0.0 && dt_safety < 1.0))
        throw std::invalid_argument("ScenarioConfig: dt_safety in (0,1) required");
    if (!(grid.x_min < partition.a_tr_boundary &&
          partition.a_tr_boundary < partition.barrier_center &&
          partition.barrier_center < grid.x_max))
        throw std::invalid_argument(
            "ScenarioConfig: need x_min < a_tr_boundary < barrier_center < x_max");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const Grid1D& g = cfg.grid;
    const double dx = g.dx();
    const std::size_t n = static_cast<std::size_t>(g.n_points);

    std::vector<PotentialGrid> pots;
    std::vector<double> stage_end;
    pots.reserve(cfg.schedule.stages.size());
    double t_total = 0.0;
    double dt_max = 1e300;
    for (const Stage& s : cfg.schedule.stages) {
        pots.push_back(potential_on_grid(g, s.potential));
        dt_max = std::min(dt_max, pots.back().dt_max);
        t_total += s.duration;
        stage_end.push_back(t_total);
    }
    const double dt = cfg.dt_safety * dt_max;
    const std::uint64_t n_steps = static_cast<std::uint64_t>(std::ceil(t_total / dt));

    Wavefunction1D wf = init_ground_state(g, cfg.initial);
    stagger(wf, pots.front(), dt);

    const int ib = g.index_at_or_above(cfg.partition.barrier_center +
                                       cfg.partition.barrier_half_width + 0.5 * dx);
    if (ib < 2 || ib > g.n_points - 3)
        throw std::invalid_argument("run_scenario: Tr|B boundary too close to a wall");

    ScenarioResult res;
    res.dt = dt;
    const bool collapse_on = (cfg.bit == 1);
    bool armed = false;
    bool quiet = false;
    double quiet_since = 0.0;
    bool any_collapse = false;
    double collapsed = 0.0;

    std::vector<double> rho_scratch;
    std::size_t stage_idx = 0;
    const double inv2dx = 1.0 / (2.0 * dx);

    auto record_frame = [&](std::uint64_t stepno, double t) {
        RegionProbabilities p = region_probabilities(wf, cfg.partition);
        Frame f;
        f.step = stepno;
        f.t = t;
        f.p_a = p.p_a;
        f.p_tr = p.p_tr;
        f.p_b = p.p_b;
        f.collapsed = collapsed;
        f.norm = p.p_a + p.p_tr + p.p_b;
        res.timeseries.push_back(f);
        res.max_ledger_error =
            std::max(res.max_ledger_error, std::abs(f.norm + collapsed - 1.0));
        if (cfg.store_density) {
            DensityFrame d;
            d.index = res.density_frames.size();
            d.t = t;
            wf.density_into(d.density);
            res.density_frames.push_back(std::move(d));
        }
    };

    for (std::uint64_t stepno = 0; stepno < n_steps; ++stepno) {
        const double t = stepno * dt;
        while (stage_idx + 1 < pots.size() && t >= stage_end[stage_idx]) ++stage_idx;

        // probability current at the Tr|B boundary, I averaged to integer time
        const std::size_t b = static_cast<std::size_t>(ib);
        const double i_m = 0.5 * (wf.im_prev[b - 1] + wf.im_cur[b - 1]);
        const double i_0 = 0.5 * (wf.im_prev[b] + wf.im_cur[b]);
        const double i_p = 0.5 * (wf.im_prev[b + 1] + wf.im_cur[b + 1]);
        const double flux =
            wf.re[b] * (i_p - i_m) * inv2dx - i_0 * (wf.re[b + 1] - wf.re[b - 1]) * inv2dx;

        if (collapse_on) {
            const double aj = std::abs(flux);
            if (!armed) {
                if (aj > cfg.collapse.flux_arm) {
                    armed = true;
                    quiet = false;
                }
            } else if (aj < cfg.collapse.flux_fire) {
                if (!quiet) {
                    quiet = true;
                    quiet_since = t;
                } else if (t - quiet_since >= cfg.collapse.quiet_hold) {
                    const double total =
                        K().density_sum(wf.re.data(), wf.im_prev.data(), wf.im_cur.data(), 0, n) *
                        dx;
                    const double removed =
                        K().density_sum(wf.re.data(), wf.im_prev.data(), wf.im_cur.data(), b, n) *
                        dx;
                    std::fill(wf.re.begin() + ib, wf.re.end(), 0.0);
                    std::fill(wf.im_cur.begin() + ib, wf.im_cur.end(), 0.0);
                    std::fill(wf.im_prev.begin() + ib, wf.im_prev.end(), 0.0);
                    collapsed += removed;
                    res.collapse_events.push_back(
                        {t, removed, static_cast<int>(res.collapse_events.size()) + 1});
                    res.bounce_transmissions.push_back(total > 0.0 ? removed / total : 0.0);
                    armed = false;
                    quiet = false;
                    any_collapse = true;
                }
            } else {
                quiet = false;
            }
        }
        if (any_collapse && flux < 0.0) res.backflow += -flux * dt;

        if (stepno % static_cast<std::uint64_t>(cfg.frame_stride) == 0)
            record_frame(stepno, t);

        step(wf, pots[stage_idx], dt);
    }

    record_frame(n_steps, n_steps * dt);
    res.steps = n_steps;
    const Frame& last = res.timeseries.back();
    res.final_p_a = last.p_a;
    res.final_p_tr = last.p_tr;
    res.final_p_b = last.p_b;
    res.cumulative_collapsed = collapsed;
    res.survival = 1.0 - collapsed;
    res.final_norm = last.norm;
    return res;
}

double probe_transmission(const BarrierCalibration& setup, double height) {
    ScenarioConfig cfg;
    cfg.grid = setup.grid;
    cfg.initial = setup.launch_well;
    cfg.partition = setup.partition;
    cfg.bit = 0;
    cfg.n_bounces = 1;
    cfg.frame_stride = 1 << 20;  // endpoints only
    cfg.dt_safety = setup.dt_safety;
    Stage s;
    s.duration = setup.probe_duration;
    s.potential.kind = StagePotential::Kind::Composite;
    s.potential.well = setup.stage_well;
    s.potential.barrier = BarrierSpec{height, setup.barrier_width, setup.partition.barrier_center};
    cfg.schedule.stages.push_back(std::move(s));
    const ScenarioResult r = run_scenario(cfg);
    return r.final_p_b;
}

BarrierSpec calibrate_barrier(const BarrierCalibration& setup, double target, double tol) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("calibrate_barrier: target in (0,1) required");
    double lo = 0.0;
    double hi = setup.bracket_hi;
    // the probe with height->0 is run with a tiny positive bump (height > 0 is
    // required by the stage validation)
    const double t_lo = probe_transmission(setup, 1e-12);
    const double t_hi = probe_transmission(setup, hi);
    if (!(t_lo > target && target > t_hi))
        throw NumericalError("calibrate_barrier: bracket does not contain the target");
    double mid = hi;
    double t_mid = t_hi;
    for (int it = 0; it < 80; ++it) {
        mid = 0.5 * (lo + hi);
        t_mid = probe_transmission(setup, mid);
        if (std::abs(t_mid - target) < tol) return BarrierSpec{mid, setup.barrier_width};
        if (t_mid > target)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalError("calibrate_barrier: bisection failed to converge");
}

} // namespace zenolink
