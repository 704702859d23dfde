// zenolink: counterfactual-communication protocol studies.
//   protocol    ideal/noisy single-process statistics vs closed forms
//   montecarlo  M-encoding bit-error / violation rate curves
//   tdse        wavepacket demonstration scenarios (JSON driven)
//   zeno-table  cos(pi/2N)^(2N) success table

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zenolink/csvio.hpp"
#include "zenolink/montecarlo.hpp"
#include "zenolink/protocol.hpp"
#include "zenolink/scenario_io.hpp"

namespace {

constexpr const char* kVersion = "0.2.0";

using namespace zenolink;
using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            out.push_back(std::stoi(item));
            continue;
        }
        const int lo = std::stoi(item.substr(0, colon));
        const auto rest = item.substr(colon + 1);
        const auto colon2 = rest.find(':');
        int hi = 0;
        int stride = 1;
        if (colon2 == std::string::npos) {
            hi = std::stoi(rest);
        } else {
            hi = std::stoi(rest.substr(0, colon2));
            stride = std::stoi(rest.substr(colon2 + 1));
        }
        if (stride < 1 || hi < lo)
            throw std::invalid_argument("bad range '" + item + "'");
        for (int v = lo; v <= hi; v += stride) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

NoiseMode parse_mode(const std::string& s) {
    if (s == "per_shot") return NoiseMode::PerShot;
    if (s == "static_device") return NoiseMode::StaticDevice;
    throw std::invalid_argument("noise-mode must be per_shot or static_device");
}

json run_meta(std::uint64_t seed) {
    return json{{"artifact_version", kVersion},
                {"seed", seed},
                {"timestamp", timestamp_string()}};
}

int cmd_protocol(int n, int bit, std::uint64_t trials, double sigma, NoiseMode mode,
                 std::uint64_t seed, const std::string& out_dir) {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    if (bit != 0 && bit != 1) throw std::invalid_argument("--bit must be 0 or 1");
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");

    RandomStream rng(seed);
    const BeamSplitterStack ideal = BeamSplitterStack::ideal(n);
    const NoiseModel noise = NoiseModel::for_device(n, sigma, mode);
    std::vector<double> scratch;
    BeamSplitterStack stack = ideal;

    std::uint64_t alice = 0, bob = 0, violations = 0, trace_hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (sigma > 0.0) {
            sample_stack_into(scratch, n, noise, rng);
            stack.assign(scratch.data(), scratch.data() + scratch.size());
        }
        const ProcessOutcome po = run_process(bit, sigma > 0.0 ? stack : ideal, rng);
        alice += po.alice_detects;
        bob += po.bob_detects;
        violations += (bit == 0 && po.alice_detects);
        trace_hits += (po.alice_detects && po.entered_bob_support);
    }

    const double alice_rate = static_cast<double>(alice) / trials;
    const double bob_rate = static_cast<double>(bob) / trials;
    const double p1 = p1_success(ideal);
    const double p0 = p0_return(ideal);

    std::ostringstream csv;
    csv << "n,bit,trials,sigma_theta,alice_rate,bob_rate,violation_rate,"
           "trace_hit_rate,p1_closed_form,p0_closed_form\n"
        << n << ',' << bit << ',' << trials << ',' << format_double(sigma) << ','
        << format_double(alice_rate) << ',' << format_double(bob_rate) << ','
        << format_double(static_cast<double>(violations) / trials) << ','
        << format_double(static_cast<double>(trace_hits) / trials) << ','
        << format_double(p1) << ',' << format_double(p0) << '\n';
    atomic_write_file(out_dir + "/protocol_summary.csv", csv.str());

    json meta = run_meta(seed);
    meta["subcommand"] = "protocol";
    meta["n"] = n;
    meta["bit"] = bit;
    meta["trials"] = trials;
    meta["sigma_theta"] = sigma;
    meta["noise_mode"] = to_string(mode);
    atomic_write_file(out_dir + "/protocol_meta.json", meta.dump(2) + "\n");

    std::cout << "protocol: n=" << n << " bit=" << bit << " trials=" << trials
              << "  alice_rate=" << alice_rate << " (p1=" << p1 << ", p0=" << p0
              << ")  bob_rate=" << bob_rate << '\n'
              << "wrote " << out_dir << "/protocol_summary.csv\n";
    return 0;
}

int cmd_montecarlo(const std::vector<int>& n_values, const std::vector<int>& m_values,
                   double sigma, std::uint64_t trials, double bit_mix, NoiseMode mode,
                   std::uint64_t seed, bool analytic, const std::string& out_dir) {
    for (int n : n_values) {
        const NoiseModel noise = NoiseModel::for_device(n, sigma, mode);
        const RateCurve mc = estimate_rates(n, noise, m_values, trials, bit_mix, seed);
        RateCurve an;
        if (analytic) an = analytic_rates(n, noise, m_values, bit_mix);

        std::ostringstream csv;
        csv << "M,bit_error_rate,violation_rate,stderr_bit,stderr_violation,trials";
        if (analytic) csv << ",analytic_bit_error,analytic_violation";
        csv << '\n';
        for (std::size_t i = 0; i < mc.rows.size(); ++i) {
            const RateRow& r = mc.rows[i];
            csv << r.m << ',' << format_double(r.bit_error_rate) << ','
                << format_double(r.violation_rate) << ',' << format_double(r.stderr_bit)
                << ',' << format_double(r.stderr_violation) << ',' << r.trials;
            if (analytic)
                csv << ',' << format_double(an.rows[i].bit_error_rate) << ','
                    << format_double(an.rows[i].violation_rate);
            csv << '\n';
        }
        const std::string base = out_dir + "/ratecurve_n" + std::to_string(n);
        atomic_write_file(base + ".csv", csv.str());

        json meta = run_meta(seed);
        meta["subcommand"] = "montecarlo";
        meta["n"] = n;
        meta["sigma_theta"] = sigma;
        meta["bit_mix"] = bit_mix;
        meta["mode"] = to_string(mode);
        meta["trials_per_m"] = trials;
        meta["m_values"] = m_values;
        meta["clamped_samples"] = mc.clamped_samples;
        meta["normalization"] = mc.normalization;
        meta["analytic_columns"] = analytic;
        atomic_write_file(base + "_meta.json", meta.dump(2) + "\n");
        std::cout << "montecarlo: n=" << n << " wrote " << base << ".csv ("
                  << m_values.size() << " rows, " << trials << " trials each)\n";
    }
    return 0;
}

int cmd_tdse(const std::string& scenario_path, const std::string& out_dir) {
    ScenarioConfig cfg = load_scenario(scenario_path);
    cfg.store_density = true;
    const ScenarioResult res = run_scenario(cfg);

    std::ostringstream ts;
    ts << "t,P_A,P_Tr,P_B,collapsed,norm\n";
    for (const Frame& f : res.timeseries)
        ts << format_double(f.t) << ',' << format_double(f.p_a) << ','
           << format_double(f.p_tr) << ',' << format_double(f.p_b) << ','
           << format_double(f.collapsed) << ',' << format_double(f.norm) << '\n';
    atomic_write_file(out_dir + "/timeseries.csv", ts.str());

    for (const DensityFrame& d : res.density_frames) {
        std::ostringstream fr;
        fr << "x,density\n";
        for (int i = 0; i < cfg.grid.n_points; ++i)
            fr << format_double(cfg.grid.x(i)) << ','
               << format_double(d.density[static_cast<std::size_t>(i)]) << '\n';
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06llu.csv",
                      static_cast<unsigned long long>(d.index));
        atomic_write_file(out_dir + "/" + name, fr.str());
    }

    json summary = run_meta(cfg.seed);
    summary["subcommand"] = "tdse";
    summary["scenario"] = scenario_path;
    summary["bit"] = cfg.bit;
    summary["final"] = {{"P_A", res.final_p_a},
                        {"P_Tr", res.final_p_tr},
                        {"P_B", res.final_p_b},
                        {"collapsed", res.cumulative_collapsed},
                        {"norm", res.final_norm}};
    summary["survival"] = res.survival;
    summary["max_ledger_error"] = res.max_ledger_error;
    summary["backflow"] = res.backflow;
    summary["dt"] = res.dt;
    summary["steps"] = res.steps;
    summary["n_collapses"] = res.collapse_events.size();
    summary["bounce_transmissions"] = res.bounce_transmissions;
    json events = json::array();
    for (const CollapseEvent& e : res.collapse_events)
        events.push_back({{"t", e.time}, {"removed", e.removed}, {"bounce", e.bounce_index}});
    summary["collapse_events"] = events;
    summary["config"] = json::parse(scenario_to_json_text(cfg));
    atomic_write_file(out_dir + "/summary.json", summary.dump(2) + "\n");

    std::cout << "tdse: bit=" << cfg.bit << "  P_A=" << res.final_p_a
              << " P_Tr=" << res.final_p_tr << " P_B=" << res.final_p_b
              << " survival=" << res.survival << "  collapses="
              << res.collapse_events.size() << '\n'
              << "wrote " << out_dir << "/timeseries.csv (+"
              << res.density_frames.size() << " frames, summary.json)\n";
    return 0;
}

int cmd_zeno_table(const std::vector<int>& n_values, const std::string& out_dir) {
    const auto table = zeno_limit_table(n_values);
    std::ostringstream csv;
    csv << "N,p1_success_ideal\n";
    for (const auto& [n, p] : table) csv << n << ',' << format_double(p) << '\n';
    atomic_write_file(out_dir + "/zeno_table.csv", csv.str());
    std::cout << "zeno-table: " << table.size() << " rows -> " << out_dir
              << "/zeno_table.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-trace-free counterfactual communication studies"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::uint64_t seed = 1;
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "master RNG seed")->capture_default_str();

    auto* prot = app.add_subcommand("protocol", "single-process statistics");
    int p_n = 7, p_bit = 1;
    std::uint64_t p_trials = 100000;
    double p_sigma = 0.0;
    std::string p_mode = "per_shot";
    prot->add_option("--n", p_n, "beam splitters per process")->capture_default_str();
    prot->add_option("--bit", p_bit, "bit value (0 or 1)")->capture_default_str();
    prot->add_option("--trials", p_trials, "number of processes")->capture_default_str();
    prot->add_option("--sigma-theta", p_sigma, "angle noise std dev [rad]")
        ->capture_default_str();
    prot->add_option("--noise-mode", p_mode, "per_shot | static_device")
        ->capture_default_str();

    auto* mc = app.add_subcommand("montecarlo", "M-encoding rate curves");
    std::vector<int> mc_n{7};
    std::string mc_mlist = "1:100";
    double mc_sigma = 0.01, mc_mix = 0.5;
    std::uint64_t mc_trials = 1000000;
    std::string mc_mode = "per_shot";
    bool mc_analytic = false;
    mc->add_option("--n", mc_n, "device sizes (repeatable)")->capture_default_str();
    mc->add_option("--m-list", mc_mlist, "M values, e.g. 1:100 or 1,2,5:50:5")
        ->capture_default_str();
    mc->add_option("--sigma-theta", mc_sigma, "angle noise std dev [rad]")
        ->capture_default_str();
    mc->add_option("--trials", mc_trials, "logical bits per M")->capture_default_str();
    mc->add_option("--bit-mix", mc_mix, "fraction of logical-1 transmissions")
        ->capture_default_str();
    mc->add_option("--noise-mode", mc_mode, "per_shot | static_device")
        ->capture_default_str();
    mc->add_flag("--analytic", mc_analytic, "append analytic-oracle columns");

    auto* td = app.add_subcommand("tdse", "wavepacket scenario");
    std::string scenario;
    td->add_option("--scenario", scenario, "scenario JSON path")->required();

    auto* zt = app.add_subcommand("zeno-table", "ideal success probabilities");
    std::string zt_nlist = "1:500";
    zt->add_option("--n-list", zt_nlist, "N values")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (prot->parsed())
            return cmd_protocol(p_n, p_bit, p_trials, p_sigma, parse_mode(p_mode), seed,
                                out_dir);
        if (mc->parsed())
            return cmd_montecarlo(mc_n, parse_int_list(mc_mlist), mc_sigma, mc_trials,
                                  mc_mix, parse_mode(mc_mode), seed, mc_analytic, out_dir);
        if (td->parsed()) return cmd_tdse(scenario, out_dir);
        if (zt->parsed()) return cmd_zeno_table(parse_int_list(zt_nlist), out_dir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const zenolink::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
