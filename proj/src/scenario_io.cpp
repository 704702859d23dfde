#include "zenolink/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zenolink {

using nlohmann::json;

namespace {

HarmonicWell well_from(const json& j) {
    return HarmonicWell{j.at("center").get<double>(), j.at("omega").get<double>()};
}

json well_to(const HarmonicWell& w) {
    return json{{"center", w.center}, {"omega", w.omega}};
}

StagePotential potential_from(const json& j) {
    StagePotential p;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "harmonic") {
        p.kind = StagePotential::Kind::Harmonic;
        p.well = well_from(j.at("well"));
    } else if (kind == "composite") {
        p.kind = StagePotential::Kind::Composite;
        p.well = well_from(j.at("well"));
        const json& b = j.at("barrier");
        p.barrier.height = b.at("height").get<double>();
        p.barrier.width = b.at("width").get<double>();
        p.barrier.center = b.value("center", 0.0);
    } else if (kind == "tabulated") {
        p.kind = StagePotential::Kind::Tabulated;
        p.table = j.at("values").get<std::vector<double>>();
    } else {
        throw std::invalid_argument("scenario: unknown potential kind '" + kind + "'");
    }
    return p;
}

json potential_to(const StagePotential& p) {
    switch (p.kind) {
        case StagePotential::Kind::Harmonic:
            return json{{"kind", "harmonic"}, {"well", well_to(p.well)}};
        case StagePotential::Kind::Composite:
            return json{{"kind", "composite"},
                        {"well", well_to(p.well)},
                        {"barrier",
                         {{"height", p.barrier.height},
                          {"width", p.barrier.width},
                          {"center", p.barrier.center}}}};
        default:
            return json{{"kind", "tabulated"}, {"values", p.table}};
    }
}

} // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: JSON parse error: ") + e.what());
    }
    try {
        ScenarioConfig cfg;
        const json& g = j.at("grid");
        cfg.grid = Grid1D{g.at("x_min").get<double>(), g.at("x_max").get<double>(),
                          g.at("n_points").get<int>()};
        cfg.initial = well_from(j.at("initial"));
        const json& pt = j.at("partition");
        cfg.partition.a_tr_boundary = pt.at("a_tr_boundary").get<double>();
        cfg.partition.barrier_center = pt.at("barrier_center").get<double>();
        cfg.partition.barrier_half_width = pt.at("barrier_half_width").get<double>();
        cfg.bit = j.at("bit").get<int>();
        cfg.n_bounces = j.at("n_bounces").get<int>();
        cfg.frame_stride = j.value("frame_stride", 2000);
        cfg.dt_safety = j.value("dt_safety", 0.9);
        cfg.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("collapse")) {
            const json& c = j.at("collapse");
            cfg.collapse.flux_arm = c.value("flux_arm", 1e-3);
            cfg.collapse.flux_fire = c.value("flux_fire", 1e-6);
            cfg.collapse.quiet_hold = c.value("quiet_hold", 0.25);
        }
        cfg.collapse.enabled = (cfg.bit == 1);
        for (const json& sj : j.at("schedule")) {
            Stage s;
            s.duration = sj.at("duration").get<double>();
            s.potential = potential_from(sj.at("potential"));
            cfg.schedule.stages.push_back(std::move(s));
        }
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario: bad document: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("scenario: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str());
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
    json j;
    j["grid"] = {{"x_min", cfg.grid.x_min},
                 {"x_max", cfg.grid.x_max},
                 {"n_points", cfg.grid.n_points}};
    j["initial"] = well_to(cfg.initial);
    j["partition"] = {{"a_tr_boundary", cfg.partition.a_tr_boundary},
                      {"barrier_center", cfg.partition.barrier_center},
                      {"barrier_half_width", cfg.partition.barrier_half_width}};
    j["bit"] = cfg.bit;
    j["n_bounces"] = cfg.n_bounces;
    j["frame_stride"] = cfg.frame_stride;
    j["dt_safety"] = cfg.dt_safety;
    j["seed"] = cfg.seed;
    j["collapse"] = {{"flux_arm", cfg.collapse.flux_arm},
                     {"flux_fire", cfg.collapse.flux_fire},
                     {"quiet_hold", cfg.collapse.quiet_hold}};
    j["schedule"] = json::array();
    for (const Stage& s : cfg.schedule.stages)
        j["schedule"].push_back(
            {{"duration", s.duration}, {"potential", potential_to(s.potential)}});
    return j.dump(2) + "\n";
}

} // namespace zenolink
