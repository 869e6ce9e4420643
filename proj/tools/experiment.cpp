// mamimo: massive-MIMO uplink rate engine for human/machine-type coexistence
// Copyright (C) 2026 The mamimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "mamimo/io.hpp"
#include "mamimo/mc_verifier.hpp"
#include "mamimo/rate_engine.hpp"

namespace mamimo::cli {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& doc, const char* name) {
    try {
        return doc.at(name).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + name + "' has the wrong type");
    }
}

template <typename T>
void read_if(const json& doc, const char* name, T& target) {
    if (doc.contains(name)) target = field<T>(doc, name);
}

void reject_unknown(const json& doc, std::initializer_list<const char*> known, const std::string& where) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : doc.items())
        if (!allowed.contains(key)) throw ConfigError("unknown field '" + key + "' in " + where);
}

DropConfig drop_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("field 'scenario.drop' must be an object");
    reject_unknown(doc,
                   {"num_humans", "num_machines", "antennas", "cell_radius_m", "guard_radius_m", "pathloss_fixed_db",
                    "pathloss_slope", "noise_psd_dbm_per_hz", "bandwidth_hz", "p_max_dbm"},
                   "scenario.drop");
    DropConfig d;
    read_if(doc, "num_humans", d.num_humans);
    read_if(doc, "num_machines", d.num_machines);
    read_if(doc, "antennas", d.antennas);
    read_if(doc, "cell_radius_m", d.geometry.cell_radius_m);
    read_if(doc, "guard_radius_m", d.geometry.guard_radius_m);
    read_if(doc, "pathloss_fixed_db", d.geometry.pathloss_fixed_db);
    read_if(doc, "pathloss_slope", d.geometry.pathloss_slope);
    read_if(doc, "noise_psd_dbm_per_hz", d.noise_psd_dbm_per_hz);
    read_if(doc, "bandwidth_hz", d.bandwidth_hz);
    read_if(doc, "p_max_dbm", d.p_max_dbm);
    return d;
}

json drop_to_json(const DropConfig& d) {
    return {{"num_humans", d.num_humans},
            {"num_machines", d.num_machines},
            {"antennas", d.antennas},
            {"cell_radius_m", d.geometry.cell_radius_m},
            {"guard_radius_m", d.geometry.guard_radius_m},
            {"pathloss_fixed_db", d.geometry.pathloss_fixed_db},
            {"pathloss_slope", d.geometry.pathloss_slope},
            {"noise_psd_dbm_per_hz", d.noise_psd_dbm_per_hz},
            {"bandwidth_hz", d.bandwidth_hz},
            {"p_max_dbm", d.p_max_dbm}};
}

// Np_h is left at 0 when absent; resolve() fills it from the population.
SchemeConfig scheme_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("entries of 'schemes' must be objects");
    reject_unknown(doc, {"scheme", "N", "Np_h", "Np_m", "alpha"}, "schemes");
    if (!doc.contains("scheme")) throw ConfigError("missing field 'schemes[].scheme'");
    SchemeConfig c = default_scheme(scheme_from_string(field<std::string>(doc, "scheme")));
    read_if(doc, "N", c.N);
    read_if(doc, "Np_h", c.np_h);
    read_if(doc, "Np_m", c.np_m);
    read_if(doc, "alpha", c.alpha_h);
    return c;
}

std::string file_name(const std::string& stem, const std::string& ext, const ExperimentConfig& cfg, int drop) {
    if (cfg.drops == 1) return stem + ext;
    char buf[16];
    std::snprintf(buf, sizeof buf, "_d%03d", drop);
    return stem + buf + ext;
}

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name) {
    std::ofstream out(cfg.out / name);
    if (!out) throw std::runtime_error("cannot write " + (cfg.out / name).string());
    return out;
}

void write_json(const ExperimentConfig& cfg, const std::string& name, const json& doc) {
    open_out(cfg, name) << doc.dump(2) << '\n';
}

std::uint64_t drop_seed(const ExperimentConfig& cfg, int drop) { return *cfg.seed + static_cast<std::uint64_t>(drop); }

OutputMetadata metadata(const ExperimentConfig& cfg, int drop) {
    return {config_hash(cfg), drop_seed(cfg, drop), std::string(to_string(cfg.experiment))};
}

SchemeConfig bind(const SchemeConfig& c, int num_humans) {
    SchemeConfig out = c;
    if (out.np_h == 0) out.np_h = out.scheme == Scheme::SC2 ? num_humans + out.np_m : num_humans;
    return out;
}

PowerAllocation fixed_power(const ExperimentConfig& cfg, const Scenario& s) {
    return PowerAllocation::uniform(s, cfg.data_power.value_or(s.p_max()), cfg.pilot_power.value_or(s.p_max()));
}

OptimizationProblem problem_for(const ExperimentConfig& cfg, const Scenario& s, const SchemeConfig& c) {
    OptimizationProblem p{s, bind(c, s.num_humans())};
    p.pilot_power_mode = cfg.pilot_power_mode;
    p.threads = cfg.threads;
    return p;
}

// ---------------------------------------------------------------------------

void run_drop(const ExperimentConfig& cfg) {
    for (int d = 0; d < cfg.drops; ++d) {
        json doc = scenario_to_json(make_drop(cfg, d));
        doc["meta"] = {{"experiment", "drop"}, {"config_hash", config_hash(cfg)}, {"seed", drop_seed(cfg, d)}};
        write_json(cfg, file_name("scenario", ".json", cfg, d), doc);
    }
}

void run_rates(const ExperimentConfig& cfg) {
    std::vector<double> mean_h(cfg.schemes.size()), mean_m(cfg.schemes.size());
    std::vector<int> antennas(cfg.schemes.size());
    for (int d = 0; d < cfg.drops; ++d) {
        const Scenario s = make_drop(cfg, d);
        const PowerAllocation power = fixed_power(cfg, s);
        auto csv = open_out(cfg, file_name("rates", ".csv", cfg, d));
        write_csv_metadata(csv, metadata(cfg, d));
        write_rate_header(csv);
        json reports = json::array();
        for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
            const RateReport r = rates(s, power, bind(cfg.schemes[i], s.num_humans()));
            write_rate_rows(csv, r);
            reports.push_back(report_to_json(r));
            mean_h[i] += r.min_human_rate / cfg.drops;
            mean_m[i] += r.min_machine_rate.value_or(0.0) / cfg.drops;
            antennas[i] = r.antennas;
        }
        write_json(cfg, file_name("rates", ".json", cfg, d),
                   {{"meta", {{"config_hash", config_hash(cfg)}, {"seed", drop_seed(cfg, d)}}},
                    {"power", power_to_json(power)},
                    {"reports", reports}});
    }
    if (cfg.drops == 1) return;
    auto csv = open_out(cfg, "rates_mean.csv");
    write_csv_metadata(csv, metadata(cfg, 0));
    write_csv_row(csv, {"scheme", "M", "drops", "mean_min_human_rate", "mean_min_machine_rate"});
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        write_csv_row(csv, {std::string(to_string(cfg.schemes[i].scheme)), std::to_string(antennas[i]),
                            std::to_string(cfg.drops), format_double(mean_h[i]), format_double(mean_m[i])});
}

std::vector<double> floors_for(const ExperimentConfig& cfg, const Scenario& s) {
    if (!cfg.floors.empty()) return cfg.floors;
    double top = 0.0;
    for (const SchemeConfig& c : cfg.schemes) {
        const RateRegionPoint p = max_machine_rate(problem_for(cfg, s, c));
        if (p.feasible) top = std::max(top, p.R_m);
    }
    std::vector<double> floors;
    for (int j = 0; j <= cfg.floor_points; ++j) floors.push_back(top * j / cfg.floor_points);
    return floors;
}

void run_region(const ExperimentConfig& cfg) {
    struct Mean {
        double floor = 0.0, R_h = 0.0, R_m = 0.0;
        int feasible = 0;
    };
    std::vector<std::vector<Mean>> means(cfg.schemes.size());
    int antennas = 0;
    for (int d = 0; d < cfg.drops; ++d) {
        const Scenario s = make_drop(cfg, d);
        antennas = s.antennas();
        const std::vector<double> floors = floors_for(cfg, s);
        auto csv = open_out(cfg, file_name("region", ".csv", cfg, d));
        write_csv_metadata(csv, metadata(cfg, d));
        write_region_header(csv);
        json points = json::array();
        for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
            const OptimizationProblem pr = problem_for(cfg, s, cfg.schemes[i]);
            const auto pts = rate_region_sweep(pr, floors);
            means[i].resize(pts.size());
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const RateRegionPoint& pt = pts[j];
                write_region_row(csv, pr.scheme, s.antennas(), pt);
                points.push_back({{"scheme", to_string(pr.scheme.scheme)},
                                  {"floor_Rm", pt.floor},
                                  {"achieved_Rh", pt.R_h},
                                  {"achieved_Rm", pt.R_m},
                                  {"Np_m", pt.np_m_opt},
                                  {"alpha", pt.alpha_opt},
                                  {"feasible", pt.feasible},
                                  {"power", pt.feasible ? power_to_json(pt.powers) : json(nullptr)}});
                Mean& m = means[i][j];
                m.floor += pt.floor / cfg.drops;
                if (pt.feasible) {
                    m.R_h += pt.R_h;
                    m.R_m += pt.R_m;
                    ++m.feasible;
                }
            }
        }
        write_json(cfg, file_name("region", ".json", cfg, d),
                   {{"meta", {{"config_hash", config_hash(cfg)}, {"seed", drop_seed(cfg, d)}}},
                    {"pilot_power_mode",
                     cfg.pilot_power_mode == PilotPowerMode::TiedToData ? "tied" : "full"},
                    {"points", points}});
    }
    if (cfg.drops == 1) return;
    auto csv = open_out(cfg, "region_mean.csv");
    write_csv_metadata(csv, metadata(cfg, 0));
    write_csv_row(csv, {"scheme", "M", "point", "mean_floor_Rm", "mean_achieved_Rh", "mean_achieved_Rm",
                        "feasible_drops"});
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        for (std::size_t j = 0; j < means[i].size(); ++j) {
            const Mean& m = means[i][j];
            const double n = std::max(m.feasible, 1);
            write_csv_row(csv, {std::string(to_string(cfg.schemes[i].scheme)), std::to_string(antennas),
                                std::to_string(j), format_double(m.floor), format_double(m.R_h / n),
                                format_double(m.R_m / n), std::to_string(m.feasible)});
        }
}

void run_antennas(const ExperimentConfig& cfg) {
    const std::vector<std::string> columns{"scheme",          "M",           "N",         "Np_m",
                                           "alpha",           "powers",      "min_human_rate",
                                           "min_machine_rate", "asymptotic_machine_rate", "gap", "feasible"};
    const bool optimized = cfg.sweep_powers == SweepPowers::Optimized;
    std::vector<std::vector<std::array<double, 3>>> means(cfg.schemes.size(),
                                                          std::vector<std::array<double, 3>>(cfg.antenna_grid.size()));
    for (int d = 0; d < cfg.drops; ++d) {
        const Scenario s = make_drop(cfg, d);
        auto csv = open_out(cfg, file_name("antennas", ".csv", cfg, d));
        write_csv_metadata(csv, metadata(cfg, d));
        write_csv_row(csv, columns);
        for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
            const OptimizationProblem pr = problem_for(cfg, s, cfg.schemes[i]);
            const auto sweep = antenna_sweep(pr, cfg.antenna_grid, cfg.sweep_powers);
            for (std::size_t j = 0; j < sweep.size(); ++j) {
                const AntennaSweepPoint& pt = sweep[j];
                const SchemeConfig& c = pt.report.config;
                const bool feasible = !optimized || pt.optimized->feasible;
                write_csv_row(csv, {std::string(to_string(c.scheme)), std::to_string(pt.antennas),
                                    std::to_string(c.N), std::to_string(c.np_m), format_double(c.alpha_h),
                                    optimized ? "optimized" : "fixed", format_double(pt.min_human_rate),
                                    format_double(pt.min_machine_rate), format_double(pt.asymptotic_machine_rate),
                                    format_double(pt.gap), feasible ? "true" : "false"});
                means[i][j][0] += pt.min_human_rate / cfg.drops;
                means[i][j][1] += pt.min_machine_rate / cfg.drops;
                means[i][j][2] += pt.gap / cfg.drops;
            }
        }
    }
    if (cfg.drops == 1) return;
    auto csv = open_out(cfg, "antennas_mean.csv");
    write_csv_metadata(csv, metadata(cfg, 0));
    write_csv_row(csv, {"scheme", "M", "drops", "mean_min_human_rate", "mean_min_machine_rate", "mean_gap"});
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        for (std::size_t j = 0; j < cfg.antenna_grid.size(); ++j)
            write_csv_row(csv, {std::string(to_string(cfg.schemes[i].scheme)), std::to_string(cfg.antenna_grid[j]),
                                std::to_string(cfg.drops), format_double(means[i][j][0]),
                                format_double(means[i][j][1]), format_double(means[i][j][2])});
}

void run_verify(const ExperimentConfig& cfg) {
    int rows = 0, passed = 0;
    for (int d = 0; d < cfg.drops; ++d) {
        const Scenario s = make_drop(cfg, d);
        const PowerAllocation power = fixed_power(cfg, s);
        auto csv = open_out(cfg, file_name("verify", ".csv", cfg, d));
        write_csv_metadata(csv, metadata(cfg, d));
        write_csv_row(csv, {"scheme", "M", "device_id", "class", "quantity", "closed_form", "mc", "std_error",
                            "rel_error", "z", "pass"});
        for (const SchemeConfig& base : cfg.schemes) {
            const SchemeConfig c = bind(base, s.num_humans());
            McOptions opt;
            opt.samples = cfg.samples;
            opt.threads = cfg.threads;
            opt.seed = drop_seed(cfg, d);
            const auto mc = estimate_uatf_components(s, c, power, opt);
            const SinrTerms ref = sinr_terms(s, power, c);
            for (int k = 0; k < s.num_devices(); ++k) {
                const std::pair<const char*, std::pair<double, McEstimate>> quantities[] = {
                    {"gamma_bar", {ref.gamma_bar(k), mc[k].gamma_bar}},
                    {"desired", {ref.desired(k), mc[k].desired}},
                    {"sinr", {ref.sinr(k), mc[k].sinr}},
                };
                for (const auto& [name, pair] : quantities) {
                    const auto& [closed, est] = pair;
                    const double err = std::abs(est.value - closed);
                    const bool ok = err <= std::max(0.02 * std::abs(closed), 4.0 * est.std_error);
                    write_csv_row(csv, {std::string(to_string(c.scheme)), std::to_string(s.antennas()),
                                        std::to_string(k), std::string(to_string(s.device(k).cls)), name,
                                        format_double(closed), format_double(est.value),
                                        format_double(est.std_error),
                                        format_double(closed != 0.0 ? err / std::abs(closed) : err),
                                        format_double(est.std_error > 0.0 ? err / est.std_error : 0.0),
                                        ok ? "true" : "false"});
                    ++rows;
                    passed += ok;
                }
            }
        }
    }
    write_json(cfg, "verify_summary.json",
               {{"meta", {{"config_hash", config_hash(cfg)}, {"seed", *cfg.seed}}},
                {"rows", rows},
                {"passed", passed},
                {"criterion", "|mc - closed| <= max(2% of closed, 4 std_error)"}});
    std::cout << "verify: " << passed << "/" << rows << " rows within max(2%, 4 se)\n";
}

}  // namespace

SchemeConfig default_scheme(Scheme scheme) {
    SchemeConfig c;
    c.scheme = scheme;
    c.N = 200;
    c.np_h = 0;
    c.np_m = 15;
    c.alpha_h = scheme == Scheme::SC1 ? 0.5 : 1.0;
    return c;
}

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::Drop: return "drop";
        case Experiment::Rates: return "rates";
        case Experiment::Region: return "region";
        case Experiment::Antennas: return "antennas";
        case Experiment::Verify: return "verify";
    }
    return "?";
}

Experiment experiment_from_string(std::string_view name) {
    for (Experiment e : {Experiment::Drop, Experiment::Rates, Experiment::Region, Experiment::Antennas,
                         Experiment::Verify})
        if (to_string(e) == name) return e;
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ExperimentConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown(doc,
                   {"experiment", "seed", "scenario", "M", "schemes", "pilot_power_mode", "power", "floors",
                    "floor_points", "antenna_grid", "sweep_powers", "samples", "threads", "drops", "out"},
                   "configuration");
    ExperimentConfig c;
    if (doc.contains("experiment")) c.experiment = experiment_from_string(field<std::string>(doc, "experiment"));
    if (doc.contains("seed")) c.seed = field<std::uint64_t>(doc, "seed");
    if (doc.contains("scenario")) {
        const json& s = doc.at("scenario");
        if (!s.is_object()) throw ConfigError("field 'scenario' must be an object");
        if (s.contains("drop")) {
            reject_unknown(s, {"drop"}, "scenario");
            c.scenario.drop = drop_from_json(s.at("drop"));
        } else if (s.contains("path")) {
            reject_unknown(s, {"path"}, "scenario");
            c.scenario.path = field<std::string>(s, "path");
        } else if (s.contains("schema_version")) {
            c.scenario.inline_doc = s;
        } else {
            throw ConfigError("field 'scenario' needs one of 'drop', 'path' or an inline scenario document");
        }
    }
    if (doc.contains("M")) c.antennas = field<int>(doc, "M");
    if (doc.contains("schemes")) {
        const json& list = doc.at("schemes");
        if (!list.is_array()) throw ConfigError("field 'schemes' must be an array");
        for (const json& s : list) c.schemes.push_back(scheme_from_json(s));
    }
    if (doc.contains("pilot_power_mode")) {
        const auto mode = field<std::string>(doc, "pilot_power_mode");
        if (mode == "full") c.pilot_power_mode = PilotPowerMode::FullPilotPower;
        else if (mode == "tied") c.pilot_power_mode = PilotPowerMode::TiedToData;
        else throw ConfigError("field 'pilot_power_mode' must be 'full' or 'tied'");
    }
    if (doc.contains("power")) {
        const json& p = doc.at("power");
        if (!p.is_object()) throw ConfigError("field 'power' must be an object");
        reject_unknown(p, {"p", "q"}, "power");
        if (p.contains("p")) c.data_power = field<double>(p, "p");
        if (p.contains("q")) c.pilot_power = field<double>(p, "q");
    }
    read_if(doc, "floors", c.floors);
    read_if(doc, "floor_points", c.floor_points);
    read_if(doc, "antenna_grid", c.antenna_grid);
    if (doc.contains("sweep_powers")) {
        const auto mode = field<std::string>(doc, "sweep_powers");
        if (mode == "fixed") c.sweep_powers = SweepPowers::Fixed;
        else if (mode == "optimized") c.sweep_powers = SweepPowers::Optimized;
        else throw ConfigError("field 'sweep_powers' must be 'fixed' or 'optimized'");
    }
    read_if(doc, "samples", c.samples);
    read_if(doc, "threads", c.threads);
    read_if(doc, "drops", c.drops);
    if (doc.contains("out")) c.out = field<std::string>(doc, "out");
    return c;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("configuration file " + path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

void resolve(ExperimentConfig& c) {
    if (!c.seed) c.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) | std::random_device{}();
    if (!c.scenario.drop && !c.scenario.path && !c.scenario.inline_doc) c.scenario.drop = DropConfig{};
    if (c.scenario.drop) validate(*c.scenario.drop);
    if (c.drops < 1) throw ConfigError("field 'drops' must be >= 1");
    if (c.drops > 1 && !c.scenario.drop) throw ConfigError("field 'drops' > 1 needs a random drop scenario");
    if (c.antennas && *c.antennas < 1) throw ConfigError("field 'M' must be >= 1");
    if (c.samples < 1) throw ConfigError("field 'samples' must be >= 1");
    if (c.threads < 0) throw ConfigError("field 'threads' must be >= 0");
    if (c.floor_points < 1) throw ConfigError("field 'floor_points' must be >= 1");
    for (double f : c.floors)
        if (!(f >= 0.0)) throw ConfigError("field 'floors' must hold nonnegative rates");
    if (c.antenna_grid.empty()) throw ConfigError("field 'antenna_grid' must not be empty");
    for (int m : c.antenna_grid)
        if (m < 1) throw ConfigError("field 'antenna_grid' must hold positive antenna counts");
    if (c.schemes.empty())
        for (Scheme s : {Scheme::SC1, Scheme::SC2, Scheme::SC3}) c.schemes.push_back(default_scheme(s));

    const Scenario s = make_drop(c, 0);
    for (SchemeConfig& sc : c.schemes) {
        sc = bind(sc, s.num_humans());
        validate(sc, s.num_humans());
    }
    for (const auto& [name, v] : {std::pair{"power.p", c.data_power}, std::pair{"power.q", c.pilot_power}})
        if (v && !(*v >= 0.0 && *v <= s.p_max()))
            throw ConfigError(std::string("field '") + name + "' must lie in [0, p_max]");
}

json config_to_json(const ExperimentConfig& c) {
    json doc;
    doc["experiment"] = to_string(c.experiment);
    doc["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    if (c.scenario.drop) doc["scenario"] = {{"drop", drop_to_json(*c.scenario.drop)}};
    else if (c.scenario.path) doc["scenario"] = {{"path", c.scenario.path->string()}};
    else if (c.scenario.inline_doc) doc["scenario"] = *c.scenario.inline_doc;
    if (c.antennas) doc["M"] = *c.antennas;
    doc["schemes"] = json::array();
    for (const SchemeConfig& s : c.schemes) doc["schemes"].push_back(scheme_to_json(s));
    doc["pilot_power_mode"] = c.pilot_power_mode == PilotPowerMode::TiedToData ? "tied" : "full";
    json power = json::object();
    if (c.data_power) power["p"] = *c.data_power;
    if (c.pilot_power) power["q"] = *c.pilot_power;
    doc["power"] = power;
    doc["floors"] = c.floors;
    doc["floor_points"] = c.floor_points;
    doc["antenna_grid"] = c.antenna_grid;
    doc["sweep_powers"] = c.sweep_powers == SweepPowers::Optimized ? "optimized" : "fixed";
    doc["samples"] = c.samples;
    doc["threads"] = c.threads;
    doc["drops"] = c.drops;
    doc["out"] = c.out.string();
    return doc;
}

std::string config_hash(const ExperimentConfig& c) {
    json doc = config_to_json(c);
    doc.erase("out");
    doc.erase("threads");
    return hex64(fnv1a64(doc.dump()));
}

Scenario make_drop(const ExperimentConfig& c, int drop) {
    Scenario s = [&] {
        if (c.scenario.drop) return drop_devices(*c.scenario.drop, *c.seed + static_cast<std::uint64_t>(drop));
        if (c.scenario.path) return read_scenario(*c.scenario.path);
        return scenario_from_json(*c.scenario.inline_doc);
    }();
    return c.antennas ? s.with_antennas(*c.antennas) : s;
}

void run(const ExperimentConfig& c) {
    std::filesystem::create_directories(c.out);
    json resolved = config_to_json(c);
    resolved["config_hash"] = config_hash(c);
    write_json(c, "config.json", resolved);
    switch (c.experiment) {
        case Experiment::Drop: run_drop(c); break;
        case Experiment::Rates: run_rates(c); break;
        case Experiment::Region: run_region(c); break;
        case Experiment::Antennas: run_antennas(c); break;
        case Experiment::Verify: run_verify(c); break;
    }
}

}  // namespace mamimo::cli
