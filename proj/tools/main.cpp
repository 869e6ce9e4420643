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

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "experiment.hpp"
#include "mamimo/errors.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<long> samples;
    std::optional<int> threads;
    std::optional<int> drops;
    std::optional<int> antennas;
    std::optional<std::string> scenario;
    std::optional<std::string> scheme;
    std::optional<int> n;
    std::optional<int> np_m;
    std::optional<double> alpha;
    std::optional<std::string> pilot_power_mode;
    std::optional<std::string> sweep_powers;
    std::optional<int> floor_points;
    std::vector<int> antenna_grid;
};

void apply(const Overrides& o, mamimo::cli::ExperimentConfig& c) {
    using namespace mamimo;
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.samples) c.samples = *o.samples;
    if (o.threads) c.threads = *o.threads;
    if (o.drops) c.drops = *o.drops;
    if (o.antennas) c.antennas = *o.antennas;
    if (o.scenario) c.scenario = {std::nullopt, std::filesystem::path(*o.scenario), std::nullopt};
    if (c.schemes.empty())
        for (Scheme s : {Scheme::SC1, Scheme::SC2, Scheme::SC3}) c.schemes.push_back(cli::default_scheme(s));
    if (o.scheme) {
        const Scheme s = scheme_from_string(*o.scheme);
        const auto it = std::find_if(c.schemes.begin(), c.schemes.end(),
                                     [&](const SchemeConfig& sc) { return sc.scheme == s; });
        c.schemes = {it != c.schemes.end() ? *it : cli::default_scheme(s)};
    }
    for (SchemeConfig& sc : c.schemes) {
        if (o.n) sc.N = *o.n;
        if (o.np_m) {
            sc.np_m = *o.np_m;
            if (sc.scheme == Scheme::SC2) sc.np_h = 0;
        }
        if (o.alpha) sc.alpha_h = *o.alpha;
    }
    if (o.pilot_power_mode) {
        if (*o.pilot_power_mode == "full") c.pilot_power_mode = PilotPowerMode::FullPilotPower;
        else if (*o.pilot_power_mode == "tied") c.pilot_power_mode = PilotPowerMode::TiedToData;
        else throw ConfigError("--pilot-power must be 'full' or 'tied'");
    }
    if (o.sweep_powers) {
        if (*o.sweep_powers == "fixed") c.sweep_powers = SweepPowers::Fixed;
        else if (*o.sweep_powers == "optimized") c.sweep_powers = SweepPowers::Optimized;
        else throw ConfigError("--powers must be 'fixed' or 'optimized'");
    }
    if (o.floor_points) c.floor_points = *o.floor_points;
    if (!o.antenna_grid.empty()) c.antenna_grid = o.antenna_grid;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mamimo;
    CLI::App app{"mamimo: massive-MIMO uplink rates for human- and machine-type devices"};
    app.require_subcommand(1);

    Overrides o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "experiment configuration (JSON)");
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("-o,--out", o.out, "output directory");
        sub->add_option("--samples", o.samples, "Monte Carlo realizations");
        sub->add_option("--threads", o.threads, "worker threads, 0 = all cores");
        sub->add_option("--drops", o.drops, "independent device drops to average over");
        sub->add_option("-M,--antennas", o.antennas, "base station antennas");
        sub->add_option("--scenario", o.scenario, "scenario JSON file instead of a random drop");
        sub->add_option("--scheme", o.scheme, "run a single scheme: SC1, SC2 or SC3");
        sub->add_option("-N,--ci-length", o.n, "coherence interval length in samples");
        sub->add_option("--np-m", o.np_m, "machine pilot count");
        sub->add_option("--alpha", o.alpha, "SC1 human share of the coherence interval");
        sub->add_option("--pilot-power", o.pilot_power_mode, "optimizer pilot power: full or tied");
    };

    auto* drop = app.add_subcommand("drop", "draw device positions and write the scenario JSON");
    auto* rates = app.add_subcommand("rates", "closed-form rates at fixed powers");
    auto* region = app.add_subcommand("region", "max-min rate region sweep");
    auto* antennas = app.add_subcommand("antennas", "rates as a function of the antenna count");
    auto* verify = app.add_subcommand("verify", "Monte Carlo check of the closed-form SINR");
    for (auto* sub : {drop, rates, region, antennas, verify}) common(sub);
    region->add_option("--floor-points", o.floor_points, "machine rate floors between 0 and the best machine rate");
    antennas->add_option("--grid", o.antenna_grid, "antenna counts")->delimiter(',');
    antennas->add_option("--powers", o.sweep_powers, "fixed (p = q = p_max) or optimized");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cli::ExperimentConfig config = o.config.empty() ? cli::ExperimentConfig{} : cli::read_config(o.config);
        for (auto [sub, e] : {std::pair{drop, cli::Experiment::Drop}, std::pair{rates, cli::Experiment::Rates},
                              std::pair{region, cli::Experiment::Region},
                              std::pair{antennas, cli::Experiment::Antennas},
                              std::pair{verify, cli::Experiment::Verify}})
            if (sub->parsed()) config.experiment = e;
        apply(o, config);
        cli::resolve(config);
        cli::run(config);
        std::cerr << "wrote " << config.out.string() << " (seed " << *config.seed << ", config "
                  << cli::config_hash(config) << ")\n";
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
