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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mamimo/maxmin.hpp"
#include "mamimo/pilot_model.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo::cli {

enum class Experiment { Drop, Rates, Region, Antennas, Verify };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);

/// Where the population comes from: a random drop, a scenario file, or an inline scenario document.
struct ScenarioSource {
    std::optional<DropConfig> drop;
    std::optional<std::filesystem::path> path;
    std::optional<nlohmann::json> inline_doc;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Rates;
    std::optional<std::uint64_t> seed;  // filled in by resolve()
    ScenarioSource scenario;
    std::optional<int> antennas;  // overrides M of the scenario
    std::vector<SchemeConfig> schemes;
    PilotPowerMode pilot_power_mode = PilotPowerMode::FullPilotPower;
    std::optional<double> data_power;   // rates/verify; default p_max
    std::optional<double> pilot_power;  // rates/verify; default p_max
    std::vector<double> floors;         // absolute machine rate floors
    int floor_points = 6;               // used when floors is empty
    std::vector<int> antenna_grid{10, 20, 50, 100, 200, 400, 1000};
    SweepPowers sweep_powers = SweepPowers::Fixed;
    long samples = 10000;
    int threads = 1;
    int drops = 1;
    std::filesystem::path out = "out";
};

/// N = 200, Np_m = 15, alpha = 0.5 for SC1; Np_h = 0 means "derive from the population".
SchemeConfig default_scheme(Scheme scheme);

ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig read_config(const std::filesystem::path& path);

/// Defaults filled in, seed drawn if absent, everything checked.
void resolve(ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Hash of the resolved configuration, embedded in every output.
std::string config_hash(const ExperimentConfig& config);

/// Scenario for drop i (0-based).
Scenario make_drop(const ExperimentConfig& config, int drop);

/// Runs the experiment and writes its artifacts under config.out.
void run(const ExperimentConfig& config);

}  // namespace mamimo::cli
