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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mamimo/maxmin.hpp"
#include "mamimo/mc_verifier.hpp"
#include "mamimo/rate_engine.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo {

inline constexpr int kScenarioSchemaVersion = 1;

/// Shortest decimal that parses back to the same double; locale independent.
std::string format_double(double value);

std::string_view to_string(DeviceClass cls);
DeviceClass device_class_from_string(std::string_view name);

/// Scenario document: schema_version, M, noise_power, p_max, cell_radius_m,
/// guard_radius_m, pathloss_fixed_db, pathloss_slope, seed and devices
/// [{id, class, position: [x, y] | null, beta}].
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

void write_scenario(const std::filesystem::path& path, const Scenario& scenario);
Scenario read_scenario(const std::filesystem::path& path);

nlohmann::json power_to_json(const PowerAllocation& power);
nlohmann::json scheme_to_json(const SchemeConfig& config);
nlohmann::json report_to_json(const RateReport& report);

/// 64-bit FNV-1a, used to fingerprint resolved configurations.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

/// Provenance carried by every output file.
struct OutputMetadata {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string experiment;
};

void write_csv_metadata(std::ostream& out, const OutputMetadata& meta);

/// Column contract: scheme, M, N, Np_h, Np_m, alpha, device_id, class, beta,
/// p, q, gamma, gamma_bar, sinr, prelog, rate.
extern const std::vector<std::string> kRateColumns;
void write_rate_header(std::ostream& out);
void write_rate_rows(std::ostream& out, const RateReport& report);

/// Column contract: scheme, M, N, Np_m, alpha, floor_Rm, achieved_Rh, feasible.
extern const std::vector<std::string> kRegionColumns;
void write_region_header(std::ostream& out);
void write_region_row(std::ostream& out, const SchemeConfig& base, int antennas, const RateRegionPoint& point);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace mamimo
