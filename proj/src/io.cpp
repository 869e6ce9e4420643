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

#include "mamimo/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mamimo {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& doc, const char* field) {
    if (!doc.contains(field)) throw ConfigError(std::string("missing field '") + field + "'");
    try {
        return doc.at(field).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + field + "' has the wrong type");
    }
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string_view to_string(DeviceClass cls) { return cls == DeviceClass::Human ? "human" : "machine"; }

DeviceClass device_class_from_string(std::string_view name) {
    if (name == "human") return DeviceClass::Human;
    if (name == "machine") return DeviceClass::Machine;
    throw ConfigError("unknown device class '" + std::string(name) + "'");
}

json scenario_to_json(const Scenario& scenario) {
    json devices = json::array();
    for (const Device& d : scenario.devices()) {
        json pos = d.position ? json::array({d.position->x_m, d.position->y_m}) : json(nullptr);
        devices.push_back({{"id", d.id}, {"class", to_string(d.cls)}, {"position", pos}, {"beta", d.beta}});
    }
    const Geometry& g = scenario.geometry();
    return {{"schema_version", kScenarioSchemaVersion},
            {"M", scenario.antennas()},
            {"noise_power", scenario.noise_power()},
            {"p_max", scenario.p_max()},
            {"cell_radius_m", g.cell_radius_m},
            {"guard_radius_m", g.guard_radius_m},
            {"pathloss_fixed_db", g.pathloss_fixed_db},
            {"pathloss_slope", g.pathloss_slope},
            {"seed", scenario.seed()},
            {"devices", devices}};
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
    const int version = required<int>(doc, "schema_version");
    if (version != kScenarioSchemaVersion)
        throw ConfigError("unsupported scenario schema_version " + std::to_string(version));

    Geometry g;
    g.cell_radius_m = required<double>(doc, "cell_radius_m");
    g.guard_radius_m = required<double>(doc, "guard_radius_m");
    g.pathloss_fixed_db = required<double>(doc, "pathloss_fixed_db");
    g.pathloss_slope = required<double>(doc, "pathloss_slope");

    const json& list = doc.contains("devices") ? doc.at("devices") : throw ConfigError("missing field 'devices'");
    if (!list.is_array()) throw ConfigError("field 'devices' must be an array");
    std::vector<Device> devices;
    for (const json& d : list) {
        Device dev;
        dev.id = required<int>(d, "id");
        dev.cls = device_class_from_string(required<std::string>(d, "class"));
        dev.beta = required<double>(d, "beta");
        if (d.contains("position") && !d.at("position").is_null()) {
            const auto xy = required<std::vector<double>>(d, "position");
            if (xy.size() != 2) throw ConfigError("device position must be [x, y]");
            dev.position = Position{xy[0], xy[1]};
        }
        devices.push_back(dev);
    }
    return Scenario(std::move(devices), required<int>(doc, "M"), required<double>(doc, "noise_power"),
                    required<double>(doc, "p_max"), g, required<std::uint64_t>(doc, "seed"));
}

void write_scenario(const std::filesystem::path& path, const Scenario& scenario) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << scenario_to_json(scenario).dump(2) << '\n';
}

Scenario read_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario file " + path.string() + ": " + e.what());
    }
    return scenario_from_json(doc);
}

json power_to_json(const PowerAllocation& power) {
    return {{"p", std::vector<double>(power.p.data(), power.p.data() + power.p.size())},
            {"q", std::vector<double>(power.q.data(), power.q.data() + power.q.size())}};
}

json scheme_to_json(const SchemeConfig& c) {
    return {{"scheme", to_string(c.scheme)}, {"N", c.N}, {"Np_h", c.np_h}, {"Np_m", c.np_m}, {"alpha", c.alpha_h}};
}

json report_to_json(const RateReport& report) {
    json devices = json::array();
    for (const DeviceRate& d : report.devices) {
        devices.push_back({{"device_id", d.id},
                           {"class", to_string(d.cls)},
                           {"beta", d.beta},
                           {"p", d.p},
                           {"q", d.q},
                           {"gamma", d.terms.gamma},
                           {"gamma_bar", d.terms.gamma_bar},
                           {"desired", d.terms.desired},
                           {"noncoherent", d.terms.noncoherent},
                           {"coherent", d.terms.coherent},
                           {"sinr", d.terms.sinr},
                           {"prelog", d.prelog},
                           {"rate", d.rate}});
    }
    json out = {{"config", scheme_to_json(report.config)},
                {"M", report.antennas},
                {"min_human_rate", report.min_human_rate},
                {"devices", devices}};
    out["min_machine_rate"] = report.min_machine_rate ? json(*report.min_machine_rate) : json(nullptr);
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    std::array<char, 17> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, 16);
    std::string s(buf.data(), res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

void write_csv_metadata(std::ostream& out, const OutputMetadata& meta) {
    out << "# experiment=" << meta.experiment << " config_hash=" << meta.config_hash << " seed=" << meta.seed
        << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
}

const std::vector<std::string> kRateColumns = {"scheme", "M",         "N",        "Np_h",  "Np_m",      "alpha",
                                               "device_id", "class",  "beta",     "p",     "q",         "gamma",
                                               "gamma_bar", "sinr",   "prelog",   "rate"};

void write_rate_header(std::ostream& out) { write_csv_row(out, kRateColumns); }

void write_rate_rows(std::ostream& out, const RateReport& r) {
    const SchemeConfig& c = r.config;
    for (const DeviceRate& d : r.devices) {
        write_csv_row(out, {std::string(to_string(c.scheme)), std::to_string(r.antennas), std::to_string(c.N),
                            std::to_string(c.np_h), std::to_string(c.np_m), format_double(c.alpha_h),
                            std::to_string(d.id), std::string(to_string(d.cls)), format_double(d.beta),
                            format_double(d.p), format_double(d.q), format_double(d.terms.gamma),
                            format_double(d.terms.gamma_bar), format_double(d.terms.sinr),
                            format_double(d.prelog), format_double(d.rate)});
    }
}

const std::vector<std::string> kRegionColumns = {"scheme",   "M",           "N",       "Np_m",
                                                 "alpha",    "floor_Rm",    "achieved_Rh", "achieved_Rm",
                                                 "feasible"};

void write_region_header(std::ostream& out) { write_csv_row(out, kRegionColumns); }

void write_region_row(std::ostream& out, const SchemeConfig& base, int antennas, const RateRegionPoint& pt) {
    write_csv_row(out, {std::string(to_string(base.scheme)), std::to_string(antennas), std::to_string(base.N),
                        std::to_string(pt.np_m_opt), format_double(pt.alpha_opt), format_double(pt.floor),
                        format_double(pt.R_h), format_double(pt.R_m), pt.feasible ? "true" : "false"});
}

}  // namespace mamimo
