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

#include "mamimo/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "mamimo/random.hpp"

namespace mamimo {

double Position::norm() const { return std::hypot(x_m, y_m); }

double DropConfig::noise_power() const {
    return dbm_to_watts(noise_psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

double DropConfig::p_max() const { return dbm_to_watts(p_max_dbm); }

void validate(const DropConfig& config) {
    if (config.num_humans < 1) throw ConfigError("num_humans must be >= 1");
    if (config.num_machines < 0) throw ConfigError("num_machines must be >= 0");
    if (config.antennas < 1) throw ConfigError("antennas must be >= 1");
    const auto& g = config.geometry;
    if (!(g.guard_radius_m > 0.0 && g.guard_radius_m < g.cell_radius_m))
        throw ConfigError("geometry requires 0 < guard_radius_m < cell_radius_m");
    if (!(config.bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz must be > 0");
}

Scenario::Scenario(std::vector<Device> devices, int antennas, double noise_power, double p_max,
                   Geometry geometry, std::uint64_t seed)
    : devices_(std::move(devices)),
      antennas_(antennas),
      noise_power_(noise_power),
      p_max_(p_max),
      geometry_(geometry),
      seed_(seed) {
    if (antennas_ < 1) throw ConfigError("antenna count M must be >= 1");
    if (!(noise_power_ > 0.0)) throw ConfigError("noise_power must be > 0");
    if (!(p_max_ > 0.0)) throw ConfigError("p_max must be > 0");
    if (!(geometry_.guard_radius_m > 0.0 && geometry_.guard_radius_m < geometry_.cell_radius_m))
        throw ConfigError("geometry requires 0 < guard_radius_m < cell_radius_m");

    bool seen_machine = false;
    beta_.resize(static_cast<Eigen::Index>(devices_.size()));
    for (std::size_t k = 0; k < devices_.size(); ++k) {
        const Device& d = devices_[k];
        if (d.id != static_cast<int>(k)) throw ConfigError("device ids must equal their index");
        if (!(d.beta > 0.0) || !std::isfinite(d.beta))
            throw ConfigError("device " + std::to_string(k) + ": beta must be positive");
        if (d.cls == DeviceClass::Machine) {
            seen_machine = true;
        } else {
            if (seen_machine) throw ConfigError("humans must precede machines in device order");
            ++num_humans_;
        }
        beta_(static_cast<Eigen::Index>(k)) = d.beta;
    }
    if (num_humans_ < 1) throw ConfigError("scenario needs at least one human");
}

Scenario Scenario::with_antennas(int antennas) const {
    Scenario copy = *this;
    if (antennas < 1) throw ConfigError("antenna count M must be >= 1");
    copy.antennas_ = antennas;
    return copy;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.devices_ == b.devices_ && a.antennas_ == b.antennas_ &&
           a.noise_power_ == b.noise_power_ && a.p_max_ == b.p_max_ && a.geometry_ == b.geometry_ &&
           a.seed_ == b.seed_;
}

double pathloss_db(double distance_km, double fixed_db, double slope) {
    if (!(distance_km > 0.0)) throw std::domain_error("pathloss_db: distance must be positive");
    return fixed_db + slope * std::log10(distance_km);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }

Scenario make_scenario(std::span<const double> human_betas, std::span<const double> machine_betas,
                       int antennas, double noise_power, double p_max) {
    std::vector<Device> devices;
    devices.reserve(human_betas.size() + machine_betas.size());
    for (double b : human_betas)
        devices.push_back({static_cast<int>(devices.size()), DeviceClass::Human, std::nullopt, b});
    for (double b : machine_betas)
        devices.push_back({static_cast<int>(devices.size()), DeviceClass::Machine, std::nullopt, b});
    return Scenario(std::move(devices), antennas, noise_power, p_max);
}

Scenario drop_devices(const DropConfig& config, std::uint64_t seed) {
    validate(config);
    const auto& g = config.geometry;
    Rng rng = make_stream(seed);
    // Area-uniform radius: r^2 uniform on [r0^2, r1^2].
    std::uniform_real_distribution<double> r2(g.guard_radius_m * g.guard_radius_m,
                                              g.cell_radius_m * g.cell_radius_m);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    const int total = config.num_humans + config.num_machines;
    std::vector<Device> devices;
    devices.reserve(static_cast<std::size_t>(total));
    for (int k = 0; k < total; ++k) {
        const double r = std::sqrt(r2(rng));
        const double theta = angle(rng);
        Position pos{r * std::cos(theta), r * std::sin(theta)};
        const double pl = pathloss_db(r / 1000.0, g.pathloss_fixed_db, g.pathloss_slope);
        devices.push_back({k, k < config.num_humans ? DeviceClass::Human : DeviceClass::Machine, pos,
                           db_to_linear(-pl)});
    }
    return Scenario(std::move(devices), config.antennas, config.noise_power(), config.p_max(), g,
                    seed);
}

}  // namespace mamimo
