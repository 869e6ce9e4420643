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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mamimo/errors.hpp"

namespace mamimo {

enum class DeviceClass { Human, Machine };

struct Position {
    double x_m = 0.0;
    double y_m = 0.0;

    double norm() const;
    friend bool operator==(const Position&, const Position&) = default;
};

struct Device {
    int id = 0;
    DeviceClass cls = DeviceClass::Human;
    std::optional<Position> position;  // absent when beta was injected directly
    double beta = 0.0;                 // large-scale fading, linear power gain

    friend bool operator==(const Device&, const Device&) = default;
};

/// Cell geometry and path-loss model. Defaults are the 250 m cell with a
/// 20 m guard ring and 130 + 37.6 log10(d[km]) dB path loss.
struct Geometry {
    double cell_radius_m = 250.0;
    double guard_radius_m = 20.0;
    double pathloss_fixed_db = 130.0;
    double pathloss_slope = 37.6;

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

/// Parameters of a random device drop.
struct DropConfig {
    int num_humans = 5;
    int num_machines = 15;
    int antennas = 100;
    Geometry geometry;
    double noise_psd_dbm_per_hz = -174.0;
    double bandwidth_hz = 20e6;
    double p_max_dbm = 30.0;

    /// sigma^2 in watts: PSD integrated over the bandwidth.
    double noise_power() const;
    double p_max() const;
};

void validate(const DropConfig& config);

/// Immutable cell population. Humans always occupy indices [0, K_h) and
/// machines [K_h, K).
class Scenario {
public:
    Scenario(std::vector<Device> devices, int antennas, double noise_power, double p_max,
             Geometry geometry = {}, std::uint64_t seed = 0);

    const std::vector<Device>& devices() const { return devices_; }
    const Device& device(int k) const { return devices_.at(static_cast<std::size_t>(k)); }
    const Eigen::VectorXd& beta() const { return beta_; }

    int num_humans() const { return num_humans_; }
    int num_machines() const { return num_devices() - num_humans_; }
    int num_devices() const { return static_cast<int>(devices_.size()); }
    bool is_human(int k) const { return k < num_humans_; }

    int antennas() const { return antennas_; }
    double noise_power() const { return noise_power_; }
    double p_max() const { return p_max_; }
    const Geometry& geometry() const { return geometry_; }
    std::uint64_t seed() const { return seed_; }

    /// Same population with a different antenna count.
    Scenario with_antennas(int antennas) const;

    friend bool operator==(const Scenario& a, const Scenario& b);

private:
    std::vector<Device> devices_;
    Eigen::VectorXd beta_;
    int num_humans_ = 0;
    int antennas_ = 1;
    double noise_power_ = 1.0;
    double p_max_ = 1.0;
    Geometry geometry_;
    std::uint64_t seed_ = 0;
};

/// Path loss in dB at `distance_km`. Throws std::domain_error for d <= 0.
double pathloss_db(double distance_km, double fixed_db = 130.0, double slope = 37.6);

double db_to_linear(double db);
double dbm_to_watts(double dbm);

/// Builds a scenario from directly injected large-scale coefficients.
Scenario make_scenario(std::span<const double> human_betas, std::span<const double> machine_betas,
                       int antennas, double noise_power, double p_max);

/// Drops K_h humans and K_m machines uniformly over the annulus
/// [guard, radius] (uniform in area). Deterministic for a fixed seed.
Scenario drop_devices(const DropConfig& config, std::uint64_t seed);

}  // namespace mamimo
