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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mamimo/random.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo {

/// Coherence-interval allocation schemes.
///  - SC1: humans and machines use disjoint CIs (fraction alpha_h to humans).
///  - SC2: one shared training window of length Np = K_h + Np_m, then data.
///  - SC3: human training, then machine training overlapped with human
///    data, then data for everyone.
enum class Scheme { SC1, SC2, SC3 };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

struct SchemeConfig {
    Scheme scheme = Scheme::SC2;
    int N = 200;        // CI length in samples
    int np_h = 5;       // human training length (SC2: the shared window Np)
    int np_m = 15;      // number of machine pilots
    double alpha_h = 1.0;  // SC1 human CI share, fixed to 1 otherwise

    static SchemeConfig sc1(int n, int np_h, int np_m, double alpha_h);
    /// SC2 window is K_h + np_m long; machines draw from its orthogonal complement.
    static SchemeConfig sc2(int n, int num_humans, int np_m);
    static SchemeConfig sc3(int n, int np_h, int np_m);

    /// Length of the window in which machines train.
    int machine_window() const { return scheme == Scheme::SC2 ? np_h : np_m; }
    /// Offset of the machine pilot block inside the pilot index space.
    int machine_offset(int num_humans) const;

    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Throws ConfigError when `config` is not admissible for `num_humans` humans.
void validate(const SchemeConfig& config, int num_humans);

/// One CI's pilot draw. Pilots are identified by index only: humans own
/// indices [0, K_h), machines draw uniformly from a disjoint block of Np_m
/// indices starting at K_h.
struct PilotPlan {
    std::vector<int> assignment;                // global pilot index per device
    std::vector<std::vector<int>> collision_sets;  // machine ids per machine pilot

    int num_humans = 0;
    int np_m = 0;

    /// Machine pilot in [0, Np_m); -1 for humans.
    int machine_pilot(int k) const;
    bool collide(int a, int b) const { return assignment[a] == assignment[b]; }
};

PilotPlan draw_pilot_plan(const SchemeConfig& config, const Scenario& scenario, Rng& rng);
PilotPlan draw_pilot_plan(const SchemeConfig& config, const Scenario& scenario, std::uint64_t seed);

/// K x K matrix of |phi_i^H phi_j| in {0, 1}.
Eigen::MatrixXi gram_matrix(const PilotPlan& plan);

}  // namespace mamimo
