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

#include "mamimo/pilot_model.hpp"

#include <random>

namespace mamimo {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::SC1: return "SC1";
        case Scheme::SC2: return "SC2";
        case Scheme::SC3: return "SC3";
    }
    return "?";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "SC1" || name == "sc1" || name == "1") return Scheme::SC1;
    if (name == "SC2" || name == "sc2" || name == "2") return Scheme::SC2;
    if (name == "SC3" || name == "sc3" || name == "3") return Scheme::SC3;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

SchemeConfig SchemeConfig::sc1(int n, int np_h, int np_m, double alpha_h) {
    return {Scheme::SC1, n, np_h, np_m, alpha_h};
}

SchemeConfig SchemeConfig::sc2(int n, int num_humans, int np_m) {
    return {Scheme::SC2, n, num_humans + np_m, np_m, 1.0};
}

SchemeConfig SchemeConfig::sc3(int n, int np_h, int np_m) { return {Scheme::SC3, n, np_h, np_m, 1.0}; }

int SchemeConfig::machine_offset(int num_humans) const {
    return scheme == Scheme::SC2 ? num_humans : np_h;
}

void validate(const SchemeConfig& c, int num_humans) {
    if (c.N < 1) throw ConfigError("N must be >= 1");
    if (c.np_m < 1) throw ConfigError("Np_m must be >= 1");
    if (c.np_h < num_humans)
        throw ConfigError("Np_h must be >= K_h for orthogonal human pilots");
    switch (c.scheme) {
        case Scheme::SC1:
            if (!(c.alpha_h >= 0.0 && c.alpha_h <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
            if (c.np_h >= c.N || c.np_m >= c.N) throw ConfigError("SC1 requires Np_h < N and Np_m < N");
            break;
        case Scheme::SC2:
            if (c.alpha_h != 1.0) throw ConfigError("alpha is only used by SC1");
            if (c.np_h != num_humans + c.np_m)
                throw ConfigError("SC2 requires Np = K_h + Np_m");
            if (c.np_h > c.N) throw ConfigError("SC2 requires Np <= N");
            break;
        case Scheme::SC3:
            if (c.alpha_h != 1.0) throw ConfigError("alpha is only used by SC1");
            if (c.np_h + c.np_m >= c.N) throw ConfigError("SC3 requires Np_h + Np_m < N");
            break;
    }
}

int PilotPlan::machine_pilot(int k) const {
    return k < num_humans ? -1 : assignment[static_cast<std::size_t>(k)] - num_humans;
}

PilotPlan draw_pilot_plan(const SchemeConfig& config, const Scenario& scenario, Rng& rng) {
    if (config.np_m < 1) throw ConfigError("Np_m must be >= 1");
    const int kh = scenario.num_humans();
    const int k = scenario.num_devices();

    PilotPlan plan;
    plan.num_humans = kh;
    plan.np_m = config.np_m;
    plan.assignment.resize(static_cast<std::size_t>(k));
    plan.collision_sets.assign(static_cast<std::size_t>(config.np_m), {});

    std::uniform_int_distribution<int> pick(0, config.np_m - 1);
    for (int i = 0; i < k; ++i) {
        if (i < kh) {
            plan.assignment[i] = i;
        } else {
            const int c = pick(rng);
            plan.assignment[i] = kh + c;
            plan.collision_sets[c].push_back(i);
        }
    }
    return plan;
}

PilotPlan draw_pilot_plan(const SchemeConfig& config, const Scenario& scenario, std::uint64_t seed) {
    Rng rng = make_stream(seed);
    return draw_pilot_plan(config, scenario, rng);
}

Eigen::MatrixXi gram_matrix(const PilotPlan& plan) {
    const auto k = static_cast<Eigen::Index>(plan.assignment.size());
    Eigen::MatrixXi g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            g(i, j) = plan.assignment[i] == plan.assignment[j] ? 1 : 0;
    return g;
}

}  // namespace mamimo
