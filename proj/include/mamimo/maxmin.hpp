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

#include <optional>
#include <span>
#include <vector>

#include "mamimo/pilot_model.hpp"
#include "mamimo/rate_engine.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo {

enum class PilotPowerMode {
    FullPilotPower,  // q_k = p_max
    TiedToData,      // q_k = p_k
};

struct OptimizationProblem {
    Scenario scenario;
    SchemeConfig scheme;  // Np_m and alpha are used where they are held fixed
    PilotPowerMode pilot_power_mode = PilotPowerMode::FullPilotPower;
    double machine_rate_floor = 0.0;  // bits/s/Hz
    double tolerance = 1e-4;          // bisection width on the rate target
    int max_iterations = 500;         // fixed-point cap per feasibility check
    std::vector<double> alpha_grid = default_alpha_grid();
    int threads = 1;

    static std::vector<double> default_alpha_grid();
};

void validate(const OptimizationProblem& problem);

struct RateRegionPoint {
    double R_h = 0.0;  // achieved min human rate
    double R_m = 0.0;  // achieved min machine rate
    double floor = 0.0;
    PowerAllocation powers;
    int np_m_opt = 0;
    double alpha_opt = 1.0;
    bool feasible = false;
};

/// Outcome of one power feasibility check for per-class SINR targets.
struct PowerSolution {
    bool feasible = false;
    bool iteration_cap_hit = false;
    int iterations = 0;
    PowerAllocation powers;
};

/// Smallest powers meeting SINR target `human_sinr` on every human and
/// `machine_sinr` on every machine, or infeasible when that needs more than
/// p_max. Coefficients that depend on p (SC3 human-data terms, q = p) are
/// frozen at the current iterate and the resulting linear system is solved
/// exactly; from p = 0 the iterates increase monotonically to the least
/// fixed point.
PowerSolution solve_min_powers(const Scenario& scenario, const SchemeConfig& config, PilotPowerMode mode,
                               double human_sinr, double machine_sinr, int max_iterations);

/// SINR needed to reach `rate` with data fraction `prelog`; nullopt when the
/// rate is positive but the prelog is zero.
std::optional<double> sinr_target(double rate, double prelog);

/// Largest common human rate with every machine at least at the floor, for
/// fixed Np_m and alpha (alpha ignored outside SC1).
RateRegionPoint maxmin_power_control(const OptimizationProblem& problem, int np_m, double alpha);

/// Exhaustive search over admissible Np_m (plus the alpha grid for SC1).
/// Ties go to the smallest Np_m.
RateRegionPoint optimize_pilot_length(const OptimizationProblem& problem);

/// Admissible machine pilot counts for the problem's scheme and N.
std::vector<int> admissible_pilot_lengths(const OptimizationProblem& problem);

/// One optimized point per machine-rate floor.
std::vector<RateRegionPoint> rate_region_sweep(const OptimizationProblem& problem,
                                               std::span<const double> floors);

/// Largest rate r guaranteed to every human and every machine, optimized
/// over powers, Np_m and (SC1) alpha. `floor` holds r.
RateRegionPoint equal_rate_point(const OptimizationProblem& problem);

/// Machines-only max-min rate (humans silent), optimized over Np_m. For SC1
/// this is the alpha = 0 endpoint.
RateRegionPoint max_machine_rate(const OptimizationProblem& problem);

enum class SweepPowers {
    Fixed,      // p = q = p_max with the problem's Np_m
    Optimized,  // equal-rate optimum at every M
};

struct AntennaSweepPoint {
    int antennas = 0;
    RateReport report;
    double min_human_rate = 0.0;
    double min_machine_rate = 0.0;
    double asymptotic_machine_rate = 0.0;  // +inf when unbounded
    double gap = 0.0;                      // asymptotic - finite machine min rate
    std::optional<RateRegionPoint> optimized;
};

std::vector<AntennaSweepPoint> antenna_sweep(const OptimizationProblem& problem,
                                             std::span<const int> antenna_grid, SweepPowers powers);

/// Min machine rate in the M -> infinity limit for the given powers.
double asymptotic_min_machine_rate(const Scenario& scenario, const PowerAllocation& power,
                                   const SchemeConfig& config);

}  // namespace mamimo
