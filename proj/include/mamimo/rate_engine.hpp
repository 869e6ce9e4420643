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

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mamimo/pilot_model.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo {

/// Per-device data powers p and pilot powers q, in watts.
struct PowerAllocation {
    Eigen::VectorXd p;
    Eigen::VectorXd q;

    static PowerAllocation uniform(const Scenario& scenario, double p, double q);
    /// Every device transmits pilots and data at p_max.
    static PowerAllocation full(const Scenario& scenario);
};

/// Throws ConfigError on size mismatch or powers outside [0, p_max].
void validate(const PowerAllocation& power, const Scenario& scenario);

/// A device sharing the training window with the device being estimated.
template <typename Scalar>
struct CoTrainer {
    Scalar q;
    Scalar beta;
    Scalar overlap;  // |phi'^H phi|^2
};

/// Mean-square of one component of the LMMSE estimate:
///   Np q b^2 / (Np (q b + sum q' b' |phi'^H phi|^2) + extra + sigma^2).
/// `extra` carries interference that is not spread by the pilot (human data
/// overlapping machine training).
template <typename Scalar>
Scalar gamma_orthogonal(Scalar beta, Scalar q, int np, std::span<const CoTrainer<Scalar>> others,
                        Scalar noise_power, Scalar extra = Scalar(0)) {
    if (np < 1) throw ConfigError("training length must be >= 1");
    if (beta < Scalar(0) || q < Scalar(0) || noise_power < Scalar(0) || extra < Scalar(0))
        throw std::domain_error("gamma_orthogonal: negative power or gain");
    Scalar contamination = q * beta;
    for (const auto& o : others) contamination += o.q * o.beta * o.overlap;
    const Scalar den = Scalar(np) * contamination + extra + noise_power;
    if (den <= Scalar(0)) throw std::domain_error("gamma_orthogonal: undefined for zero signal and noise");
    return Scalar(np) * q * beta * beta / den;
}

/// Collision-averaged estimate quality E{1/gamma}^{-1}, from the aggregate
/// pilot power of the other machines. `collision_weight` is Np / Np_m.
template <typename Scalar>
Scalar gamma_bar_kernel(int np, Scalar q, Scalar beta, Scalar collision_weight,
                        Scalar others_q_beta, Scalar extra, Scalar noise_power) {
    const Scalar own = Scalar(np) * q * beta;
    const Scalar den = own + collision_weight * others_q_beta + extra + noise_power;
    if (den <= Scalar(0)) throw std::domain_error("gamma_bar: undefined for zero signal and noise");
    return own * beta / den;
}

/// Whether the SC3 machine estimate accounts for the human data that
/// overlaps the machine training window.
enum class Sc3Estimate { WithHumanData, WithoutHumanData };

double gamma_bar_sc1(const Scenario& scenario, const Eigen::VectorXd& q, int k, int np_m);
double gamma_bar_sc2(const Scenario& scenario, const Eigen::VectorXd& q, int k, int np);
double gamma_bar_sc3(const Scenario& scenario, const PowerAllocation& power, int k, int np_m,
                     Sc3Estimate form = Sc3Estimate::WithHumanData);

/// SINR decomposition for one device: sinr = desired / (noncoherent + coherent).
struct SinrBreakdown {
    double gamma = 0.0;      // estimate quality without pilot collisions
    double gamma_bar = 0.0;  // quality used in the bound (== gamma for humans)
    double desired = 0.0;
    double noncoherent = 0.0;
    double coherent = 0.0;
    double sinr = 0.0;
};

/// Struct-of-arrays form of SinrBreakdown over all K devices.
struct SinrTerms {
    Eigen::VectorXd gamma;
    Eigen::VectorXd gamma_bar;
    Eigen::VectorXd desired;
    Eigen::VectorXd noncoherent;
    Eigen::VectorXd coherent;
    Eigen::VectorXd sinr;

    SinrBreakdown at(Eigen::Index k) const;
};

/// Closed-form effective SINRs for every device under `config`. A device
/// with q_k = p_k = 0 is silent and reports all-zero terms; q_k = 0 with
/// p_k > 0 throws std::invalid_argument.
SinrTerms sinr_terms(const Scenario& scenario, const PowerAllocation& power, const SchemeConfig& config,
                     Sc3Estimate form = Sc3Estimate::WithHumanData);

std::vector<SinrBreakdown> sinr_sc1(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config);
std::vector<SinrBreakdown> sinr_sc2(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config);
std::vector<SinrBreakdown> sinr_sc3(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config,
                                    Sc3Estimate form = Sc3Estimate::WithHumanData);

/// Fraction of the CI that carries data for a device of class `cls`
/// (includes the SC1 CI share).
double prelog(const SchemeConfig& config, DeviceClass cls);

struct DeviceRate {
    int id = 0;
    DeviceClass cls = DeviceClass::Human;
    double beta = 0.0;
    double p = 0.0;
    double q = 0.0;
    SinrBreakdown terms;
    double prelog = 0.0;
    double rate = 0.0;  // bits/s/Hz
};

struct RateReport {
    SchemeConfig config;
    int antennas = 0;
    std::vector<DeviceRate> devices;
    double min_human_rate = 0.0;
    std::optional<double> min_machine_rate;  // empty when K_m = 0
};

RateReport rates(const Scenario& scenario, const PowerAllocation& power, const SchemeConfig& config);

/// SINR in the M -> infinity limit. Humans (and machines without coherent
/// interferers) are unbounded; this is a flag, never an overflowed double.
struct LimitSinr {
    double value = 0.0;
    bool unbounded = false;

    static LimitSinr infinite() { return {std::numeric_limits<double>::infinity(), true}; }
    static LimitSinr finite(double v) { return {v, false}; }
};

std::vector<LimitSinr> asymptotic_sinr(const Scenario& scenario, const PowerAllocation& power,
                                       const SchemeConfig& config);

/// Sum of all other entries for each position, built from prefix and
/// suffix sums so no subtraction is involved.
Eigen::VectorXd sum_excluding_self(const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace mamimo
