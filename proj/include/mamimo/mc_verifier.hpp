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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mamimo/pilot_model.hpp"
#include "mamimo/random.hpp"
#include "mamimo/rate_engine.hpp"
#include "mamimo/scenario.hpp"

namespace mamimo {

/// One draw of all channels: G = H diag(sqrt(beta)), H i.i.d. CN(0, 1).
struct ChannelRealization {
    Eigen::MatrixXcd H;  // M x K small-scale fading
    Eigen::MatrixXcd G;  // M x K
};

ChannelRealization draw_channels(const Scenario& scenario, Rng& rng);

/// Received training block and everything the BS derives from it.
///
/// Training windows are laid side by side in the columns of Y: humans use
/// columns [0, Np_h) and machines the block that follows (SC1, SC3) or the
/// complement of the human pilots inside the shared window (SC2). Pilots
/// are standard basis vectors, so phi_k is a column of `pilots`. Under SC1
/// the two windows belong to different CIs; they share G because the
/// classes never interact there.
struct McSample {
    ChannelRealization channel;
    Eigen::MatrixXcd pilots;      // T x K, column k = phi_k
    Eigen::MatrixXcd Y;           // M x T
    Eigen::MatrixXcd human_data;  // K_h x Np_m data sent during machine training (SC3)
    Eigen::MatrixXcd y;           // M x K de-spread observations Y phi_k
    Eigen::MatrixXcd g_hat;       // M x K channel estimates
    Eigen::MatrixXcd v_hat;       // M x K MRC combiners g_hat / (gamma sqrt(M))
    Eigen::VectorXd gamma;        // per-device estimate quality for this plan
};

McSample simulate_training(const Scenario& scenario, const PilotPlan& plan, const PowerAllocation& power,
                           const SchemeConfig& config, Rng& rng);

enum class McQuantity { GammaMoment, DesiredPower, NoncoherentInterf, CoherentInterf, Sinr, ErgodicRateLB };

std::string_view to_string(McQuantity quantity);

struct McEstimate {
    McQuantity quantity = McQuantity::Sinr;
    double value = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

struct McOptions {
    long samples = 10000;
    int batches = 50;   // stderr of derived quantities comes from batch means
    int threads = 1;    // 0 = hardware concurrency
    std::uint64_t seed = 1;
};

/// MC estimates of the use-and-then-forget bound for one device. Values are
/// in the units of SinrBreakdown: `gamma_bar` is 1 / E||v_hat||^2.
struct DeviceMcEstimates {
    int device = 0;
    McEstimate gamma_bar;
    McEstimate desired;
    McEstimate noncoherent;
    McEstimate coherent;
    McEstimate sinr;
    McEstimate rate;
};

/// Runs `samples` independent CIs (fresh channels, pilots and noise each)
/// and assembles every device's UatF SINR
///   p |E[v^H g_k]|^2 / (sum p' E|v^H g_k'|^2 - p |E[v^H g_k]|^2 + E|v^H z|^2).
std::vector<DeviceMcEstimates> estimate_uatf_components(const Scenario& scenario, const SchemeConfig& config,
                                                        const PowerAllocation& power, const McOptions& options);

/// E|[g_hat_k]_m|^2 per device for a fixed pilot plan, averaged over
/// antennas and `samples` channel draws.
std::vector<McEstimate> estimate_gamma_moments(const Scenario& scenario, const PilotPlan& plan,
                                               const PowerAllocation& power, const SchemeConfig& config,
                                               const McOptions& options);

/// Resolves a thread count of 0 to the hardware concurrency.
int resolve_threads(int threads);

}  // namespace mamimo
