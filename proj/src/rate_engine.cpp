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

#include "mamimo/rate_engine.hpp"

#include <algorithm>
#include <cmath>

namespace mamimo {

namespace {

void require_machine(const Scenario& scenario, int k) {
    if (k < 0 || k >= scenario.num_devices() || scenario.is_human(k))
        throw std::invalid_argument("device " + std::to_string(k) + " is not a machine");
}

double machine_others_q_beta(const Scenario& scenario, const Eigen::VectorXd& q, int k) {
    const int kh = scenario.num_humans();
    const auto& b = scenario.beta();
    double s = 0.0;
    for (int i = kh; i < scenario.num_devices(); ++i)
        if (i != k) s += q(i) * b(i);
    return s;
}

LimitSinr machine_limit(double p, double q, double beta, int np_m, double coherent_sum) {
    if (p == 0.0) return LimitSinr::finite(0.0);
    if (q == 0.0) throw std::invalid_argument("positive data power with zero pilot power");
    if (coherent_sum == 0.0) return LimitSinr::infinite();
    return LimitSinr::finite(p / (coherent_sum / (np_m * q * beta * beta)));
}

}  // namespace

PowerAllocation PowerAllocation::uniform(const Scenario& scenario, double p, double q) {
    const auto k = static_cast<Eigen::Index>(scenario.num_devices());
    return {Eigen::VectorXd::Constant(k, p), Eigen::VectorXd::Constant(k, q)};
}

PowerAllocation PowerAllocation::full(const Scenario& scenario) {
    return uniform(scenario, scenario.p_max(), scenario.p_max());
}

void validate(const PowerAllocation& power, const Scenario& scenario) {
    const auto k = static_cast<Eigen::Index>(scenario.num_devices());
    if (power.p.size() != k || power.q.size() != k)
        throw ConfigError("power vectors must have one entry per device");
    const double cap = scenario.p_max() * (1.0 + 1e-9);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(power.p(i) >= 0.0 && power.p(i) <= cap) || !(power.q(i) >= 0.0 && power.q(i) <= cap))
            throw ConfigError("device " + std::to_string(i) + ": powers must lie in [0, p_max]");
    }
}

Eigen::VectorXd sum_excluding_self(const Eigen::Ref<const Eigen::VectorXd>& v) {
    const Eigen::Index n = v.size();
    Eigen::VectorXd out(n);
    double prefix = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i) = prefix;
        prefix += v(i);
    }
    double suffix = 0.0;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        out(i) += suffix;
        suffix += v(i);
    }
    return out;
}

double gamma_bar_sc1(const Scenario& scenario, const Eigen::VectorXd& q, int k, int np_m) {
    require_machine(scenario, k);
    if (np_m < 1) throw ConfigError("Np_m must be >= 1");
    return gamma_bar_kernel(np_m, q(k), scenario.beta()(k), 1.0, machine_others_q_beta(scenario, q, k),
                            0.0, scenario.noise_power());
}

double gamma_bar_sc2(const Scenario& scenario, const Eigen::VectorXd& q, int k, int np) {
    require_machine(scenario, k);
    const int kh = scenario.num_humans();
    if (np <= kh) throw ConfigError("SC2 requires Np > K_h");
    const double weight = static_cast<double>(np) / static_cast<double>(np - kh);
    return gamma_bar_kernel(np, q(k), scenario.beta()(k), weight, machine_others_q_beta(scenario, q, k),
                            0.0, scenario.noise_power());
}

double gamma_bar_sc3(const Scenario& scenario, const PowerAllocation& power, int k, int np_m,
                     Sc3Estimate form) {
    require_machine(scenario, k);
    if (np_m < 1) throw ConfigError("Np_m must be >= 1");
    const int kh = scenario.num_humans();
    const double human_data =
        form == Sc3Estimate::WithHumanData
            ? power.p.head(kh).dot(scenario.beta().head(kh))
            : 0.0;
    return gamma_bar_kernel(np_m, power.q(k), scenario.beta()(k), 1.0,
                            machine_others_q_beta(scenario, power.q, k), human_data,
                            scenario.noise_power());
}

SinrBreakdown SinrTerms::at(Eigen::Index k) const {
    return {gamma(k), gamma_bar(k), desired(k), noncoherent(k), coherent(k), sinr(k)};
}

SinrTerms sinr_terms(const Scenario& scenario, const PowerAllocation& power, const SchemeConfig& config,
                     Sc3Estimate form) {
    const Eigen::Index kh = scenario.num_humans();
    const Eigen::Index km = scenario.num_machines();
    const Eigen::Index kk = kh + km;
    const double m = scenario.antennas();
    const double s2 = scenario.noise_power();
    const Eigen::VectorXd& b = scenario.beta();
    const Eigen::VectorXd& p = power.p;
    const Eigen::VectorXd& q = power.q;
    if (p.size() != kk || q.size() != kk) throw ConfigError("power vectors must have one entry per device");

    SinrTerms t;
    t.gamma = Eigen::VectorXd::Zero(kk);
    t.gamma_bar = Eigen::VectorXd::Zero(kk);
    t.desired = Eigen::VectorXd::Zero(kk);
    t.noncoherent = Eigen::VectorXd::Zero(kk);
    t.coherent = Eigen::VectorXd::Zero(kk);
    t.sinr = Eigen::VectorXd::Zero(kk);

    const Eigen::VectorXd pb = p.cwiseProduct(b);
    const double human_rx = pb.head(kh).sum();
    const double machine_rx = pb.tail(km).sum();
    const bool shared_ci = config.scheme != Scheme::SC1;
    const bool sc3 = config.scheme == Scheme::SC3;

    // Humans: orthogonal pilots, no coherent interference.
    const double human_interf = shared_ci ? human_rx + machine_rx : human_rx;
    for (Eigen::Index k = 0; k < kh; ++k) {
        if (q(k) == 0.0) {
            if (p(k) > 0.0) throw std::invalid_argument("positive data power with zero pilot power");
            continue;
        }
        t.gamma(k) = gamma_bar_kernel(config.np_h, q(k), b(k), 0.0, 0.0, 0.0, s2);
        t.gamma_bar(k) = t.gamma(k);
        t.desired(k) = m * p(k);
        t.noncoherent(k) = (human_interf + s2) / t.gamma_bar(k);
        t.sinr(k) = t.desired(k) / t.noncoherent(k);
    }
    if (km == 0) return t;

    // Machines: random pilots from Np_m sequences.
    const int np_w = config.machine_window();
    const double weight = config.scheme == Scheme::SC2
                              ? static_cast<double>(np_w) / static_cast<double>(config.np_m)
                              : 1.0;
    const double pilot_extra = sc3 && form == Sc3Estimate::WithHumanData ? human_rx : 0.0;
    const double machine_interf = shared_ci ? human_rx + machine_rx : machine_rx;
    const Eigen::VectorXd others_qb = sum_excluding_self(q.tail(km).cwiseProduct(b.tail(km)));
    const Eigen::VectorXd pqb2 = p.tail(km).cwiseProduct(q.tail(km)).cwiseProduct(b.tail(km).cwiseAbs2());
    const Eigen::VectorXd others_pqb2 = sum_excluding_self(pqb2);
    const double human_p2b2 = sc3 ? pb.head(kh).squaredNorm() : 0.0;

    for (Eigen::Index j = 0; j < km; ++j) {
        const Eigen::Index k = kh + j;
        if (q(k) == 0.0) {
            if (p(k) > 0.0) throw std::invalid_argument("positive data power with zero pilot power");
            continue;
        }
        t.gamma(k) = gamma_bar_kernel(np_w, q(k), b(k), 0.0, 0.0, pilot_extra, s2);
        t.gamma_bar(k) = gamma_bar_kernel(np_w, q(k), b(k), weight, others_qb(j), pilot_extra, s2);
        t.desired(k) = m * p(k);
        t.noncoherent(k) = (machine_interf + s2) / t.gamma_bar(k);
        t.coherent(k) = (m / config.np_m) * (others_pqb2(j) + human_p2b2) / (q(k) * b(k) * b(k));
        t.sinr(k) = t.desired(k) / (t.noncoherent(k) + t.coherent(k));
    }
    return t;
}

namespace {

std::vector<SinrBreakdown> unpack(const SinrTerms& t) {
    std::vector<SinrBreakdown> out;
    out.reserve(static_cast<std::size_t>(t.sinr.size()));
    for (Eigen::Index k = 0; k < t.sinr.size(); ++k) out.push_back(t.at(k));
    return out;
}

void require_scheme(const SchemeConfig& config, Scheme expected) {
    if (config.scheme != expected)
        throw std::invalid_argument("scheme mismatch: expected " + std::string(to_string(expected)));
}

}  // namespace

std::vector<SinrBreakdown> sinr_sc1(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config) {
    require_scheme(config, Scheme::SC1);
    return unpack(sinr_terms(scenario, power, config));
}

std::vector<SinrBreakdown> sinr_sc2(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config) {
    require_scheme(config, Scheme::SC2);
    return unpack(sinr_terms(scenario, power, config));
}

std::vector<SinrBreakdown> sinr_sc3(const Scenario& scenario, const PowerAllocation& power,
                                    const SchemeConfig& config, Sc3Estimate form) {
    require_scheme(config, Scheme::SC3);
    return unpack(sinr_terms(scenario, power, config, form));
}

double prelog(const SchemeConfig& c, DeviceClass cls) {
    const bool human = cls == DeviceClass::Human;
    double data = 0.0;
    double share = 1.0;
    switch (c.scheme) {
        case Scheme::SC1:
            data = human ? c.N - c.np_h : c.N - c.np_m;
            share = human ? c.alpha_h : 1.0 - c.alpha_h;
            break;
        case Scheme::SC2:
            data = c.N - c.np_h;
            break;
        case Scheme::SC3:
            data = human ? c.N - c.np_h : c.N - c.np_h - c.np_m;
            break;
    }
    if (data < 0.0) throw ConfigError("training longer than the coherence interval");
    return share * data / c.N;
}

RateReport rates(const Scenario& scenario, const PowerAllocation& power, const SchemeConfig& config) {
    validate(config, scenario.num_humans());
    const SinrTerms t = sinr_terms(scenario, power, config);
    const double pre_h = prelog(config, DeviceClass::Human);
    const double pre_m = prelog(config, DeviceClass::Machine);

    RateReport report;
    report.config = config;
    report.antennas = scenario.antennas();
    report.min_human_rate = std::numeric_limits<double>::infinity();
    for (int k = 0; k < scenario.num_devices(); ++k) {
        DeviceRate r;
        r.id = k;
        r.cls = scenario.device(k).cls;
        r.beta = scenario.beta()(k);
        r.p = power.p(k);
        r.q = power.q(k);
        r.terms = t.at(k);
        r.prelog = scenario.is_human(k) ? pre_h : pre_m;
        r.rate = r.prelog * std::log2(1.0 + r.terms.sinr);
        if (scenario.is_human(k)) {
            report.min_human_rate = std::min(report.min_human_rate, r.rate);
        } else {
            report.min_machine_rate = std::min(report.min_machine_rate.value_or(r.rate), r.rate);
        }
        report.devices.push_back(r);
    }
    return report;
}

std::vector<LimitSinr> asymptotic_sinr(const Scenario& scenario, const PowerAllocation& power,
                                       const SchemeConfig& config) {
    const Eigen::Index kh = scenario.num_humans();
    const Eigen::Index km = scenario.num_machines();
    const Eigen::VectorXd& b = scenario.beta();
    const Eigen::VectorXd& p = power.p;
    const Eigen::VectorXd& q = power.q;

    std::vector<LimitSinr> out(static_cast<std::size_t>(kh + km), LimitSinr::infinite());
    if (km == 0) return out;

    const Eigen::VectorXd pqb2 = p.tail(km).cwiseProduct(q.tail(km)).cwiseProduct(b.tail(km).cwiseAbs2());
    const Eigen::VectorXd others = sum_excluding_self(pqb2);
    const double human_p2b2 =
        config.scheme == Scheme::SC3 ? p.head(kh).cwiseProduct(b.head(kh)).squaredNorm() : 0.0;
    for (Eigen::Index j = 0; j < km; ++j) {
        const Eigen::Index k = kh + j;
        out[static_cast<std::size_t>(k)] =
            machine_limit(p(k), q(k), b(k), config.np_m, others(j) + human_p2b2);
    }
    return out;
}

}  // namespace mamimo
