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

#include "mamimo/mc_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "parallel.hpp"

namespace mamimo {

namespace {

int training_symbols(const SchemeConfig& config) {
    return config.scheme == Scheme::SC2 ? config.np_h : config.np_h + config.np_m;
}

/// Column of Y holding device k's pilot, and the length of its window.
std::pair<int, int> pilot_slot(const PilotPlan& plan, const SchemeConfig& config, int k) {
    if (k < plan.num_humans) return {k, config.np_h};
    const int c = plan.machine_pilot(k);
    return {config.machine_offset(plan.num_humans) + c, config.machine_window()};
}

void train(const Scenario& scenario, const PilotPlan& plan, const PowerAllocation& power,
           const SchemeConfig& config, Rng& rng, McSample& s, bool keep_pilots) {
    const Eigen::Index m = scenario.antennas();
    const int kk = scenario.num_devices();
    const int kh = scenario.num_humans();
    const int t = training_symbols(config);
    const Eigen::VectorXd& b = scenario.beta();
    const double s2 = scenario.noise_power();
    const bool sc3 = config.scheme == Scheme::SC3;

    ComplexNormal unit;
    ComplexNormal noise(s2);

    s.channel.H.resize(m, kk);
    unit.fill(s.channel.H, rng);
    s.channel.G = s.channel.H * b.cwiseSqrt().asDiagonal();
    const Eigen::MatrixXcd& g = s.channel.G;

    s.Y.resize(m, t);
    noise.fill(s.Y, rng);

    std::vector<int> column(static_cast<std::size_t>(kk));
    std::vector<int> window(static_cast<std::size_t>(kk));
    for (int k = 0; k < kk; ++k) {
        const auto [col, len] = pilot_slot(plan, config, k);
        column[k] = col;
        window[k] = len;
        s.Y.col(col) += std::sqrt(len * power.q(k)) * g.col(k);
    }
    if (keep_pilots) {
        s.pilots = Eigen::MatrixXcd::Zero(t, kk);
        for (int k = 0; k < kk; ++k) s.pilots(column[k], k) = 1.0;
    }

    double human_rx = 0.0;
    if (sc3 && kk > kh) {
        // Humans keep sending data while machines train.
        s.human_data.resize(kh, config.np_m);
        unit.fill(s.human_data, rng);
        s.human_data = power.p.head(kh).cwiseSqrt().asDiagonal() * s.human_data;
        s.Y.middleCols(config.np_h, config.np_m).noalias() += g.leftCols(kh) * s.human_data.conjugate();
        human_rx = power.p.head(kh).dot(b.head(kh));
    } else {
        s.human_data.resize(0, 0);
    }

    s.y.resize(m, kk);
    s.g_hat.resize(m, kk);
    s.v_hat.resize(m, kk);
    s.gamma.resize(kk);
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    for (int k = 0; k < kk; ++k) {
        s.y.col(k) = s.Y.col(column[k]);
        if (power.q(k) == 0.0) {
            s.g_hat.col(k).setZero();
            s.v_hat.col(k).setZero();
            s.gamma(k) = 0.0;
            continue;
        }
        double contamination = 0.0;
        for (int i = 0; i < kk; ++i)
            if (column[i] == column[k]) contamination += power.q(i) * b(i);
        const double extra = sc3 && k >= kh ? human_rx : 0.0;
        const double den = window[k] * contamination + extra + s2;
        const double coeff = std::sqrt(window[k] * power.q(k)) * b(k) / den;
        s.g_hat.col(k) = coeff * s.y.col(k);
        s.gamma(k) = window[k] * power.q(k) * b(k) * b(k) / den;
        s.v_hat.col(k) = s.g_hat.col(k) / (s.gamma(k) * sqrt_m);
    }
}

void check_inputs(const Scenario& scenario, const SchemeConfig& config, const PowerAllocation& power) {
    validate(config, scenario.num_humans());
    validate(power, scenario);
}

long batch_size(long samples, int batches, int i) {
    return samples / batches + (i < samples % batches ? 1 : 0);
}

/// Running sums of the UatF moments for every device.
struct UatfSums {
    Eigen::VectorXcd signal;    // v_k^H g_k
    Eigen::VectorXd received;   // sum_k' p_k' |v_k^H g_k'|^2 over active k'
    Eigen::VectorXd noise;      // |v_k^H z|^2
    Eigen::VectorXd combiner;   // ||v_k||^2
    Eigen::VectorXd coherent;   // excess of |v_k^H g_k'|^2 over beta_k' ||v_k||^2
    long n = 0;

    explicit UatfSums(Eigen::Index k)
        : signal(Eigen::VectorXcd::Zero(k)),
          received(Eigen::VectorXd::Zero(k)),
          noise(Eigen::VectorXd::Zero(k)),
          combiner(Eigen::VectorXd::Zero(k)),
          coherent(Eigen::VectorXd::Zero(k)) {}

    void merge(const UatfSums& o) {
        signal += o.signal;
        received += o.received;
        noise += o.noise;
        combiner += o.combiner;
        coherent += o.coherent;
        n += o.n;
    }
};

struct UatfValues {
    Eigen::VectorXd gamma_bar, desired, noncoherent, coherent, sinr;
};

UatfValues derive(const UatfSums& s, const Eigen::VectorXd& p) {
    const double n = static_cast<double>(s.n);
    UatfValues v;
    v.desired = p.cwiseProduct((s.signal / n).cwiseAbs2());
    const Eigen::VectorXd total = s.received / n - v.desired + s.noise / n;
    v.coherent = s.coherent / n;
    v.noncoherent = total - v.coherent;
    v.gamma_bar = (s.combiner / n).cwiseInverse();
    v.sinr.resize(p.size());
    for (Eigen::Index k = 0; k < p.size(); ++k)
        v.sinr(k) = v.desired(k) == 0.0 ? 0.0 : v.desired(k) / total(k);
    return v;
}

double batch_stderr(const std::vector<double>& values) {
    const auto b = static_cast<double>(values.size());
    if (values.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : values) mean += x;
    mean /= b;
    double ss = 0.0;
    for (double x : values) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (b - 1.0) / b);
}

}  // namespace

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string_view to_string(McQuantity quantity) {
    switch (quantity) {
        case McQuantity::GammaMoment: return "gamma_bar";
        case McQuantity::DesiredPower: return "desired";
        case McQuantity::NoncoherentInterf: return "noncoherent";
        case McQuantity::CoherentInterf: return "coherent";
        case McQuantity::Sinr: return "sinr";
        case McQuantity::ErgodicRateLB: return "rate";
    }
    return "?";
}

ChannelRealization draw_channels(const Scenario& scenario, Rng& rng) {
    ChannelRealization c;
    c.H.resize(scenario.antennas(), scenario.num_devices());
    ComplexNormal unit;
    unit.fill(c.H, rng);
    c.G = c.H * scenario.beta().cwiseSqrt().asDiagonal();
    return c;
}

McSample simulate_training(const Scenario& scenario, const PilotPlan& plan, const PowerAllocation& power,
                           const SchemeConfig& config, Rng& rng) {
    check_inputs(scenario, config, power);
    if (static_cast<int>(plan.assignment.size()) != scenario.num_devices() || plan.np_m != config.np_m)
        throw ConfigError("pilot plan does not match scenario and scheme");
    McSample s;
    train(scenario, plan, power, config, rng, s, true);
    return s;
}

std::vector<DeviceMcEstimates> estimate_uatf_components(const Scenario& scenario, const SchemeConfig& config,
                                                        const PowerAllocation& power,
                                                        const McOptions& options) {
    check_inputs(scenario, config, power);
    if (options.samples < 2) throw ConfigError("need at least 2 Monte Carlo samples");
    const int batches = static_cast<int>(std::clamp<long>(options.batches, 1, options.samples));
    const int kk = scenario.num_devices();
    const int kh = scenario.num_humans();
    const Eigen::Index m = scenario.antennas();
    const Eigen::VectorXd& b = scenario.beta();
    const Eigen::VectorXd& p = power.p;
    const bool shared_ci = config.scheme != Scheme::SC1;

    std::vector<UatfSums> sums(static_cast<std::size_t>(batches), UatfSums(kk));
    detail::parallel_for(batches, options.threads, [&](int bi) {
        Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(bi));
        ComplexNormal noise(scenario.noise_power());
        McSample s;
        Eigen::VectorXcd z(m);
        Eigen::MatrixXcd a(kk, kk);
        Eigen::VectorXcd vz(kk);
        UatfSums& acc = sums[static_cast<std::size_t>(bi)];
        const long n = batch_size(options.samples, batches, bi);
        for (long i = 0; i < n; ++i) {
            const PilotPlan plan = draw_pilot_plan(config, scenario, rng);
            train(scenario, plan, power, config, rng, s, false);
            noise.fill(z, rng);
            a.noalias() = s.v_hat.adjoint() * s.channel.G;
            vz.noalias() = s.v_hat.adjoint() * z;
            for (int k = 0; k < kk; ++k) {
                const int lo = shared_ci || k < kh ? 0 : kh;
                const int hi = shared_ci || k >= kh ? kk : kh;
                const double vn2 = s.v_hat.col(k).squaredNorm();
                double rx = 0.0;
                double coh = 0.0;
                for (int j = lo; j < hi; ++j) {
                    const double a2 = std::norm(a(k, j));
                    rx += p(j) * a2;
                    if (j != k) coh += p(j) * (a2 - b(j) * vn2);
                }
                acc.signal(k) += a(k, k);
                acc.received(k) += rx;
                acc.noise(k) += std::norm(vz(k));
                acc.combiner(k) += vn2;
                acc.coherent(k) += coh;
            }
            ++acc.n;
        }
    });

    UatfSums total(kk);
    std::vector<UatfValues> per_batch;
    per_batch.reserve(sums.size());
    for (const auto& s : sums) {
        total.merge(s);
        per_batch.push_back(derive(s, p));
    }
    const UatfValues v = derive(total, p);

    std::vector<DeviceMcEstimates> out;
    out.reserve(static_cast<std::size_t>(kk));
    for (int k = 0; k < kk; ++k) {
        const double pre = prelog(config, scenario.device(k).cls);
        auto make = [&](McQuantity qty, auto&& field) {
            std::vector<double> xs;
            xs.reserve(per_batch.size());
            for (const auto& pb : per_batch) xs.push_back(field(pb));
            return McEstimate{qty, field(v), batch_stderr(xs), total.n};
        };
        DeviceMcEstimates e;
        e.device = k;
        e.gamma_bar = make(McQuantity::GammaMoment, [k](const UatfValues& u) { return u.gamma_bar(k); });
        e.desired = make(McQuantity::DesiredPower, [k](const UatfValues& u) { return u.desired(k); });
        e.noncoherent = make(McQuantity::NoncoherentInterf, [k](const UatfValues& u) { return u.noncoherent(k); });
        e.coherent = make(McQuantity::CoherentInterf, [k](const UatfValues& u) { return u.coherent(k); });
        e.sinr = make(McQuantity::Sinr, [k](const UatfValues& u) { return u.sinr(k); });
        e.rate = make(McQuantity::ErgodicRateLB,
                      [k, pre](const UatfValues& u) { return pre * std::log2(1.0 + u.sinr(k)); });
        out.push_back(e);
    }
    return out;
}

std::vector<McEstimate> estimate_gamma_moments(const Scenario& scenario, const PilotPlan& plan,
                                               const PowerAllocation& power, const SchemeConfig& config,
                                               const McOptions& options) {
    check_inputs(scenario, config, power);
    if (options.samples < 2) throw ConfigError("need at least 2 Monte Carlo samples");
    const int batches = static_cast<int>(std::clamp<long>(options.batches, 1, options.samples));
    const int kk = scenario.num_devices();
    const double m = scenario.antennas();

    std::vector<Eigen::VectorXd> sum(static_cast<std::size_t>(batches), Eigen::VectorXd::Zero(kk));
    std::vector<Eigen::VectorXd> sum_sq(static_cast<std::size_t>(batches), Eigen::VectorXd::Zero(kk));
    detail::parallel_for(batches, options.threads, [&](int bi) {
        Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(bi));
        McSample s;
        const long n = batch_size(options.samples, batches, bi);
        for (long i = 0; i < n; ++i) {
            train(scenario, plan, power, config, rng, s, false);
            const Eigen::VectorXd x = s.g_hat.colwise().squaredNorm().transpose() / m;
            sum[bi] += x;
            sum_sq[bi] += x.cwiseAbs2();
        }
    });

    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(kk);
    Eigen::VectorXd s2 = Eigen::VectorXd::Zero(kk);
    for (int i = 0; i < batches; ++i) {
        s1 += sum[i];
        s2 += sum_sq[i];
    }
    const double n = static_cast<double>(options.samples);
    std::vector<McEstimate> out;
    for (int k = 0; k < kk; ++k) {
        const double mean = s1(k) / n;
        const double var = std::max(0.0, (s2(k) - n * mean * mean) / (n - 1.0));
        out.push_back({McQuantity::GammaMoment, mean, std::sqrt(var / n), options.samples});
    }
    return out;
}

}  // namespace mamimo
