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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "mamimo/mc_verifier.hpp"

using namespace mamimo;

namespace {

Scenario small_scenario(int antennas) {
    const std::vector<double> h{1.0, 0.35}, m{0.8, 0.5, 0.3, 0.9, 0.6};
    return make_scenario(h, m, antennas, 0.2, 1.0);
}

PowerAllocation mixed_power(const Scenario& s) {
    PowerAllocation a = PowerAllocation::full(s);
    for (int k = 0; k < s.num_devices(); ++k) {
        a.p(k) = 0.4 + std::fmod(0.1 * k, 0.6);
        a.q(k) = 1.0 - 0.07 * k;
    }
    return a;
}

std::vector<SchemeConfig> schemes() {
    return {SchemeConfig::sc1(50, 2, 3, 0.5), SchemeConfig::sc2(50, 2, 3), SchemeConfig::sc3(50, 2, 3)};
}

// Training noise Z = Y minus every pilot contribution.
Eigen::MatrixXcd training_noise(const McSample& s, const PowerAllocation& a, const SchemeConfig& cfg) {
    Eigen::MatrixXcd z = s.Y;
    for (Eigen::Index k = 0; k < s.pilots.cols(); ++k) {
        Eigen::Index col = 0;
        s.pilots.col(k).real().maxCoeff(&col);
        const int len = k < 2 || cfg.scheme == Scheme::SC2 ? cfg.np_h : cfg.np_m;
        z -= std::sqrt(len * a.q(k)) * s.channel.G.col(k) * s.pilots.col(k).transpose();
    }
    return z;
}

}  // namespace

TEST_CASE("channel columns carry the large-scale gain") {
    const Scenario s = small_scenario(6);
    Rng rng = make_stream(3);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(s.num_devices());
    const int n = 20000;
    for (int i = 0; i < n; ++i) acc += draw_channels(s, rng).G.colwise().squaredNorm().transpose();
    acc /= n * 6.0;
    for (int k = 0; k < s.num_devices(); ++k) {
        // ||h||^2 / M has variance 1 / M per draw
        const double se = s.beta()(k) / std::sqrt(6.0 * n);
        CHECK(std::abs(acc(k) - s.beta()(k)) < 4.0 * se);
    }
}

TEST_CASE("pilot matrix is a set of basis columns") {
    const Scenario s = small_scenario(4);
    const PowerAllocation a = mixed_power(s);
    for (const auto& cfg : schemes()) {
        Rng rng = make_stream(5);
        const PilotPlan plan = draw_pilot_plan(cfg, s, rng);
        const McSample smp = simulate_training(s, plan, a, cfg, rng);
        const Eigen::MatrixXcd gram = smp.pilots.adjoint() * smp.pilots;
        for (int i = 0; i < s.num_devices(); ++i)
            for (int j = 0; j < s.num_devices(); ++j)
                CHECK(std::abs(gram(i, j)) == (plan.collide(i, j) ? 1.0 : 0.0));
        CHECK(smp.Y.cols() == 5);
    }
}

TEST_CASE("noiseless single-device estimate recovers the channel") {
    const std::vector<double> h{0.7}, none;
    const Scenario s = make_scenario(h, none, 16, 1e-14, 1.0);
    const PowerAllocation a = PowerAllocation::full(s);
    const auto cfg = SchemeConfig::sc1(20, 1, 1, 1.0);
    Rng rng = make_stream(9);
    const McSample smp = simulate_training(s, draw_pilot_plan(cfg, s, rng), a, cfg, rng);
    CHECK((smp.g_hat.col(0) - smp.channel.G.col(0)).norm() < 1e-6 * smp.channel.G.col(0).norm());
    CHECK(smp.gamma(0) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("de-spread training noise is white") {
    const Scenario s = small_scenario(3);
    const PowerAllocation a = mixed_power(s);
    const auto cfg = SchemeConfig::sc2(50, 2, 3);
    Rng rng = make_stream(17);
    ComplexNormal unit;
    Eigen::MatrixXcd basis(5, 5);
    unit.fill(basis, rng);
    const Eigen::VectorXcd phi = Eigen::HouseholderQR<Eigen::MatrixXcd>(basis).householderQ() *
                                 Eigen::VectorXcd::Unit(5, 0);
    const int n = 20000;
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < n; ++i) {
        const McSample smp = simulate_training(s, draw_pilot_plan(cfg, s, rng), a, cfg, rng);
        const Eigen::VectorXcd zp = training_noise(smp, a, cfg) * phi;
        cov += zp * zp.adjoint();
    }
    cov /= n;
    const double s2 = s.noise_power();
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(cov(i, i).real() - s2) < 4.0 * s2 / std::sqrt(n));
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(cov(i, j)) < 4.0 * s2 / std::sqrt(n));
    }
}

TEST_CASE("estimate moments match the per-plan closed form") {
    const Scenario s = small_scenario(4);
    const PowerAllocation a = mixed_power(s);
    for (const auto& cfg : schemes()) {
        const PilotPlan plan = draw_pilot_plan(cfg, s, 21);
        McOptions opt;
        opt.samples = 40000;
        opt.seed = 4;
        const auto est = estimate_gamma_moments(s, plan, a, cfg, opt);
        const double human_rx = cfg.scheme == Scheme::SC3 ? a.p.head(2).dot(s.beta().head(2)) : 0.0;
        for (int k = 0; k < s.num_devices(); ++k) {
            std::vector<CoTrainer<double>> co;
            for (int j = 0; j < s.num_devices(); ++j)
                if (j != k) co.push_back({a.q(j), s.beta()(j), plan.collide(j, k) ? 1.0 : 0.0});
            const int window = k < 2 || cfg.scheme == Scheme::SC2 ? cfg.np_h : cfg.np_m;
            const double extra = k >= 2 ? human_rx : 0.0;
            const double g = gamma_orthogonal<double>(s.beta()(k), a.q(k), window, co, s.noise_power(), extra);
            CHECK(std::abs(est[k].value - g) < std::max(0.01 * g, 3.0 * est[k].std_error));
        }
    }
}

TEST_CASE("estimation error is uncorrelated with the estimate for SC1 and SC2") {
    const Scenario s = small_scenario(4);
    const PowerAllocation a = mixed_power(s);
    for (const auto& cfg : {SchemeConfig::sc1(50, 2, 2, 0.5), SchemeConfig::sc2(50, 2, 2)}) {
        Rng rng = make_stream(31);
        const int n = 20000;
        const int kk = s.num_devices();
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(kk);
        Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(kk);
        for (int i = 0; i < n; ++i) {
            const McSample smp = simulate_training(s, draw_pilot_plan(cfg, s, rng), a, cfg, rng);
            for (int k = 0; k < kk; ++k) {
                const std::complex<double> c = smp.g_hat.col(k).dot(smp.channel.G.col(k) - smp.g_hat.col(k));
                sum(k) += c;
                sum_sq(k) += std::norm(c);
            }
        }
        for (int k = 0; k < kk; ++k) {
            const double se = std::sqrt(sum_sq(k) / n / n);
            CHECK(std::abs(sum(k) / double(n)) < 4.0 * se);
        }
    }
}

TEST_CASE("SC3 with silent humans trains machines exactly like SC1") {
    const Scenario s = small_scenario(4);
    PowerAllocation a = mixed_power(s);
    a.p.head(2).setZero();
    a.q.head(2).setZero();
    const auto c1 = SchemeConfig::sc1(50, 2, 3, 0.5);
    const auto c3 = SchemeConfig::sc3(50, 2, 3);
    const PilotPlan plan = draw_pilot_plan(c1, s, 8);
    Rng r1 = make_stream(40), r3 = make_stream(40);
    const McSample s1 = simulate_training(s, plan, a, c1, r1);
    const McSample s3 = simulate_training(s, plan, a, c3, r3);
    CHECK(s1.g_hat.rightCols(5) == s3.g_hat.rightCols(5));
    CHECK(s1.gamma.tail(5) == s3.gamma.tail(5));

    McOptions opt;
    opt.samples = 40000;
    const auto mc = estimate_uatf_components(s, c3, a, opt);
    const SinrTerms ref = sinr_terms(s, a, c1);
    for (int k = 2; k < 7; ++k)
        CHECK(std::abs(mc[k].sinr.value - ref.sinr(k)) < std::max(0.02 * ref.sinr(k), 4.0 * mc[k].sinr.std_error));
}

TEST_CASE("Monte Carlo UatF terms match the closed form") {
    const Scenario s = small_scenario(6);
    const PowerAllocation a = mixed_power(s);
    for (const auto& cfg : schemes()) {
        McOptions opt;
        opt.samples = 100000;
        opt.seed = 12;
        const auto mc = estimate_uatf_components(s, cfg, a, opt);
        const SinrTerms ref = sinr_terms(s, a, cfg);
        for (int k = 0; k < s.num_devices(); ++k) {
            auto near = [](const McEstimate& e, double x) {
                return std::abs(e.value - x) <= std::max(0.02 * std::abs(x), 4.0 * e.std_error);
            };
            CHECK(near(mc[k].sinr, ref.sinr(k)));
            CHECK(near(mc[k].gamma_bar, ref.gamma_bar(k)));
            CHECK(near(mc[k].desired, ref.desired(k)));
            if (k < 2) CHECK(std::abs(mc[k].coherent.value) <= 4.0 * mc[k].coherent.std_error);
        }
    }
}

TEST_CASE("zero data power gives zero SINR") {
    const Scenario s = small_scenario(4);
    PowerAllocation a = mixed_power(s);
    a.p(1) = 0.0;
    a.p(4) = 0.0;
    McOptions opt;
    opt.samples = 500;
    for (const auto& cfg : schemes()) {
        const auto mc = estimate_uatf_components(s, cfg, a, opt);
        CHECK(mc[1].sinr.value == 0.0);
        CHECK(mc[4].sinr.value == 0.0);
        CHECK(mc[4].rate.value == 0.0);
    }
}

TEST_CASE("SC2 coherent interference scales with M") {
    const std::vector<double> h{0.5}, m{1.0, 0.9, 0.8, 0.7};
    const auto cfg = SchemeConfig::sc2(50, 1, 2);
    McOptions opt;
    opt.samples = 40000;
    const Scenario s8 = make_scenario(h, m, 8, 0.1, 1.0);
    const Scenario s16 = s8.with_antennas(16);
    const PowerAllocation a = PowerAllocation::full(s8);
    const auto e8 = estimate_uatf_components(s8, cfg, a, opt);
    const auto e16 = estimate_uatf_components(s16, cfg, a, opt);
    for (int k = 1; k < 5; ++k) {
        const double r = e16[k].coherent.value / e8[k].coherent.value;
        const double se = r * std::hypot(e16[k].coherent.std_error / e16[k].coherent.value,
                                          e8[k].coherent.std_error / e8[k].coherent.value);
        CHECK(std::abs(r - 2.0) < 4.0 * se);
    }
}

TEST_CASE("results do not depend on the thread count") {
    const Scenario s = small_scenario(4);
    const PowerAllocation a = mixed_power(s);
    McOptions opt;
    opt.samples = 2000;
    opt.batches = 8;
    const auto one = estimate_uatf_components(s, SchemeConfig::sc3(50, 2, 3), a, opt);
    opt.threads = 3;
    const auto three = estimate_uatf_components(s, SchemeConfig::sc3(50, 2, 3), a, opt);
    for (int k = 0; k < s.num_devices(); ++k) {
        CHECK(one[k].sinr.value == three[k].sinr.value);
        CHECK(one[k].sinr.std_error == three[k].sinr.std_error);
    }
    CHECK(resolve_threads(0) >= 1);
    CHECK(resolve_threads(5) == 5);
}

TEST_CASE("verifier input checks") {
    const Scenario s = small_scenario(4);
    const PowerAllocation a = mixed_power(s);
    McOptions opt;
    opt.samples = 1;
    CHECK_THROWS_AS(estimate_uatf_components(s, SchemeConfig::sc2(50, 2, 3), a, opt), ConfigError);
    const PilotPlan plan = draw_pilot_plan(SchemeConfig::sc2(50, 2, 3), s, 1);
    Rng rng = make_stream(1);
    CHECK_THROWS_AS(simulate_training(s, plan, a, SchemeConfig::sc2(50, 2, 4), rng), ConfigError);
    CHECK(to_string(McQuantity::Sinr) == "sinr");
}
