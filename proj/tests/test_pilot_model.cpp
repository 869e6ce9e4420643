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
#include <set>
#include <vector>

#include "doctest.h"
#include "mamimo/pilot_model.hpp"

using namespace mamimo;

namespace {

Scenario population(int kh, int km) {
    std::vector<double> h(kh, 1.0), m(km, 0.5);
    return make_scenario(h, m, 4, 1.0, 1.0);
}

}  // namespace

TEST_CASE("scheme names round trip") {
    for (Scheme s : {Scheme::SC1, Scheme::SC2, Scheme::SC3}) CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(scheme_from_string("SC4"), ConfigError);
}

TEST_CASE("scheme factories") {
    const auto c2 = SchemeConfig::sc2(200, 5, 10);
    CHECK(c2.np_h == 15);
    CHECK(c2.machine_window() == 15);
    CHECK(c2.machine_offset(5) == 5);
    const auto c1 = SchemeConfig::sc1(200, 5, 10, 0.3);
    CHECK(c1.machine_window() == 10);
    CHECK(c1.machine_offset(5) == 5);
    const auto c3 = SchemeConfig::sc3(200, 7, 10);
    CHECK(c3.machine_offset(5) == 7);
}

TEST_CASE("scheme validation") {
    CHECK_NOTHROW(validate(SchemeConfig::sc1(200, 5, 15, 0.5), 5));
    CHECK_THROWS_AS(validate(SchemeConfig::sc1(200, 5, 0, 0.5), 5), ConfigError);
    CHECK_THROWS_AS(validate(SchemeConfig::sc1(200, 4, 15, 0.5), 5), ConfigError);
    CHECK_THROWS_AS(validate(SchemeConfig::sc1(200, 5, 15, 1.5), 5), ConfigError);
    CHECK_THROWS_AS(validate(SchemeConfig::sc1(200, 5, 200, 0.5), 5), ConfigError);
    CHECK_NOTHROW(validate(SchemeConfig::sc2(200, 5, 195), 5));
    CHECK_THROWS_AS(validate(SchemeConfig::sc2(200, 5, 196), 5), ConfigError);
    SchemeConfig bad2 = SchemeConfig::sc2(200, 5, 10);
    bad2.np_h = 14;
    CHECK_THROWS_AS(validate(bad2, 5), ConfigError);
    CHECK_NOTHROW(validate(SchemeConfig::sc3(200, 5, 194), 5));
    CHECK_THROWS_AS(validate(SchemeConfig::sc3(200, 5, 195), 5), ConfigError);
    SchemeConfig bad3 = SchemeConfig::sc3(200, 5, 10);
    bad3.alpha_h = 0.5;
    CHECK_THROWS_AS(validate(bad3, 5), ConfigError);
}

TEST_CASE("plan layout") {
    const Scenario s = population(3, 12);
    for (auto cfg : {SchemeConfig::sc1(100, 4, 6, 0.5), SchemeConfig::sc2(100, 3, 6), SchemeConfig::sc3(100, 4, 6)}) {
        const PilotPlan plan = draw_pilot_plan(cfg, s, 5);
        REQUIRE(plan.assignment.size() == 15u);
        for (int k = 0; k < 3; ++k) {
            CHECK(plan.assignment[k] == k);
            CHECK(plan.machine_pilot(k) == -1);
        }
        std::size_t members = 0;
        for (int c = 0; c < 6; ++c) {
            for (int k : plan.collision_sets[c]) CHECK(plan.machine_pilot(k) == c);
            members += plan.collision_sets[c].size();
        }
        CHECK(members == 12u);
        for (int k = 3; k < 15; ++k) {
            const int c = plan.machine_pilot(k);
            CHECK(c >= 0);
            CHECK(c < 6);
            CHECK(plan.assignment[k] == 3 + c);
        }
    }
}

TEST_CASE("plans are reproducible per seed") {
    const Scenario s = population(5, 15);
    const auto cfg = SchemeConfig::sc2(200, 5, 7);
    CHECK(draw_pilot_plan(cfg, s, 9).assignment == draw_pilot_plan(cfg, s, 9).assignment);
    CHECK(draw_pilot_plan(cfg, s, 9).assignment != draw_pilot_plan(cfg, s, 10).assignment);
}

TEST_CASE("gram matrix structure") {
    const Scenario s = population(5, 15);
    const PilotPlan plan = draw_pilot_plan(SchemeConfig::sc1(200, 5, 4, 0.5), s, 1);
    const Eigen::MatrixXi g = gram_matrix(plan);
    CHECK(g == g.transpose());
    CHECK((g.diagonal().array() == 1).all());
    CHECK(((g.array() == 0) || (g.array() == 1)).all());
    CHECK(g.topLeftCorner(5, 5) == Eigen::MatrixXi::Identity(5, 5));
    CHECK(g.topRightCorner(5, 15).isZero());
    for (int a = 5; a < 20; ++a)
        for (int b = 5; b < 20; ++b) CHECK(g(a, b) == (plan.collide(a, b) ? 1 : 0));

    const Scenario humans_only = population(6, 0);
    const Eigen::MatrixXi gh = gram_matrix(draw_pilot_plan(SchemeConfig::sc1(200, 6, 3, 1.0), humans_only, 1));
    CHECK(gh == Eigen::MatrixXi::Identity(6, 6));
}

TEST_CASE("machine pilots are uniform and independent") {
    const Scenario s = population(5, 15);
    const auto cfg = SchemeConfig::sc1(200, 5, 15, 0.5);
    Rng rng = make_stream(123);
    const int draws = 20000;
    const double p = 1.0 / 15.0;
    int pair = 0, triple = 0, first_pilot = 0;
    for (int t = 0; t < draws; ++t) {
        const PilotPlan plan = draw_pilot_plan(cfg, s, rng);
        const bool ab = plan.collide(5, 6), ac = plan.collide(5, 7);
        pair += ab;
        triple += ab && ac;
        first_pilot += plan.machine_pilot(8) == 0;
    }
    const double se1 = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(pair / double(draws) - p) < 3.0 * se1);
    CHECK(std::abs(first_pilot / double(draws) - p) < 3.0 * se1);
    const double p2 = p * p;
    CHECK(std::abs(triple / double(draws) - p2) < 3.0 * std::sqrt(p2 * (1 - p2) / draws));
}

TEST_CASE("single machine pilot forces full collision") {
    const Scenario s = population(2, 6);
    const PilotPlan plan = draw_pilot_plan(SchemeConfig::sc3(50, 2, 1), s, 4);
    CHECK(plan.collision_sets.size() == 1u);
    CHECK(plan.collision_sets[0].size() == 6u);
}
