// SPDX-License-Identifier: Apache-2.0
//
// aris-blockage: Monte Carlo blockage simulator for UAV-mounted RIS links
// Copyright (C) 2026 The aris-blockage authors
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

#include <catch2/catch_amalgamated.hpp>

#include "aris/simulation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using Catch::Approx;

namespace
{

aris::ScenarioConfig small_config(std::uint64_t trials = 3000)
{
    aris::ScenarioConfig c;
    c.trials = trials;
    c.seed = 77;
    return c;
}

// Replays a fixed list of draws.
struct ScriptedStream
{
    std::vector<double> values;
    std::size_t next = 0;
    double uniform01() { return values.at(next++); }
};

// Plain free-space formula, written out independently of the library.
double friis_se(double d)
{
    const double lambda = 299792458.0 / 60e9;
    const double pr = 1.0 * std::pow(10.0, 4.5) * 100.0 * std::pow(lambda / (4.0 * std::numbers::pi * d), 2.0);
    return std::log2(1.0 + pr / 1e-10);
}

bool same(const aris::MetricsSummary &a, const aris::MetricsSummary &b)
{
    return a.blockage_probability == b.blockage_probability && a.mean_se == b.mean_se &&
           a.se_ci95_halfwidth == b.se_ci95_halfwidth && a.trials == b.trials && a.blocked_trials == b.blocked_trials;
}

} // namespace

TEST_CASE("run_trial - deterministic in (seed, index)")
{
    auto c = small_config();
    c.blocker_density = 1.0;
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        const auto a = aris::run_trial(c, i);
        const auto b = aris::run_trial(c, i);
        REQUIRE(a.blocked == b.blocked);
        REQUIRE(a.se == b.se);
        REQUIRE(a.source == b.source);
    }
    CHECK(aris::run_trial(c, 0).source != aris::run_trial(c, 1).source);
}

TEST_CASE("run_trial - link count per mode")
{
    auto c = small_config();
    CHECK(aris::run_trial(c, 0).links.size() == 2);
    c.mode = aris::LinkMode::without_aris;
    CHECK(aris::run_trial(c, 0).links.size() == 1);
}

TEST_CASE("run_trial - no blockers, reflected path")
{
    auto c = small_config();
    c.blocker_density = 0.0;
    const aris::Point3 a{25.0, 25.0, 14.0};
    for (std::uint64_t i = 0; i < 200; ++i)
    {
        const auto t = aris::run_trial(c, i);
        REQUIRE_FALSE(t.blocked);
        const double d1 = aris::distance(a, t.source), d2 = aris::distance(a, t.destination);
        const double clean =
            aris::aris_rx_power(c.radio, {d1, d2, std::acos(13.0 / d2)}).spectral_efficiency;
        REQUIRE(t.se == Approx(clean).epsilon(1e-12));
        REQUIRE(t.links[0].blockage.total_loss_db == 0.0);
        REQUIRE(t.links[1].blockage.total_loss_db == 0.0);
    }
}

TEST_CASE("run_trial - no blockers, direct path matches free space")
{
    auto c = small_config();
    c.blocker_density = 0.0;
    c.mode = aris::LinkMode::without_aris;
    c.area = {5.0, 5.0};
    c.aris_x = c.aris_y = 2.5;
    for (std::uint64_t i = 0; i < 100; ++i)
    {
        const auto t = aris::run_trial(c, i);
        REQUIRE_FALSE(t.blocked);
        REQUIRE(t.se == Approx(friis_se(aris::distance(t.source, t.destination))).epsilon(1e-12));
    }
}

TEST_CASE("run_trial - body planted between the devices")
{
    auto c = small_config();
    c.area = {10.0, 10.0};
    c.aris_x = c.aris_y = 5.0;
    c.blocker_density = 0.01; // exactly one body
    c.mode = aris::LinkMode::without_aris;
    // S = (1, 5), D = (9, 5), body at (5, 5)
    ScriptedStream rig{{0.1, 0.5, 0.9, 0.5, 0.5, 0.5}};
    const auto t = aris::run_trial_on(c, rig);
    CHECK(t.blocked);
    CHECK(t.links[0].blockage.shadowing_blocker_count == 1);
    CHECK(t.se < friis_se(8.0) - 3.0);

    // same placement, reflected path: crossings near the devices are high
    c.mode = aris::LinkMode::with_aris;
    ScriptedStream rig2{{0.1, 0.5, 0.9, 0.5, 0.5, 0.5}};
    CHECK_FALSE(aris::run_trial_on(c, rig2).blocked);
}

TEST_CASE("run_scenario - aggregates exactly what run_trial reports")
{
    auto c = small_config(5000);
    c.blocker_density = 0.5;
    for (auto mode : {aris::LinkMode::with_aris, aris::LinkMode::without_aris})
    {
        c.mode = mode;
        std::vector<double> se;
        std::uint64_t blocked = 0;
        aris::RunningStats total;
        std::vector<double> scratch;
        for (std::uint64_t blk = 0; blk * aris::kTrialBlock < c.trials; ++blk)
        {
            se.clear();
            std::uint64_t hits = 0;
            for (std::uint64_t i = blk * aris::kTrialBlock; i < std::min(c.trials, (blk + 1) * aris::kTrialBlock); ++i)
            {
                const auto t = aris::run_trial(c, i);
                se.push_back(t.se);
                hits += t.blocked;
            }
            blocked += hits;
            total.merge(aris::RunningStats::of(se, hits, scratch));
        }
        const auto m = aris::run_scenario(c, {1, {}});
        CHECK(m.blocked_trials == blocked);
        CHECK(m.blockage_probability == double(blocked) / double(c.trials));
        CHECK(m.mean_se == total.mean);
        CHECK(m.se_ci95_halfwidth == total.ci95_halfwidth());
    }
}

TEST_CASE("run_scenario - bit-identical for any worker count")
{
    auto c = small_config(9000);
    c.blocker_density = 1.0;
    const auto one = aris::run_scenario(c, {1, {}});
    for (unsigned w : {2u, 3u, 8u})
        CHECK(same(one, aris::run_scenario(c, {w, {}})));
}

TEST_CASE("run_scenario - progress reaches the total")
{
    auto c = small_config(5000);
    std::uint64_t last = 0;
    aris::RunOptions opts{2, [&](std::uint64_t done, std::uint64_t total) {
                              CHECK(total == 5000);
                              last = done;
                          }};
    aris::run_scenario(c, opts);
    CHECK(last == 5000);
}

TEST_CASE("sweep - each point equals its own run_scenario")
{
    auto c = small_config(2500);
    const std::vector<double> dens{0.0, 0.3, 1.0};
    const auto s = aris::sweep(c, aris::SweepAxis::density, dens, {2, {}});
    for (std::size_t i = 0; i < dens.size(); ++i)
    {
        auto ci = c;
        ci.blocker_density = dens[i];
        CHECK(same(s[i].summary, aris::run_scenario(ci, {1, {}})));
        CHECK(s[i].summary.config.blocker_density == dens[i]);
    }
    const std::vector<double> cl{3.0, 13.0, 30.0};
    const auto h = aris::sweep(c, aris::SweepAxis::clearance, cl, {2, {}});
    for (std::size_t i = 0; i < cl.size(); ++i)
    {
        auto ci = c;
        ci.aris_clearance = cl[i];
        CHECK(same(h[i].summary, aris::run_scenario(ci, {1, {}})));
    }
}

TEST_CASE("sweep - common random numbers make the curves monotone")
{
    auto c = small_config(3000);
    c.blocker_density = 1.0;
    const auto heights = aris::linear_grid(2.0, 40.0, 2.0);
    const auto h = aris::sweep(c, aris::SweepAxis::clearance, heights);
    for (std::size_t i = 1; i < h.size(); ++i)
        CHECK(h[i].summary.blocked_trials <= h[i - 1].summary.blocked_trials);

    for (auto mode : {aris::LinkMode::with_aris, aris::LinkMode::without_aris})
    {
        c.mode = mode;
        const auto d = aris::sweep(c, aris::SweepAxis::density, aris::linear_grid(0.0, 2.0, 0.25));
        CHECK(d.front().summary.blocked_trials == 0);
        for (std::size_t i = 1; i < d.size(); ++i)
            CHECK(d[i].summary.blocked_trials >= d[i - 1].summary.blocked_trials);
    }
}

TEST_CASE("sweep - argument checks")
{
    const auto c = small_config(10);
    const std::vector<double> none, flat{1.0, 1.0}, down{2.0, 1.0};
    CHECK_THROWS_AS(aris::sweep(c, aris::SweepAxis::density, none), aris::ConfigurationError);
    CHECK_THROWS_AS(aris::sweep(c, aris::SweepAxis::density, flat), aris::ConfigurationError);
    CHECK_THROWS_AS(aris::sweep(c, aris::SweepAxis::clearance, down), aris::ConfigurationError);
}

// With no bodies the curve is pure beam geometry. Low heights are penalised
// by the cos^4 spreading toward distant devices and large heights by the
// growing Rayleigh length, so the optimum is interior. Checked against a
// direct evaluation of the reflected-beam formula over the same devices.
TEST_CASE("find_optimal_clearance - no bodies, matches the beam formula")
{
    auto c = small_config(2000);
    c.blocker_density = 0.0;
    const auto opt = aris::find_optimal_clearance(c, 2.0, 40.0, 1.0);
    REQUIRE(opt.curve.size() == 39);

    const double lambda = 299792458.0 / 60e9, k = 2.0 * std::numbers::pi / lambda;
    const double gt = std::pow(10.0, 4.5), ar = 100.0 * lambda * lambda / (4.0 * std::numbers::pi);
    std::size_t best = 0;
    std::vector<double> oracle;
    for (std::size_t j = 0; j < opt.curve.size(); ++j)
    {
        const double h = opt.curve[j].value;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < c.trials; ++i)
        {
            auto rng = aris::trial_rng(c.seed, i);
            const double sx = 50.0 * rng.uniform01(), sy = 50.0 * rng.uniform01();
            const double dx = 50.0 * rng.uniform01(), dy = 50.0 * rng.uniform01();
            const double d1 = std::sqrt((sx - 25) * (sx - 25) + (sy - 25) * (sy - 25) + h * h);
            const double d2 = std::sqrt((dx - 25) * (dx - 25) + (dy - 25) * (dy - 25) + h * h);
            const double zr = 4.0 * k * d1 * d1 / gt, ct = h / d2;
            const double sr = 2.0 / (lambda * zr) * 0.81 /
                              std::sqrt((1 + d2 * d2 / (zr * zr)) * (1 + d2 * d2 / (zr * zr * std::pow(ct, 4))));
            sum += std::log2(1.0 + ar * sr / 1e-10);
        }
        oracle.push_back(sum / double(c.trials));
        REQUIRE(opt.curve[j].summary.mean_se == Approx(oracle.back()).epsilon(1e-11));
        REQUIRE(opt.curve[j].summary.blocked_trials == 0);
        if (oracle[j] > oracle[best])
            best = j;
    }
    CHECK(opt.clearance == opt.curve[best].value);
    CHECK(opt.clearance > 2.0);
    CHECK(opt.clearance < 40.0);
    // strictly decreasing once past the optimum
    for (std::size_t j = best + 1; j < opt.curve.size(); ++j)
        CHECK(opt.curve[j].summary.mean_se < opt.curve[j - 1].summary.mean_se);

    CHECK_THROWS_AS(aris::find_optimal_clearance(c, 5.0, 5.0, 1.0), aris::ConfigurationError);
    CHECK_THROWS_AS(aris::find_optimal_clearance(c, 2.0, 5.0, 0.0), aris::ConfigurationError);
}

TEST_CASE("argmax_se - ties go to the lowest clearance")
{
    std::vector<aris::SweepResult> curve(4);
    const double se[] = {1.0, 3.0, 3.0, 2.0};
    for (int i = 0; i < 4; ++i)
    {
        curve[i].value = i;
        curve[i].summary.mean_se = se[i];
    }
    CHECK(aris::argmax_se(curve) == 1);
}

TEST_CASE("blocked rule - both hops is never more frequent than any hop")
{
    auto c = small_config(3000);
    c.blocker_density = 1.0;
    const auto any = aris::run_scenario(c);
    c.blocked_rule = aris::ArisBlockedRule::both_hops;
    const auto both = aris::run_scenario(c);
    CHECK(both.blocked_trials <= any.blocked_trials);
    CHECK(both.mean_se == any.mean_se);
}

TEST_CASE("validate - physics checks")
{
    auto c = small_config();
    c.aris_x = 60.0;
    CHECK_THROWS_AS(aris::validate(c), aris::PhysicsError);
    c = small_config();
    c.aris_clearance = 0.0;
    CHECK_THROWS_AS(aris::validate(c), aris::PhysicsError);
    c.mode = aris::LinkMode::without_aris;
    CHECK_NOTHROW(aris::validate(c));
    c = small_config();
    c.trials = 0;
    CHECK_THROWS_AS(aris::validate(c), aris::ConfigurationError);
    c = small_config();
    c.blocker_density = -1.0;
    CHECK_THROWS_AS(aris::validate(c), aris::ConfigurationError);
}

TEST_CASE("RunningStats - merge matches a direct computation")
{
    std::vector<double> v;
    auto r = aris::trial_rng(1, 2);
    for (int i = 0; i < 10007; ++i)
        v.push_back(20.0 + 5.0 * r.uniform01());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= double(v.size());
    double m2 = 0.0;
    for (double x : v)
        m2 += (x - mean) * (x - mean);

    std::vector<double> scratch;
    aris::RunningStats merged;
    for (std::size_t i = 0; i < v.size(); i += 1000)
    {
        const std::span<const double> part(v.data() + i, std::min<std::size_t>(1000, v.size() - i));
        merged.merge(aris::RunningStats::of(part, 0, scratch));
    }
    CHECK(merged.n == v.size());
    CHECK(merged.mean == Approx(mean).epsilon(1e-13));
    CHECK(merged.m2 == Approx(m2).epsilon(1e-10));
    CHECK(merged.ci95_halfwidth() == Approx(1.96 * std::sqrt(m2 / (v.size() - 1)) / std::sqrt(v.size())));
}

// Binomial 95% intervals from 2000-trial runs should cover a long-run value
// about 19 times in 20.
TEST_CASE("estimator - binomial interval coverage")
{
    auto c = small_config(40000);
    c.blocker_density = 0.2;
    c.seed = 1000;
    const double truth = aris::run_scenario(c).blockage_probability;
    int covered = 0;
    for (int rep = 0; rep < 20; ++rep)
    {
        c.trials = 2000;
        c.seed = 2000 + std::uint64_t(rep);
        const double p = aris::run_scenario(c).blockage_probability;
        const double half = 1.96 * std::sqrt(p * (1.0 - p) / 2000.0);
        covered += std::abs(p - truth) <= half;
    }
    CHECK(covered >= 17);
}

TEST_CASE("linear_grid")
{
    const auto g = aris::linear_grid(0.1, 2.0, 0.1);
    REQUIRE(g.size() == 20);
    CHECK(g[2] == 0.3);
    CHECK(g.back() == 2.0);
    CHECK(aris::linear_grid(2.0, 40.0, 1.0).size() == 39);
    CHECK_THROWS_AS(aris::linear_grid(1.0, 0.0, 1.0), aris::ConfigurationError);
}
