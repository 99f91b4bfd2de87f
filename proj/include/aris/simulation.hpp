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
//
// Seeded Monte Carlo driver.
//
// Trial i always draws from trial_rng(seed, i), in the order
//   S.x, S.y, D.x, D.y, body_0.x, body_0.y, body_1.x, ...
// Every point of a sweep therefore sees the same devices, and a lower blocker
// density sees a prefix of the bodies of a higher one (common random numbers).
//
// Trials are processed in fixed blocks of kTrialBlock. Each block is reduced
// on its own and the block statistics are merged in block order, so results
// are bit-identical for any number of workers.

#pragma once

#include "aris/blockage.hpp"
#include "aris/channel.hpp"
#include "aris/errors.hpp"
#include "aris/geometry.hpp"
#include "aris/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace aris
{

enum class LinkMode
{
    with_aris,
    without_aris,
};

// How the two reflected hops combine into one "blocked" event.
enum class ArisBlockedRule
{
    any_hop,
    both_hops,
};

struct ScenarioConfig
{
    Area area;
    double device_height = 1.0;
    double aris_x = 25.0;
    double aris_y = 25.0;
    double aris_clearance = 13.0; // above the device plane
    RadioParams radio;
    ChannelOptions channel;
    BlockerDims blocker_dims;
    double blocker_density = 0.2; // bodies per m^2
    BlockageModelParams blockage;
    LinkMode mode = LinkMode::with_aris;
    ArisBlockedRule blocked_rule = ArisBlockedRule::any_hop;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
};

inline void validate(const ScenarioConfig &c)
{
    validate_area(c.area);
    if (!(c.device_height > 0.0) || !std::isfinite(c.device_height))
        throw ConfigurationError("device_height", "must be > 0");
    validate(c.radio);
    if (!(c.channel.path_loss_exponent > 0.0))
        throw ConfigurationError("channel.path_loss_exponent", "must be > 0");
    if (!(c.blocker_dims.height > 0.0))
        throw ConfigurationError("blocker_dims.height", "must be > 0");
    if (!(c.blocker_dims.width > 0.0))
        throw ConfigurationError("blocker_dims.width", "must be > 0");
    if (!(c.blocker_dims.depth >= 0.0))
        throw ConfigurationError("blocker_dims.depth", "must be >= 0");
    blocker_count(c.blocker_density, c.area);
    validate(c.blockage);
    if (c.trials < 1)
        throw ConfigurationError("trials", "must be >= 1");
    if (!std::isfinite(c.aris_clearance))
        throw ConfigurationError("aris_clearance", "must be finite");

    if (!c.area.contains(c.aris_x, c.aris_y))
        throw PhysicsError("aris_xy", "reflector must hover over the service area");
    if (c.mode == LinkMode::with_aris && !(c.aris_clearance > 0.0))
        throw PhysicsError("aris_clearance", "reflector level with the devices puts the reflected beam on the horizon");
}

inline Point3 aris_position(const ScenarioConfig &c)
{
    return {c.aris_x, c.aris_y, c.device_height + c.aris_clearance};
}

inline std::string_view to_string(LinkMode m) { return m == LinkMode::with_aris ? "with_aris" : "without_aris"; }

struct LinkReport
{
    LinkGeometry geometry;
    LinkBlockageResult blockage;
};

struct TrialOutcome
{
    bool blocked = false;
    double se = 0.0;
    Point3 source;
    Point3 destination;
    // with_aris: {ARIS->S, ARIS->D}; without_aris: {S->D}
    std::vector<LinkReport> links;
    LinkBudgetResult budget; // end-to-end, blockage applied
};

namespace detail
{

inline LinkBudgetResult reflected_budget(const ScenarioConfig &c, const LinkGeometry &to_src,
                                         const LinkGeometry &to_dst, double loss_db)
{
    const ArisLinkInputs in{to_src.length, to_dst.length, to_dst.elevation};
    return apply_loss_and_se(aris_rx_power(c.radio, in, c.channel), loss_db, c.radio.noise_power_dbm);
}

inline LinkBudgetResult direct_budget(const ScenarioConfig &c, const LinkGeometry &sd, double loss_db)
{
    return apply_loss_and_se(friis_rx_power(c.radio, sd.length, c.channel), loss_db, c.radio.noise_power_dbm);
}

inline bool combine_hops(ArisBlockedRule rule, bool first, bool second)
{
    return rule == ArisBlockedRule::any_hop ? (first || second) : (first && second);
}

} // namespace detail

// One trial on an arbitrary stream; run_trial() supplies the seeded one.
template <UnitRandom R>
TrialOutcome run_trial_on(const ScenarioConfig &c, R &rng)
{
    TrialOutcome out;
    const auto [s, d] = sample_devices(rng, c.area, c.device_height);
    const std::vector<Blocker> bodies = sample_blockers(rng, c.area, c.blocker_density, c.blocker_dims);
    out.source = s;
    out.destination = d;
    const double lam = wavelength(c.radio.frequency_hz);

    if (c.mode == LinkMode::with_aris)
    {
        const Point3 a = aris_position(c);
        const LinkGeometry to_src = make_link(a, s);
        const LinkGeometry to_dst = make_link(a, d);
        const auto b1 = link_blockage(to_src, bodies, lam, c.blockage);
        const auto b2 = link_blockage(to_dst, bodies, lam, c.blockage);
        out.links = {{to_src, b1}, {to_dst, b2}};
        out.blocked = detail::combine_hops(c.blocked_rule, b1.shadowed, b2.shadowed);
        out.budget = detail::reflected_budget(c, to_src, to_dst, b1.total_loss_db + b2.total_loss_db);
    }
    else
    {
        const LinkGeometry sd = make_link(s, d);
        const auto b = link_blockage(sd, bodies, lam, c.blockage);
        out.links = {{sd, b}};
        out.blocked = b.shadowed;
        out.budget = detail::direct_budget(c, sd, b.total_loss_db);
    }
    out.se = out.budget.spectral_efficiency;
    return out;
}

inline TrialOutcome run_trial(const ScenarioConfig &c, std::uint64_t trial_index)
{
    auto rng = trial_rng(c.seed, trial_index);
    return run_trial_on(c, rng);
}

// ---- aggregation -------------------------------------------------------

struct MetricsSummary
{
    double blockage_probability = 0.0;
    double mean_se = 0.0;
    double se_ci95_halfwidth = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t blocked_trials = 0;
    std::uint64_t seed = 0;
    ScenarioConfig config;
};

// Pairwise summation: error grows with log(n) and the result depends only on
// the order of the input.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8)
    {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Count / mean / sum of squared deviations, mergeable (Chan et al.).
struct RunningStats
{
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    double mean = 0.0;
    double m2 = 0.0;

    static RunningStats of(std::span<const double> values, std::uint64_t hits, std::vector<double> &scratch)
    {
        RunningStats s;
        s.n = values.size();
        s.hits = hits;
        if (s.n == 0)
            return s;
        s.mean = pairwise_sum(values) / double(s.n);
        scratch.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const double d = values[i] - s.mean;
            scratch[i] = d * d;
        }
        s.m2 = pairwise_sum(scratch);
        return s;
    }

    void merge(const RunningStats &o)
    {
        if (o.n == 0)
            return;
        if (n == 0)
        {
            *this = o;
            return;
        }
        const double na = double(n), nb = double(o.n), nt = na + nb;
        const double delta = o.mean - mean;
        mean += delta * (nb / nt);
        m2 += o.m2 + delta * delta * (na * nb / nt);
        n += o.n;
        hits += o.hits;
    }

    double ci95_halfwidth() const
    {
        if (n < 2)
            return 0.0;
        return 1.96 * std::sqrt(m2 / double(n - 1)) / std::sqrt(double(n));
    }
};

// ---- batch evaluation --------------------------------------------------

inline constexpr std::uint64_t kTrialBlock = 2048;

struct RunOptions
{
    unsigned workers = 0; // 0: one per hardware thread
    // Called after each finished block, serialised.
    std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

// One point of a batch: the parameters a sweep may vary.
struct ScenarioPoint
{
    LinkMode mode = LinkMode::with_aris;
    double density = 0.0;
    double clearance = 0.0;
};

namespace detail
{

// Indices of the bodies whose facing footprint the ground ray crosses, in
// ascending order. Everything else contributes exactly nothing to the link.
inline void collect_candidates(const GroundRay &g, std::span<const Blocker> bodies, std::vector<std::uint32_t> &out)
{
    out.clear();
    for (std::size_t i = 0; i < bodies.size(); ++i)
    {
        const Blocker &b = bodies[i];
        if (footprint_hit(g, b.base_center.x, b.base_center.y, 0.5 * b.dims.width))
            out.push_back(std::uint32_t(i));
    }
}

class CandidateView
{
  public:
    CandidateView(std::span<const Blocker> bodies, std::span<const std::uint32_t> idx, std::size_t limit)
        : bodies_(bodies), idx_(idx.first(std::size_t(std::lower_bound(idx.begin(), idx.end(), limit) - idx.begin())))
    {
    }

    struct iterator
    {
        using value_type = Blocker;
        using difference_type = std::ptrdiff_t;
        const Blocker *base = nullptr;
        const std::uint32_t *it = nullptr;
        const Blocker &operator*() const { return base[*it]; }
        iterator &operator++()
        {
            ++it;
            return *this;
        }
        void operator++(int) { ++it; }
        bool operator==(const iterator &o) const { return it == o.it; }
    };

    iterator begin() const { return {bodies_.data(), idx_.data()}; }
    iterator end() const { return {bodies_.data(), idx_.data() + idx_.size()}; }

  private:
    std::span<const Blocker> bodies_;
    std::span<const std::uint32_t> idx_;
};

struct TrialScratch
{
    std::vector<Blocker> bodies;
    std::vector<std::uint32_t> sd, to_src, to_dst;
    std::vector<double> values;
};

inline ScenarioConfig config_at(const ScenarioConfig &base, const ScenarioPoint &p)
{
    ScenarioConfig c = base;
    c.mode = p.mode;
    c.blocker_density = p.density;
    c.aris_clearance = p.clearance;
    return c;
}

} // namespace detail

// Runs every point over the same trial streams. Equivalent to calling
// run_scenario() on each point's config, only faster: bodies are sampled once
// per trial and the footprint search is shared across points.
inline std::vector<MetricsSummary> run_points(const ScenarioConfig &base, std::span<const ScenarioPoint> points,
                                              const RunOptions &opts = {})
{
    if (points.empty())
        return {};
    std::vector<std::size_t> counts;
    bool need_direct = false, need_reflected = false;
    for (const auto &p : points)
    {
        validate(detail::config_at(base, p));
        counts.push_back(blocker_count(p.density, base.area));
        (p.mode == LinkMode::with_aris ? need_reflected : need_direct) = true;
    }
    const std::size_t max_count = *std::max_element(counts.begin(), counts.end());
    if (max_count > std::numeric_limits<std::uint32_t>::max())
        throw ConfigurationError("blocker_density", "too many bodies");

    const std::uint64_t trials = base.trials;
    const std::uint64_t n_blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    const std::size_t n_points = points.size();
    const double lam = wavelength(base.radio.frequency_hz);
    const Point3 aris_ground{base.aris_x, base.aris_y, 0.0};

    std::vector<RunningStats> block_stats(n_blocks * n_points);

    auto run_block = [&](std::uint64_t blk, detail::TrialScratch &ws) {
        const std::uint64_t first = blk * kTrialBlock;
        const std::uint64_t last = std::min(trials, first + kTrialBlock);
        const std::size_t len = std::size_t(last - first);
        std::vector<double> se(len * n_points);
        std::vector<std::uint64_t> hits(n_points, 0);

        for (std::uint64_t t = first; t < last; ++t)
        {
            auto rng = trial_rng(base.seed, t);
            const auto [s, d] = sample_devices(rng, base.area, base.device_height);
            sample_blockers_into(rng, base.area, max_count, base.blocker_dims, ws.bodies);
            const std::span<const Blocker> bodies(ws.bodies);
            if (need_direct)
                detail::collect_candidates(GroundRay::of(s, d), bodies, ws.sd);
            if (need_reflected)
            {
                detail::collect_candidates(GroundRay::of(aris_ground, s), bodies, ws.to_src);
                detail::collect_candidates(GroundRay::of(aris_ground, d), bodies, ws.to_dst);
            }

            for (std::size_t p = 0; p < n_points; ++p)
            {
                const ScenarioPoint &pt = points[p];
                const ScenarioConfig c = detail::config_at(base, pt);
                bool blocked = false;
                LinkBudgetResult budget;
                if (pt.mode == LinkMode::with_aris)
                {
                    const Point3 a = aris_position(c);
                    const LinkGeometry to_src = make_link(a, s);
                    const LinkGeometry to_dst = make_link(a, d);
                    const auto b1 =
                        link_blockage(to_src, detail::CandidateView(bodies, ws.to_src, counts[p]), lam, c.blockage);
                    const auto b2 =
                        link_blockage(to_dst, detail::CandidateView(bodies, ws.to_dst, counts[p]), lam, c.blockage);
                    blocked = detail::combine_hops(c.blocked_rule, b1.shadowed, b2.shadowed);
                    budget = detail::reflected_budget(c, to_src, to_dst, b1.total_loss_db + b2.total_loss_db);
                }
                else
                {
                    const LinkGeometry sd = make_link(s, d);
                    const auto b = link_blockage(sd, detail::CandidateView(bodies, ws.sd, counts[p]), lam, c.blockage);
                    blocked = b.shadowed;
                    budget = detail::direct_budget(c, sd, b.total_loss_db);
                }
                se[p * len + std::size_t(t - first)] = budget.spectral_efficiency;
                hits[p] += blocked ? 1 : 0;
            }
        }
        for (std::size_t p = 0; p < n_points; ++p)
            block_stats[blk * n_points + p] =
                RunningStats::of(std::span<const double>(se).subspan(p * len, len), hits[p], ws.values);
    };

    unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::uint64_t>(workers, n_blocks));

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mu;
    std::uint64_t done = 0;

    auto worker = [&] {
        detail::TrialScratch ws;
        for (;;)
        {
            const std::uint64_t blk = next.fetch_add(1);
            if (blk >= n_blocks || failed.load())
                return;
            try
            {
                run_block(blk, ws);
            }
            catch (...)
            {
                std::lock_guard lock(mu);
                if (!error)
                    error = std::current_exception();
                failed = true;
                return;
            }
            if (opts.progress)
            {
                std::lock_guard lock(mu);
                done += std::min(kTrialBlock, trials - blk * kTrialBlock);
                opts.progress(done, trials);
            }
        }
    };

    if (workers <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<MetricsSummary> out(n_points);
    for (std::size_t p = 0; p < n_points; ++p)
    {
        RunningStats total;
        for (std::uint64_t blk = 0; blk < n_blocks; ++blk)
            total.merge(block_stats[blk * n_points + p]);
        MetricsSummary &m = out[p];
        m.trials = total.n;
        m.blocked_trials = total.hits;
        m.blockage_probability = double(total.hits) / double(total.n);
        m.mean_se = total.mean;
        m.se_ci95_halfwidth = total.ci95_halfwidth();
        m.seed = base.seed;
        m.config = detail::config_at(base, points[p]);
    }
    return out;
}

inline MetricsSummary run_scenario(const ScenarioConfig &c, const RunOptions &opts = {})
{
    const ScenarioPoint p{c.mode, c.blocker_density, c.aris_clearance};
    return run_points(c, std::span(&p, 1), opts).front();
}

// ---- sweeps ------------------------------------------------------------

enum class SweepAxis
{
    density,
    clearance,
};

inline std::string_view to_string(SweepAxis a) { return a == SweepAxis::density ? "density" : "clearance"; }

struct SweepResult
{
    double value = 0.0;
    MetricsSummary summary;
};

// lo, lo + step, ... up to hi inclusive (with a small allowance for rounding).
inline std::vector<double> linear_grid(double lo, double hi, double step)
{
    if (!(step > 0.0) || !(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigurationError("grid", "need lo <= hi and step > 0");
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        v.push_back(std::round((lo + double(i) * step) * 1e9) / 1e9);
    return v;
}

inline std::vector<SweepResult> sweep(const ScenarioConfig &c, SweepAxis axis, std::span<const double> values,
                                      const RunOptions &opts = {})
{
    if (values.empty())
        throw ConfigurationError("sweep.values", "must not be empty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw ConfigurationError("sweep.values", "must be strictly increasing");

    std::vector<ScenarioPoint> pts;
    for (double v : values)
        pts.push_back(axis == SweepAxis::density ? ScenarioPoint{c.mode, v, c.aris_clearance}
                                                 : ScenarioPoint{c.mode, c.blocker_density, v});
    auto sums = run_points(c, pts, opts);
    std::vector<SweepResult> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out.push_back({values[i], std::move(sums[i])});
    return out;
}

// Index of the highest mean SE; strict comparison, so ties go to the first.
inline std::size_t argmax_se(std::span<const SweepResult> curve)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].summary.mean_se > curve[best].summary.mean_se)
            best = i;
    return best;
}

struct OptimumResult
{
    double clearance = 0.0;
    MetricsSummary summary;
    std::vector<SweepResult> curve;
};

inline OptimumResult find_optimal_clearance(const ScenarioConfig &c, double lo, double hi, double step,
                                            const RunOptions &opts = {})
{
    if (c.mode != LinkMode::with_aris)
        throw ConfigurationError("mode", "optimal clearance needs with_aris");
    if (!(lo < hi) || !(step > 0.0))
        throw ConfigurationError("sweep.clearance", "need lo < hi and step > 0");
    OptimumResult r;
    const auto grid = linear_grid(lo, hi, step);
    r.curve = sweep(c, SweepAxis::clearance, grid, opts);
    const std::size_t best = argmax_se(r.curve);
    r.clearance = r.curve[best].value;
    r.summary = r.curve[best].summary;
    return r;
}

} // namespace aris
