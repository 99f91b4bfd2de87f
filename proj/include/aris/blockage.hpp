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
// Human-body attenuation as four-edge knife-edge diffraction around a thin
// screen (the METIS / 3GPP TR 38.901 blockage model B construction):
//
//   F_e  = atan(+-pi/2 * sqrt(pi/lambda * (D1 + D2 - r))) / pi
//   loss = -20 log10(1 - (F_top + F_bottom) * (F_side1 + F_side2))
//
// with "+" for an edge whose half-plane contains the direct ray. Bodies on the
// same link are treated as independent screens and their dB losses add.

#pragma once

#include "aris/errors.hpp"
#include "aris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ranges>
#include <vector>

namespace aris
{

enum class BlockageMode
{
    knife_edge,
    fixed_loss,
};

struct BlockageModelParams
{
    BlockageMode mode = BlockageMode::knife_edge;
    double fixed_loss_db = 20.0; // fixed_loss mode only
    double loss_floor_db = 0.0;  // per-body losses below this count as 0 dB
};

inline void validate(const BlockageModelParams &p)
{
    if (!(p.fixed_loss_db >= 0.0))
        throw ConfigurationError("blockage_params.fixed_loss_db", "must be >= 0");
    if (!(p.loss_floor_db >= 0.0))
        throw ConfigurationError("blockage_params.loss_floor_db", "must be >= 0");
}

struct LinkBlockageResult
{
    bool shadowed = false;
    double total_loss_db = 0.0;
    std::size_t shadowing_blocker_count = 0;
};

inline constexpr double kDetourTolerance = 1e-12; // metres

inline double edge_diffraction_factor(double d1, double d2, double r, double wavelength, bool shadowed)
{
    double detour = d1 + d2 - r;
    if (detour < 0.0)
    {
        if (detour < -kDetourTolerance)
            throw GeometryError("edge_diffraction_factor: D1 + D2 < r");
        detour = 0.0;
    }
    const double v = 0.5 * std::numbers::pi * std::sqrt(std::numbers::pi / wavelength * detour);
    return std::atan(shadowed ? v : -v) / std::numbers::pi;
}

inline double edge_diffraction_factor(const EdgePath &e, double r, double wavelength)
{
    return edge_diffraction_factor(e.d1, e.d2, r, wavelength, e.shadowed);
}

// Loss of one body plus whether it cuts the direct ray.
struct BlockerEffect
{
    double loss_db = 0.0;
    bool shadowed = false;
};

inline BlockerEffect blocker_effect(const LinkGeometry &link, const Blocker &blocker, double wavelength,
                                    const BlockageModelParams &params)
{
    const auto c = intersect_link_screen(link, blocker);
    if (!c)
        return {};

    BlockerEffect out;
    out.shadowed = c->crossing_height < blocker.dims.height;

    if (params.mode == BlockageMode::fixed_loss)
    {
        out.loss_db = out.shadowed ? params.fixed_loss_db : 0.0;
        return out;
    }

    const double r = c->direct_distance;
    const double vertical =
        edge_diffraction_factor(c->top, r, wavelength) + edge_diffraction_factor(c->bottom, r, wavelength);
    const double lateral =
        edge_diffraction_factor(c->side_pos, r, wavelength) + edge_diffraction_factor(c->side_neg, r, wavelength);
    // |vertical|, |lateral| < 1, so the log argument stays positive
    double loss = -20.0 * std::log10(1.0 - vertical * lateral);
    loss = std::max(loss, 0.0);
    if (loss < params.loss_floor_db)
        loss = 0.0;
    out.loss_db = loss;
    return out;
}

inline double blocker_loss_db(const LinkGeometry &link, const Blocker &blocker, double wavelength,
                              const BlockageModelParams &params)
{
    return blocker_effect(link, blocker, wavelength, params).loss_db;
}

// Adds the per-body dB losses of any range of bodies. The losses are summed
// in ascending order, so the result does not depend on the order of the
// bodies, and bodies the link misses (exactly 0 dB) can be filtered out
// beforehand without changing a bit of the result.
template <std::ranges::input_range Range>
    requires std::convertible_to<std::ranges::range_reference_t<Range>, const Blocker &>
LinkBlockageResult link_blockage(const LinkGeometry &link, Range &&blockers, double wavelength,
                                 const BlockageModelParams &params)
{
    LinkBlockageResult res;
    std::vector<double> losses;
    for (const Blocker &b : blockers)
    {
        const BlockerEffect e = blocker_effect(link, b, wavelength, params);
        if (e.loss_db > 0.0)
            losses.push_back(e.loss_db);
        if (e.shadowed)
            ++res.shadowing_blocker_count;
    }
    std::sort(losses.begin(), losses.end());
    for (double l : losses)
        res.total_loss_db += l;
    res.shadowed = res.shadowing_blocker_count > 0;
    return res;
}

} // namespace aris
