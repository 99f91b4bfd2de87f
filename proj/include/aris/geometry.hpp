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
// Placement sampling and link-versus-body intersection.
//
// Frame: right-handed, metres, ground plane at z = 0. A human body is modelled
// as a thin vertical rectangle (a "screen") standing on the ground. For every
// link under test the screen is rotated about its vertical axis so that it
// faces the link, i.e. its normal is parallel to the link's ground projection.

#pragma once

#include "aris/errors.hpp"
#include "aris/rng.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace aris
{

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Point3, Point3) = default;
};

inline double norm(Point3 p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }
inline double distance(Point3 a, Point3 b) { return norm(b - a); }

// Service area [0, width] x [0, depth].
struct Area
{
    double width = 50.0;
    double depth = 50.0;

    double size() const { return width * depth; }
    bool contains(double x, double y) const { return x >= 0.0 && x <= width && y >= 0.0 && y <= depth; }
};

// Body dimensions. `depth` is carried for completeness; the thin-screen model
// does not use it.
struct BlockerDims
{
    double height = 1.75;
    double width = 0.5;
    double depth = 0.2;
};

struct Blocker
{
    Point3 base_center; // z == 0
    BlockerDims dims;
};

struct LinkGeometry
{
    Point3 endpoint_a;
    Point3 endpoint_b;
    double length = 0.0;
    double elevation = 0.0; // from the vertical, 0 = straight down/up
    double azimuth = 0.0;   // of b as seen from a, [0, 2pi)
};

inline LinkGeometry make_link(Point3 a, Point3 b)
{
    const Point3 d = b - a;
    const double len = norm(d);
    if (!(len > 0.0))
        throw GeometryError("make_link: coincident endpoints");

    LinkGeometry link{a, b, len, 0.0, 0.0};
    link.elevation = std::acos(std::min(1.0, std::abs(d.z) / len));
    double phi = std::atan2(d.y, d.x);
    if (phi < 0.0)
        phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi)
        phi = 0.0;
    link.azimuth = phi;
    return link;
}

// ---- sampling ----------------------------------------------------------

inline void validate_area(const Area &area)
{
    if (!(area.width > 0.0) || !(area.depth > 0.0))
        throw ConfigurationError("area", "width and depth must be positive");
}

// Source and destination, each uniform over the area at `device_height`.
// Draw order: S.x, S.y, D.x, D.y.
template <UnitRandom R>
std::pair<Point3, Point3> sample_devices(R &rng, const Area &area, double device_height)
{
    validate_area(area);
    if (!(device_height > 0.0))
        throw ConfigurationError("device_height", "must be positive");

    Point3 s{area.width * rng.uniform01(), 0.0, device_height};
    s.y = area.depth * rng.uniform01();
    Point3 d{area.width * rng.uniform01(), 0.0, device_height};
    d.y = area.depth * rng.uniform01();
    return {s, d};
}

inline std::size_t blocker_count(double density, const Area &area)
{
    if (!(density >= 0.0) || !std::isfinite(density))
        throw ConfigurationError("blocker_density", "must be finite and >= 0");
    return static_cast<std::size_t>(std::llround(density * area.size()));
}

// Fills `out` with n bodies, two draws each (x then y).
template <UnitRandom R>
void sample_blockers_into(R &rng, const Area &area, std::size_t n, const BlockerDims &dims, std::vector<Blocker> &out)
{
    out.resize(n);
    for (auto &b : out)
    {
        const double x = area.width * rng.uniform01();
        const double y = area.depth * rng.uniform01();
        b = Blocker{{x, y, 0.0}, dims};
    }
}

// round(density * |area|) bodies with i.i.d. uniform base centres. The first
// n bodies of a larger population equal the population sampled at the smaller
// density from the same stream.
template <UnitRandom R>
std::vector<Blocker> sample_blockers(R &rng, const Area &area, double density, const BlockerDims &dims)
{
    validate_area(area);
    std::vector<Blocker> out;
    sample_blockers_into(rng, area, blocker_count(density, area), dims, out);
    return out;
}

// ---- screens -----------------------------------------------------------

struct Screen
{
    Point3 center;      // base centre, on the ground
    double normal_x;    // unit normal in the ground plane
    double normal_y;
    double width;
    double height;

    // Bottom corners at lateral offset -width/2 and +width/2. The lateral axis
    // is the normal rotated by +90 degrees.
    std::pair<Point3, Point3> base_edge() const
    {
        const double tx = -normal_y * 0.5 * width;
        const double ty = normal_x * 0.5 * width;
        return {{center.x - tx, center.y - ty, 0.0}, {center.x + tx, center.y + ty, 0.0}};
    }
};

inline Screen orient_screen(const Blocker &blocker, const LinkGeometry &link)
{
    const double dx = link.endpoint_b.x - link.endpoint_a.x;
    const double dy = link.endpoint_b.y - link.endpoint_a.y;
    const double h = std::hypot(dx, dy);
    Screen s{blocker.base_center, 1.0, 0.0, blocker.dims.width, blocker.dims.height};
    if (h > 0.0)
    {
        s.normal_x = dx / h;
        s.normal_y = dy / h;
    }
    return s;
}

// Ground projection of a link, pre-normalised for bulk footprint tests.
struct GroundRay
{
    double ax = 0.0, ay = 0.0;
    double ux = 1.0, uy = 0.0; // unit direction a -> b
    double length = 0.0;       // horizontal length; 0 for a vertical link

    static GroundRay of(const Point3 &a, const Point3 &b)
    {
        GroundRay g;
        g.ax = a.x;
        g.ay = a.y;
        const double dx = b.x - a.x, dy = b.y - a.y;
        g.length = std::hypot(dx, dy);
        if (g.length > 0.0)
        {
            g.ux = dx / g.length;
            g.uy = dy / g.length;
        }
        return g;
    }
    static GroundRay of(const LinkGeometry &link) { return of(link.endpoint_a, link.endpoint_b); }
};

// Where a ground ray meets a facing screen's footprint.
struct FootprintHit
{
    double along;  // horizontal distance from a to the screen line
    double offset; // lateral position of the screen centre relative to the ray
};

// Crossing must lie strictly between the projected endpoints and strictly
// inside the footprint; ties are misses.
inline std::optional<FootprintHit> footprint_hit(const GroundRay &g, double cx, double cy, double half_width)
{
    if (!(g.length > 0.0))
        return std::nullopt;
    const double rx = cx - g.ax, ry = cy - g.ay;
    const double along = rx * g.ux + ry * g.uy;
    if (!(along > 0.0 && along < g.length))
        return std::nullopt;
    const double offset = ry * g.ux - rx * g.uy;
    if (!(std::abs(offset) < half_width))
        return std::nullopt;
    return FootprintHit{along, offset};
}

// Shortest a -> edge -> b path for one screen edge.
struct EdgePath
{
    double d1 = 0.0;
    double d2 = 0.0;
    bool shadowed = false; // the direct ray lies on the screen side of this edge
};

struct CrossingInfo
{
    double crossing_height = 0.0;
    double crossing_parameter = 0.0; // fraction of the way from a to b
    double direct_distance = 0.0;
    EdgePath side_pos; // lateral edge on the +offset side of the screen centre
    EdgePath side_neg;
    EdgePath top;
    EdgePath bottom;
};

namespace detail
{

// Path over a horizontal edge line perpendicular to the link plane, at
// height `edge_z`. The optimum touches the line inside the link plane.
inline EdgePath horizontal_edge(double along, double rest, double za, double zb, double edge_z)
{
    return {std::hypot(along, edge_z - za), std::hypot(rest, edge_z - zb), false};
}

// Path around a vertical edge line at lateral distance `lat` from the link
// plane. Unfolding the two half-planes about the edge turns the shortest
// path into a straight line of length hypot(rho1 + rho2, zb - za).
inline EdgePath vertical_edge(double along, double rest, double za, double zb, double lat)
{
    const double rho1 = std::hypot(along, lat);
    const double rho2 = std::hypot(rest, lat);
    const double total = std::hypot(rho1 + rho2, zb - za);
    const double f = rho1 / (rho1 + rho2);
    return {f * total, (1.0 - f) * total, false};
}

} // namespace detail

inline std::optional<CrossingInfo> intersect_link_screen(const LinkGeometry &link, const Blocker &blocker)
{
    const GroundRay g = GroundRay::of(link);
    const auto hit = footprint_hit(g, blocker.base_center.x, blocker.base_center.y, 0.5 * blocker.dims.width);
    if (!hit)
        return std::nullopt;

    const double za = link.endpoint_a.z, zb = link.endpoint_b.z;
    const double t = hit->along / g.length;
    const double rest = g.length - hit->along;
    const double h = blocker.dims.height;

    CrossingInfo c;
    c.crossing_parameter = t;
    c.crossing_height = za + (zb - za) * t;
    c.direct_distance = link.length;

    c.top = detail::horizontal_edge(hit->along, rest, za, zb, h);
    c.top.shadowed = c.crossing_height < h;
    c.bottom = detail::horizontal_edge(hit->along, rest, za, zb, 0.0);
    c.bottom.shadowed = c.crossing_height > 0.0;

    const double half = 0.5 * blocker.dims.width;
    const double pos = hit->offset + half; // > 0 for any footprint hit
    const double neg = hit->offset - half; // < 0 for any footprint hit
    c.side_pos = detail::vertical_edge(hit->along, rest, za, zb, pos);
    c.side_pos.shadowed = pos > 0.0;
    c.side_neg = detail::vertical_edge(hit->along, rest, za, zb, neg);
    c.side_neg.shadowed = neg < 0.0;
    return c;
}

inline bool is_los_shadowed(const LinkGeometry &link, const Blocker &blocker)
{
    const auto c = intersect_link_screen(link, blocker);
    return c && c->crossing_height < blocker.dims.height;
}

} // namespace aris
