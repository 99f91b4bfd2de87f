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

#pragma once

#include "aris/config.hpp"
#include "aris/simulation.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aris
{

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr std::string_view kCsvHeader =
    "axis,value,mode,density_bl_m2,clearance_m,blockage_prob,mean_se_bpshz,se_ci95,trials,seed";

// 6 significant digits, printf %g style.
inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// `axis` is "density", "clearance" or "optimum"; the optimum row repeats the
// best point of the preceding clearance block.
inline std::string csv_row(std::string_view axis, double value, const MetricsSummary &m)
{
    std::string s;
    s += axis;
    s += ',' + format_number(value);
    s += ',';
    s += to_string(m.config.mode);
    s += ',' + format_number(m.config.blocker_density);
    s += ',' + format_number(m.config.aris_clearance);
    s += ',' + format_number(m.blockage_probability);
    s += ',' + format_number(m.mean_se);
    s += ',' + format_number(m.se_ci95_halfwidth);
    s += ',' + std::to_string(m.trials);
    s += ',' + std::to_string(m.seed);
    return s;
}

inline std::filesystem::path manifest_path_for(const std::filesystem::path &csv)
{
    std::filesystem::path p = csv;
    p.replace_extension(".manifest.json");
    return p;
}

struct RunManifest
{
    std::string command;
    ScenarioFile config;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
};

inline nlohmann::json to_json(const RunManifest &m)
{
    return nlohmann::json{
        {"manifest_version", 1},
        {"tool", "aris_sim"},
        {"tool_version", std::string(kToolVersion)},
        {"command", m.command},
        {"seed", m.config.scenario.seed},
        {"wall_seconds", m.wall_seconds},
        {"outputs", m.outputs},
        {"config", to_json(m.config)},
    };
}

} // namespace aris
