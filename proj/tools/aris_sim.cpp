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
// aris_sim: command-line driver.
//
//   aris_sim run  [--config FILE] [overrides] [--out run.csv]
//   aris_sim fig4 [--config FILE] [overrides] [--out fig4.csv]
//   aris_sim fig5 ...   aris_sim fig6 ...
//
// Exit codes: 0 ok, 2 config/schema error, 3 physics error, 4 runtime failure.

#include "aris/config.hpp"
#include "aris/report.hpp"
#include "aris/simulation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

enum ExitCode
{
    kOk = 0,
    kConfigError = 2,
    kPhysicsError = 3,
    kRuntimeError = 4,
};

struct Overrides
{
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> density;
    std::optional<double> clearance;
    std::optional<std::string> mode;
    std::optional<std::vector<double>> densities;
    std::optional<unsigned> workers;
    bool progress = false;
};

void add_common(CLI::App *cmd, Overrides &o, const std::string &default_out)
{
    o.out = default_out;
    cmd->add_option("-c,--config", o.config_path, "Scenario file (JSON) or run manifest");
    cmd->add_option("-o,--out", o.out, "CSV output path; the manifest is written beside it")->capture_default_str();
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--seed", o.seed, "64-bit seed");
    cmd->add_option("-w,--workers", o.workers, "Worker threads (default: $ARIS_SIM_WORKERS or all cores)");
    cmd->add_flag("--progress", o.progress, "Print a trial counter on stderr");
}

aris::ScenarioFile resolve_config(const Overrides &o)
{
    aris::ScenarioFile f = o.config_path.empty() ? aris::scenario_from_json(nlohmann::json::object())
                                                 : aris::load_scenario_file(o.config_path);
    nlohmann::json j = aris::to_json(f);
    if (o.trials)
        j["trials"] = *o.trials;
    if (o.seed)
        j["seed"] = *o.seed;
    if (o.density)
        j["blocker_density"] = *o.density;
    if (o.clearance)
        j["aris_clearance"] = *o.clearance;
    if (o.mode)
        j["mode"] = *o.mode;
    if (o.densities)
        j["sweep"]["densities"] = *o.densities;
    // re-read so overrides get the same validation as file values
    return aris::scenario_from_json(j);
}

aris::RunOptions run_options(const Overrides &o)
{
    aris::RunOptions opts;
    if (o.workers)
        opts.workers = *o.workers;
    else if (const char *env = std::getenv("ARIS_SIM_WORKERS"))
        opts.workers = unsigned(std::strtoul(env, nullptr, 10));
    if (o.progress)
        opts.progress = [](std::uint64_t done, std::uint64_t total) {
            std::cerr << "\r" << done << "/" << total << " trials" << (done == total ? "\n" : "") << std::flush;
        };
    return opts;
}

void write_outputs(const std::string &command, const aris::ScenarioFile &cfg, const std::vector<std::string> &rows,
                   const std::string &out, double seconds)
{
    {
        std::ofstream csv(out, std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot write " + out);
        csv << aris::kCsvHeader << '\n';
        for (const auto &r : rows)
            csv << r << '\n';
    }
    const auto manifest_path = aris::manifest_path_for(out);
    aris::RunManifest m{command, cfg, seconds, {out}};
    std::ofstream mf(manifest_path);
    if (!mf)
        throw std::runtime_error("cannot write " + manifest_path.string());
    mf << aris::to_json(m).dump(2) << '\n';
}

std::vector<std::string> cmd_run(const aris::ScenarioFile &f, const aris::RunOptions &opts)
{
    const auto m = aris::run_scenario(f.scenario, opts);
    return {aris::csv_row("density", f.scenario.blocker_density, m)};
}

std::vector<std::string> cmd_fig4(const aris::ScenarioFile &f, const aris::RunOptions &opts)
{
    const auto values = f.sweep.density.values();
    std::vector<aris::ScenarioPoint> pts;
    for (double v : values)
    {
        pts.push_back({aris::LinkMode::with_aris, v, f.sweep.fig4_clearance});
        pts.push_back({aris::LinkMode::without_aris, v, f.sweep.fig4_clearance});
    }
    const auto res = aris::run_points(f.scenario, pts, opts);
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < pts.size(); ++i)
        rows.push_back(aris::csv_row("density", pts[i].density, res[i]));
    return rows;
}

std::vector<std::string> cmd_height(const aris::ScenarioFile &f, const aris::RunOptions &opts, bool flag_optimum)
{
    const auto values = f.sweep.clearance.values();
    std::vector<aris::ScenarioPoint> pts;
    for (double b : f.sweep.densities)
        for (double v : values)
            pts.push_back({aris::LinkMode::with_aris, b, v});
    const auto res = aris::run_points(f.scenario, pts, opts);

    std::vector<std::string> rows;
    for (std::size_t k = 0; k < f.sweep.densities.size(); ++k)
    {
        std::vector<aris::SweepResult> curve;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const auto &m = res[k * values.size() + i];
            rows.push_back(aris::csv_row("clearance", values[i], m));
            curve.push_back({values[i], m});
        }
        if (flag_optimum)
        {
            const auto best = aris::argmax_se(curve);
            rows.push_back(aris::csv_row("optimum", curve[best].value, curve[best].summary));
        }
    }
    return rows;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Monte Carlo human-blockage simulator for aerial-RIS assisted D2D mmWave links"};
    app.require_subcommand(1);

    Overrides run_o, fig4_o, fig5_o, fig6_o;
    auto *run = app.add_subcommand("run", "Evaluate one scenario point");
    add_common(run, run_o, "run.csv");
    run->add_option("--density", run_o.density, "Blocker density (bodies/m^2)");
    run->add_option("--clearance", run_o.clearance, "Reflector height above the device plane (m)");
    run->add_option("--mode", run_o.mode, "with_aris | without_aris");

    auto *fig4 = app.add_subcommand("fig4", "Density sweep with and without the reflector");
    add_common(fig4, fig4_o, "fig4.csv");
    auto *fig5 = app.add_subcommand("fig5", "Blockage probability versus reflector height");
    add_common(fig5, fig5_o, "fig5.csv");
    fig5->add_option("--densities", fig5_o.densities, "Blocker densities to sweep");
    auto *fig6 = app.add_subcommand("fig6", "Spectral efficiency versus reflector height, optimum flagged");
    add_common(fig6, fig6_o, "fig6.csv");
    fig6->add_option("--densities", fig6_o.densities, "Blocker densities to sweep");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    const Overrides &o = run->parsed() ? run_o : fig4->parsed() ? fig4_o : fig5->parsed() ? fig5_o : fig6_o;
    const std::string command = run->parsed() ? "run" : fig4->parsed() ? "fig4" : fig5->parsed() ? "fig5" : "fig6";

    try
    {
        const auto cfg = resolve_config(o);
        const auto opts = run_options(o);
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> rows;
        if (command == "run")
            rows = cmd_run(cfg, opts);
        else if (command == "fig4")
            rows = cmd_fig4(cfg, opts);
        else
            rows = cmd_height(cfg, opts, command == "fig6");
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_outputs(command, cfg, rows, o.out, secs);
        return kOk;
    }
    catch (const aris::PhysicsError &e)
    {
        std::cerr << "physics error: " << e.what() << '\n';
        return kPhysicsError;
    }
    catch (const aris::ConfigurationError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const aris::GeometryError &e)
    {
        std::cerr << "physics error: " << e.what() << '\n';
        return kPhysicsError;
    }
    catch (const std::exception &e)
    {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
