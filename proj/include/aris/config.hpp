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
// JSON scenario files. Every key is optional and falls back to the built-in
// default; unknown keys are rejected with their dotted path. See
// docs/config.md for the field-by-field schema.

#pragma once

#include "aris/errors.hpp"
#include "aris/simulation.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace aris
{

struct GridSpec
{
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const { return linear_grid(start, stop, step); }
};

struct SweepSpec
{
    GridSpec density{0.1, 2.0, 0.1};
    GridSpec clearance{2.0, 40.0, 1.0};
    std::vector<double> densities{0.5, 1.0, 1.5}; // height sweeps run at each
    double fig4_clearance = 13.0;
};

struct ScenarioFile
{
    ScenarioConfig scenario;
    SweepSpec sweep;
};

namespace detail
{

// Walks one JSON object, remembering which keys were consumed.
class ObjectReader
{
  public:
    ObjectReader(const nlohmann::json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigurationError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string child_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    void number(const std::string &key, double &out)
    {
        if (const auto *v = take(key))
        {
            if (!v->is_number())
                throw ConfigurationError(child_path(key), "expected a number");
            out = v->get<double>();
        }
    }

    void unsigned_integer(const std::string &key, std::uint64_t &out)
    {
        if (const auto *v = take(key))
        {
            if (!v->is_number_unsigned())
                throw ConfigurationError(child_path(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void boolean(const std::string &key, bool &out)
    {
        if (const auto *v = take(key))
        {
            if (!v->is_boolean())
                throw ConfigurationError(child_path(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    template <typename Enum>
    void choice(const std::string &key, Enum &out, std::initializer_list<std::pair<const char *, Enum>> options)
    {
        if (const auto *v = take(key))
        {
            if (v->is_string())
                for (const auto &[name, value] : options)
                    if (v->get<std::string>() == name)
                    {
                        out = value;
                        return;
                    }
            std::string names;
            for (const auto &[name, value] : options)
                names += (names.empty() ? "" : ", ") + std::string(name);
            throw ConfigurationError(child_path(key), "expected one of: " + names);
        }
    }

    void number_list(const std::string &key, std::vector<double> &out)
    {
        if (const auto *v = take(key))
        {
            if (!v->is_array())
                throw ConfigurationError(child_path(key), "expected an array of numbers");
            out.clear();
            for (const auto &e : *v)
            {
                if (!e.is_number())
                    throw ConfigurationError(child_path(key), "expected an array of numbers");
                out.push_back(e.get<double>());
            }
        }
    }

    void object(const std::string &key, const std::function<void(ObjectReader &)> &fn)
    {
        if (const auto *v = take(key))
        {
            ObjectReader sub(*v, child_path(key));
            fn(sub);
            sub.finish();
        }
    }

    void finish() const
    {
        for (const auto &item : j_.items())
            if (!seen_.count(item.key()))
                throw ConfigurationError(child_path(item.key()), "unknown key");
    }

  private:
    const nlohmann::json *take(const std::string &key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const nlohmann::json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline void read_grid(ObjectReader &r, GridSpec &g)
{
    r.number("start", g.start);
    r.number("stop", g.stop);
    r.number("step", g.step);
}

} // namespace detail

// Parses and validates. Schema and range problems raise ConfigurationError;
// physically impossible combinations raise PhysicsError.
inline ScenarioFile scenario_from_json(const nlohmann::json &j, ScenarioFile f = {})
{
    detail::ObjectReader root(j, "");
    ScenarioConfig &c = f.scenario;

    root.object("area", [&](auto &r) {
        r.number("width", c.area.width);
        r.number("depth", c.area.depth);
    });
    root.number("device_height", c.device_height);
    root.object("aris_xy", [&](auto &r) {
        r.number("x", c.aris_x);
        r.number("y", c.aris_y);
    });
    root.number("aris_clearance", c.aris_clearance);
    root.object("radio", [&](auto &r) {
        r.number("tx_power_w", c.radio.tx_power_w);
        r.number("tx_gain_db", c.radio.tx_gain_db);
        r.number("rx_gain_db", c.radio.rx_gain_db);
        r.number("frequency_hz", c.radio.frequency_hz);
        r.number("reflection_amplitude", c.radio.reflection_amplitude);
        r.number("noise_power_dbm", c.radio.noise_power_dbm);
    });
    root.object("channel", [&](auto &r) {
        r.boolean("explicit_tx_gain", c.channel.explicit_tx_gain);
        r.number("path_loss_exponent", c.channel.path_loss_exponent);
    });
    root.object("blocker_dims", [&](auto &r) {
        r.number("height", c.blocker_dims.height);
        r.number("width", c.blocker_dims.width);
        r.number("depth", c.blocker_dims.depth);
    });
    root.number("blocker_density", c.blocker_density);
    root.object("blockage_params", [&](auto &r) {
        r.choice("mode", c.blockage.mode,
                 {{"knife_edge", BlockageMode::knife_edge}, {"fixed_loss", BlockageMode::fixed_loss}});
        r.number("fixed_loss_db", c.blockage.fixed_loss_db);
        r.number("loss_floor_db", c.blockage.loss_floor_db);
    });
    root.choice("mode", c.mode, {{"with_aris", LinkMode::with_aris}, {"without_aris", LinkMode::without_aris}});
    root.choice("blocked_rule", c.blocked_rule,
                {{"any_hop", ArisBlockedRule::any_hop}, {"both_hops", ArisBlockedRule::both_hops}});
    root.unsigned_integer("trials", c.trials);
    root.unsigned_integer("seed", c.seed);
    root.object("sweep", [&](auto &r) {
        r.object("density", [&](auto &g) { detail::read_grid(g, f.sweep.density); });
        r.object("clearance", [&](auto &g) { detail::read_grid(g, f.sweep.clearance); });
        r.number_list("densities", f.sweep.densities);
        r.number("fig4_clearance", f.sweep.fig4_clearance);
    });
    root.finish();

    validate(c);
    for (double d : f.sweep.densities)
        if (!(d >= 0.0))
            throw ConfigurationError("sweep.densities", "densities must be >= 0");
    if (!(f.sweep.fig4_clearance > 0.0))
        throw PhysicsError("sweep.fig4_clearance", "must be > 0");
    return f;
}

inline nlohmann::json to_json(const ScenarioFile &f)
{
    const ScenarioConfig &c = f.scenario;
    using nlohmann::json;
    auto grid = [](const GridSpec &g) { return json{{"start", g.start}, {"stop", g.stop}, {"step", g.step}}; };
    return json{
        {"area", {{"width", c.area.width}, {"depth", c.area.depth}}},
        {"device_height", c.device_height},
        {"aris_xy", {{"x", c.aris_x}, {"y", c.aris_y}}},
        {"aris_clearance", c.aris_clearance},
        {"radio",
         {{"tx_power_w", c.radio.tx_power_w},
          {"tx_gain_db", c.radio.tx_gain_db},
          {"rx_gain_db", c.radio.rx_gain_db},
          {"frequency_hz", c.radio.frequency_hz},
          {"reflection_amplitude", c.radio.reflection_amplitude},
          {"noise_power_dbm", c.radio.noise_power_dbm}}},
        {"channel",
         {{"explicit_tx_gain", c.channel.explicit_tx_gain}, {"path_loss_exponent", c.channel.path_loss_exponent}}},
        {"blocker_dims",
         {{"height", c.blocker_dims.height}, {"width", c.blocker_dims.width}, {"depth", c.blocker_dims.depth}}},
        {"blocker_density", c.blocker_density},
        {"blockage_params",
         {{"mode", c.blockage.mode == BlockageMode::knife_edge ? "knife_edge" : "fixed_loss"},
          {"fixed_loss_db", c.blockage.fixed_loss_db},
          {"loss_floor_db", c.blockage.loss_floor_db}}},
        {"mode", std::string(to_string(c.mode))},
        {"blocked_rule", c.blocked_rule == ArisBlockedRule::any_hop ? "any_hop" : "both_hops"},
        {"trials", c.trials},
        {"seed", c.seed},
        {"sweep",
         {{"density", grid(f.sweep.density)},
          {"clearance", grid(f.sweep.clearance)},
          {"densities", f.sweep.densities},
          {"fig4_clearance", f.sweep.fig4_clearance}}},
    };
}

// Reads a scenario file. A run manifest is accepted too; its echoed config
// is used.
inline ScenarioFile load_scenario_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("<file>", "cannot open " + path);
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigurationError("<file>", std::string("JSON parse error: ") + e.what());
    }
    if (j.is_object() && j.contains("manifest_version") && j.contains("config"))
        return scenario_from_json(j["config"]);
    return scenario_from_json(j);
}

} // namespace aris
