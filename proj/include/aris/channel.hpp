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
// Link budgets for the direct device-to-device path and for the path
// reflected by an aerial RIS.
//
// The reflected path is a beam model: the RIS re-radiates a Gaussian-like
// beam whose Rayleigh length is set by the source's gain and the source-RIS distance,
//
//   Z_R = 4 k d_sr^2 / G_t
//   S_r = (2 P_t / (lambda Z_R)) |R|^2
//         / sqrt((1 + d_rd^2 / Z_R^2) (1 + d_rd^2 / (Z_R^2 cos^4 theta)))
//   P_r = A_r S_r,   A_r = G_r lambda^2 / (4 pi)
//
// theta is measured from the RIS broadside, which faces straight down.

#pragma once

#include "aris/errors.hpp"

#include <cmath>
#include <numbers>

namespace aris
{

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct RadioParams
{
    double tx_power_w = 1.0;
    double tx_gain_db = 45.0;
    double rx_gain_db = 20.0;
    double frequency_hz = 60e9;
    double reflection_amplitude = 0.9;
    double noise_power_dbm = -70.0;
};

// Sensitivity knobs; the defaults reproduce the plain formulas.
struct ChannelOptions
{
    bool explicit_tx_gain = false;    // multiply S_r by G_t
    double path_loss_exponent = 2.0;  // direct link only
};

inline void validate(const RadioParams &r)
{
    if (!(r.tx_power_w > 0.0))
        throw ConfigurationError("radio.tx_power_w", "must be > 0");
    if (!(r.frequency_hz > 0.0))
        throw ConfigurationError("radio.frequency_hz", "must be > 0");
    if (!(r.reflection_amplitude > 0.0 && r.reflection_amplitude <= 1.0))
        throw ConfigurationError("radio.reflection_amplitude", "must lie in (0, 1]");
    if (!std::isfinite(r.tx_gain_db) || !std::isfinite(r.rx_gain_db) || !std::isfinite(r.noise_power_dbm))
        throw ConfigurationError("radio", "gains and noise power must be finite");
}

inline double wavelength(double frequency_hz)
{
    if (!(frequency_hz > 0.0))
        throw ConfigurationError("radio.frequency_hz", "must be > 0");
    return kSpeedOfLight / frequency_hz;
}

inline double wavenumber(double frequency_hz) { return 2.0 * std::numbers::pi / wavelength(frequency_hz); }

inline double effective_aperture(double rx_gain_db, double wavelength_m)
{
    return db_to_linear(rx_gain_db) * wavelength_m * wavelength_m / (4.0 * std::numbers::pi);
}

inline double rayleigh_length(double d_s_aris, double tx_gain_db, double frequency_hz)
{
    return 4.0 * wavenumber(frequency_hz) * d_s_aris * d_s_aris / db_to_linear(tx_gain_db);
}

struct ArisLinkInputs
{
    double d_s_aris = 0.0;
    double d_aris_d = 0.0;
    double theta_aris_d = 0.0;
};

struct LinkBudgetResult
{
    double rx_power_w = 0.0;
    double rx_power_dbm = 0.0;
    double snr_linear = 0.0;
    double spectral_efficiency = 0.0;

    double wavelength_m = 0.0;
    double wavenumber = 0.0;
    double rayleigh_length_m = 0.0;     // reflected path only
    double effective_aperture_m2 = 0.0; // reflected path only
    double power_density_w_m2 = 0.0;    // reflected path only
};

inline void finish_budget(LinkBudgetResult &b, double noise_dbm)
{
    b.rx_power_dbm = watts_to_dbm(b.rx_power_w);
    b.snr_linear = b.rx_power_w / dbm_to_watts(noise_dbm);
    b.spectral_efficiency = std::log2(1.0 + b.snr_linear);
}

inline double aris_power_density(const RadioParams &radio, const ArisLinkInputs &in, const ChannelOptions &opt = {})
{
    if (!(in.d_s_aris > 0.0) || !(in.d_aris_d > 0.0))
        throw GeometryError("aris_power_density: distances must be positive");
    if (!(in.theta_aris_d >= 0.0 && in.theta_aris_d < 0.5 * std::numbers::pi))
        throw GeometryError("aris_power_density: reflected beam at or beyond the horizon");
    const double c = std::cos(in.theta_aris_d);
    const double c4 = c * c * c * c;
    if (!(c4 > 0.0))
        throw GeometryError("aris_power_density: cos^4(theta) underflows");

    const double lam = wavelength(radio.frequency_hz);
    const double zr = rayleigh_length(in.d_s_aris, radio.tx_gain_db, radio.frequency_hz);
    const double q = (in.d_aris_d * in.d_aris_d) / (zr * zr);
    const double amp2 = radio.reflection_amplitude * radio.reflection_amplitude;
    double s = (2.0 * radio.tx_power_w / (lam * zr)) * amp2 / std::sqrt((1.0 + q) * (1.0 + q / c4));
    if (opt.explicit_tx_gain)
        s *= db_to_linear(radio.tx_gain_db);
    return s;
}

inline LinkBudgetResult aris_rx_power(const RadioParams &radio, const ArisLinkInputs &in, const ChannelOptions &opt = {})
{
    LinkBudgetResult b;
    b.wavelength_m = wavelength(radio.frequency_hz);
    b.wavenumber = 2.0 * std::numbers::pi / b.wavelength_m;
    b.rayleigh_length_m = rayleigh_length(in.d_s_aris, radio.tx_gain_db, radio.frequency_hz);
    b.effective_aperture_m2 = effective_aperture(radio.rx_gain_db, b.wavelength_m);
    b.power_density_w_m2 = aris_power_density(radio, in, opt);
    b.rx_power_w = b.effective_aperture_m2 * b.power_density_w_m2;
    finish_budget(b, radio.noise_power_dbm);
    return b;
}

// Free-space Friis, optionally with a path-loss exponent other than 2:
// P_r = P_t G_t G_r (lambda / 4pi)^2 / d^n.
inline LinkBudgetResult friis_rx_power(const RadioParams &radio, double distance_m, const ChannelOptions &opt = {})
{
    if (!(distance_m > 0.0))
        throw GeometryError("friis_rx_power: distance must be positive");
    LinkBudgetResult b;
    b.wavelength_m = wavelength(radio.frequency_hz);
    b.wavenumber = 2.0 * std::numbers::pi / b.wavelength_m;
    const double g = db_to_linear(radio.tx_gain_db) * db_to_linear(radio.rx_gain_db);
    const double k = b.wavelength_m / (4.0 * std::numbers::pi);
    const double spread =
        opt.path_loss_exponent == 2.0 ? distance_m * distance_m : std::pow(distance_m, opt.path_loss_exponent);
    b.rx_power_w = radio.tx_power_w * g * k * k / spread;
    finish_budget(b, radio.noise_power_dbm);
    return b;
}

inline LinkBudgetResult apply_loss_and_se(LinkBudgetResult budget, double blockage_loss_db, double noise_dbm)
{
    if (!(blockage_loss_db >= 0.0))
        throw ConfigurationError("blockage_loss_db", "must be >= 0");
    if (blockage_loss_db > 0.0)
        budget.rx_power_w /= std::pow(10.0, blockage_loss_db / 10.0);
    finish_budget(budget, noise_dbm);
    return budget;
}

} // namespace aris
