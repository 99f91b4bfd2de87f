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

#include <stdexcept>
#include <string>
#include <utility>

namespace aris
{

// A parameter is outside its valid range. `field()` names the offending
// parameter using the dotted config path where one exists.
class ConfigurationError : public std::invalid_argument
{
  public:
    ConfigurationError(std::string field, const std::string &message)
        : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

// The parameters are individually valid but describe an impossible scenario,
// e.g. a reflector outside the service area or level with the devices.
class PhysicsError : public ConfigurationError
{
  public:
    using ConfigurationError::ConfigurationError;
};

// Degenerate or inconsistent geometry (coincident endpoints, negative
// diffraction detour, beam at or beyond the horizon).
class GeometryError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

} // namespace aris
