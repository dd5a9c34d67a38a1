// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <string>

#include "qsense/table.hpp"

// Scenario configuration front end. Configs are JSON documents with one
// section per concern (model, probe, sequence, target, spam, noise, plus
// subcommand-specific parameters). Quantities carry units: a bare number
// means MHz for frequencies, ns for times and degrees for angles; a string
// like "11.2 MHz", "30 ns" or "0.5 rad" selects the unit explicitly.
// Unknown keys anywhere are rejected.

namespace qsense::cli {

enum class Subcommand {
    IdealQfim,
    RotatedOptimum,
    NvSweep,
    Scaling,
    Compare,
    Maps,
    ProjectionVsShot,
};

/// Maps the command-line name ("ideal-qfim", "nv-sweep", ...) to the enum.
/// Throws ConfigError on an unknown name.
Subcommand parse_subcommand(const std::string& name);

/// Loads and validates the JSON config, runs the experiment, and returns the
/// result table. Throws ConfigError for schema/unit problems and propagates
/// pipeline errors (e.g. SingularJacobian).
Table run_scenario(Subcommand sub, const std::string& config_path, std::uint64_t seed);

}  // namespace qsense::cli
