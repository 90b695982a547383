// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The risce Authors
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

// Experiment configuration files (JSON).
//
//   {
//     "dims": {"M": 8, "N": 32, "K": 4},
//     "model": "rayleigh" | "geometric",
//     "paths": {"L_G": 2, "L_r": 2, "on_grid": true, "gain_variance": 1.0},
//     "schemes": ["onoff", "dft", "correlation", "omp", "two_timescale"],
//     "grouping": {"B": 2},
//     "snr_db": [0, 10, "inf"],
//     "trials": 100,
//     "seed": 1,
//     "T_d": 1,
//     "P": 100,
//     "omp": {"S": 4, "T": 8}            or {"epsilon": 1e-6, "T": 8},
//     "coord_descent": {"max_sweeps": 200, "rel_tol": 1e-8, "restarts": 5}
//   }
//
// dims, model, schemes, snr_db, trials and seed are required; paths is
// required for the geometric model and omp when "omp" is listed. Unknown
// keys are rejected at every level.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "risce/bench.hpp"

namespace risce {

/// Reads and validates a config file. Throws ConfigError naming the file
/// and the offending field (or line/column for malformed JSON).
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Same, from a JSON document in memory; `source` prefixes diagnostics.
ExperimentConfig parse_config_string(std::string_view text, std::string_view source = "<config>");

/// Canonical JSON form of a config (all defaults spelled out).
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);

}  // namespace risce
