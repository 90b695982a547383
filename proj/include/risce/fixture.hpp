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

// JSON channel fixtures.
//
//   {
//     "dims": {"M": 2, "N": 3, "K": 1},
//     "h_d": [ [[re, im], [re, im]] ],               // K vectors of length M
//     "G":   [ [[re, im], ...], [[re, im], ...] ],   // M rows of N entries
//     "h_r": [ [[re, im], [re, im], [re, im]] ]      // K vectors of length N
//   }
//
// Estimates use the same encoding; they carry whichever of "h_d", "G",
// "h_r" and the cascaded "H" (M rows of N entries) the estimator produced.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "risce/channel.hpp"
#include "risce/estimators.hpp"
#include "risce/pilot.hpp"

namespace risce {

std::string channel_set_to_json(const ChannelSet& chan, int indent = 2);

/// Throws ShapeError / ConfigError on malformed input.
ChannelSet channel_set_from_json(std::string_view text);

void save_channel_set(const ChannelSet& chan, const std::filesystem::path& path);
ChannelSet load_channel_set(const std::filesystem::path& path);

std::string estimate_to_json(const ChannelEstimate& est, int indent = 2);

/// Debug dump: received samples "Y" (M rows of T), schedule "theta"
/// (T rows of N), schedule kind and user index.
std::string observation_to_json(const PilotObservation& obs, int indent = 2);

}  // namespace risce
