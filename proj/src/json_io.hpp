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

// Internal JSON helpers shared by the config, fixture and report writers.
// Complex scalars are [re, im]; matrices are row-major nested arrays.

#pragma once

#include <json.hpp>

#include "risce/bench.hpp"
#include "risce/channel.hpp"

namespace risce::detail {

using nlohmann::json;

json encode(cplx z);
json encode(const CVector& v);
json encode(const CMatrix& A);

/// `where` names the field in error messages.
cplx decode_complex(const json& j, const std::string& where);
CVector decode_vector(const json& j, const std::string& where);
CMatrix decode_matrix(const json& j, const std::string& where);

json encode_snr(double snr_db);
json config_json(const ExperimentConfig& cfg);

}  // namespace risce::detail
