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

#include <cmath>
#include <cstdio>

#include "json_io.hpp"
#include "risce/bench.hpp"

namespace risce {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_csv(const NmseReport& report) {
  std::string out = "scheme,snr_db,nmse_mean,nmse_stderr,trials,failures,raw_slots,amortized_slots\n";
  for (const auto& r : report.rows) {
    out += to_string(r.scheme);
    out += ',' + format_number(r.snr_db);
    out += ',' + format_number(r.nmse_mean);
    out += ',' + format_number(r.nmse_stderr);
    out += ',' + std::to_string(r.trials);
    out += ',' + std::to_string(r.failures);
    out += ',' + std::to_string(r.raw_slots);
    out += ',' + format_number(r.amortized_slots);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const NmseReport& report) {
  using detail::json;
  auto num = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return format_number(v);
  };
  json j;
  j["metadata"] = {{"artifact", "risce"},
                   {"version", std::string(kVersion)},
                   {"seed", report.config.seed},
                   {"snr_convention", std::string(kSnrConvention)},
                   {"config", detail::config_json(report.config)}};
  j["results"] = json::array();
  for (const auto& r : report.rows) {
    json row = {{"scheme", std::string(to_string(r.scheme))},
                {"snr_db", detail::encode_snr(r.snr_db)},
                {"nmse_mean", num(r.nmse_mean)},
                {"nmse_stderr", num(r.nmse_stderr)},
                {"trials", r.trials},
                {"failures", r.failures},
                {"raw_slots", r.raw_slots},
                {"amortized_slots", r.amortized_slots},
                {"traced_slots", r.traced_slots}};
    if (!r.first_failure.empty()) row["first_failure"] = r.first_failure;
    j["results"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace risce
