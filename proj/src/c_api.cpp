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

#include "risce/risce.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "risce/bench.hpp"
#include "risce/config.hpp"
#include "risce/error.hpp"

struct risce_config {
  risce::ExperimentConfig cfg;
};

struct risce_report {
  risce::NmseReport report;
};

namespace {

thread_local std::string g_last_error;

risce_status fail(risce_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Maps library exceptions onto status codes.
template <class F>
risce_status guarded(F&& f) {
  try {
    return f();
  } catch (const risce::ConfigError& e) {
    return fail(RISCE_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(RISCE_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(RISCE_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

risce_status give_string(const std::string& s, char** out) {
  *out = dup_string(s);
  return *out ? RISCE_OK : fail(RISCE_ERR_RUNTIME, "out of memory");
}

const char* scheme_cstr(risce::Scheme s) {
  // string_views from to_string point at literals, so data() is terminated.
  return risce::to_string(s).data();
}

}  // namespace

extern "C" {

const char* risce_version(void) { return risce::kVersion.data(); }

const char* risce_last_error(void) { return g_last_error.c_str(); }

const char* risce_snr_convention(void) { return risce::kSnrConvention.data(); }

void risce_string_free(char* s) { std::free(s); }

size_t risce_scheme_count(void) { return risce::runnable_schemes().size(); }

const char* risce_scheme_name(size_t index) {
  const auto& all = risce::runnable_schemes();
  return index < all.size() ? scheme_cstr(all[index]) : nullptr;
}

risce_status risce_config_load(const char* path, risce_config** out) {
  if (!path || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new risce_config{risce::parse_config(path)};
    return RISCE_OK;
  });
}

risce_status risce_config_parse(const char* json_text, risce_config** out) {
  if (!json_text || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new risce_config{risce::parse_config_string(json_text)};
    return RISCE_OK;
  });
}

void risce_config_free(risce_config* cfg) { delete cfg; }

risce_status risce_config_set_seed(risce_config* cfg, uint64_t seed) {
  if (!cfg) return fail(RISCE_ERR_ARGUMENT, "null config");
  cfg->cfg.seed = seed;
  return RISCE_OK;
}

risce_status risce_config_get_seed(const risce_config* cfg, uint64_t* seed) {
  if (!cfg || !seed) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *seed = cfg->cfg.seed;
  return RISCE_OK;
}

risce_status risce_config_to_json(const risce_config* cfg, char** out) {
  if (!cfg || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(risce::config_to_json(cfg->cfg), out); });
}

risce_status risce_overhead_count(const risce_config* cfg, size_t* count) {
  if (!cfg || !count) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *count = cfg->cfg.schemes.size();
  return RISCE_OK;
}

risce_status risce_overhead_row_get(const risce_config* cfg, size_t index, risce_overhead_row* out) {
  if (!cfg || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  if (index >= cfg->cfg.schemes.size()) return fail(RISCE_ERR_ARGUMENT, "overhead row index out of range");
  return guarded([&] {
    const auto& c = cfg->cfg;
    const auto scheme = c.schemes[index];
    const auto params = c.overhead_params();
    const auto o = risce::pilot_overhead(c.dims, scheme, params);
    out->scheme = scheme_cstr(scheme);
    out->unknowns = risce::count_unknowns(c.dims, scheme, params.group_size);
    out->raw_slots = o.raw;
    out->amortized_slots = o.amortized;
    return RISCE_OK;
  });
}

risce_status risce_run(const risce_config* cfg, int parallelism, risce_report** out) {
  if (!cfg || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    risce::RunOptions opts;
    opts.parallelism = parallelism > 0 ? parallelism : 0;
    *out = new risce_report{risce::run_monte_carlo(cfg->cfg, opts)};
    return RISCE_OK;
  });
}

void risce_report_free(risce_report* report) { delete report; }

risce_status risce_report_row_count(const risce_report* report, size_t* count) {
  if (!report || !count) return fail(RISCE_ERR_ARGUMENT, "null argument");
  *count = report->report.rows.size();
  return RISCE_OK;
}

risce_status risce_report_row_get(const risce_report* report, size_t index, risce_report_row* out) {
  if (!report || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  if (index >= report->report.rows.size()) return fail(RISCE_ERR_ARGUMENT, "report row index out of range");
  const auto& r = report->report.rows[index];
  out->scheme = scheme_cstr(r.scheme);
  out->snr_db = r.snr_db;
  out->nmse_mean = r.nmse_mean;
  out->nmse_stderr = r.nmse_stderr;
  out->trials = r.trials;
  out->failures = r.failures;
  out->raw_slots = r.raw_slots;
  out->amortized_slots = r.amortized_slots;
  out->traced_slots = r.traced_slots;
  return RISCE_OK;
}

risce_status risce_report_to_csv(const risce_report* report, char** out) {
  if (!report || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(risce::report_to_csv(report->report), out); });
}

risce_status risce_report_to_json(const risce_report* report, char** out) {
  if (!report || !out) return fail(RISCE_ERR_ARGUMENT, "null argument");
  return guarded([&] { return give_string(risce::report_to_json(report->report), out); });
}

risce_status risce_report_write(const risce_report* report, const char* path, const char* format) {
  if (!report || !path || !format) return fail(RISCE_ERR_ARGUMENT, "null argument");
  std::string text;
  if (std::strcmp(format, "csv") == 0) {
    text = risce::report_to_csv(report->report);
  } else if (std::strcmp(format, "json") == 0) {
    text = risce::report_to_json(report->report);
  } else {
    return fail(RISCE_ERR_ARGUMENT, std::string("unknown output format \"") + format + "\"");
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return fail(RISCE_ERR_RUNTIME, std::string(path) + ": cannot open for writing");
  f << text;
  f.close();
  if (!f) return fail(RISCE_ERR_RUNTIME, std::string(path) + ": write failed");
  return RISCE_OK;
}

}  // extern "C"
