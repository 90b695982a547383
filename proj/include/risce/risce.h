/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 The risce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the RIS channel-estimation benchmark library.
 *
 * Objects are opaque handles created by the load, parse and run functions and
 * released with the matching free function. Every fallible call returns a
 * risce_status; on failure a description is available from
 * risce_last_error() on the same thread until the next failing call.
 * Strings returned through char** out-parameters are owned by the caller
 * and released with risce_string_free().
 */

#ifndef RISCE_H
#define RISCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RISCE_BUILDING_LIBRARY)
#    define RISCE_API __declspec(dllexport)
#  else
#    define RISCE_API __declspec(dllimport)
#  endif
#else
#  define RISCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum risce_status {
  RISCE_OK = 0,
  RISCE_ERR_CONFIG = 1,   /* invalid config, schema violation, bad file */
  RISCE_ERR_RUNTIME = 2,  /* simulation or I/O failure */
  RISCE_ERR_ARGUMENT = 3  /* null handle, index out of range */
} risce_status;

typedef struct risce_config risce_config;
typedef struct risce_report risce_report;

typedef struct risce_report_row {
  const char* scheme; /* valid while the report lives */
  double snr_db;      /* +inf for the noiseless point */
  double nmse_mean;   /* NaN when every trial failed */
  double nmse_stderr;
  int trials;
  int failures;
  long long raw_slots;
  double amortized_slots;
  long long traced_slots; /* slots the simulator spent per trial, -1 if unknown */
} risce_report_row;

typedef struct risce_overhead_row {
  const char* scheme;
  long long unknowns;
  long long raw_slots;
  double amortized_slots;
} risce_overhead_row;

RISCE_API const char* risce_version(void);
RISCE_API const char* risce_last_error(void);
RISCE_API const char* risce_snr_convention(void);
RISCE_API void risce_string_free(char* s);

/* Simulated schemes, in canonical order. */
RISCE_API size_t risce_scheme_count(void);
RISCE_API const char* risce_scheme_name(size_t index);

/* Configs */
RISCE_API risce_status risce_config_load(const char* path, risce_config** out);
RISCE_API risce_status risce_config_parse(const char* json_text, risce_config** out);
RISCE_API void risce_config_free(risce_config* cfg);
RISCE_API risce_status risce_config_set_seed(risce_config* cfg, uint64_t seed);
RISCE_API risce_status risce_config_get_seed(const risce_config* cfg, uint64_t* seed);
RISCE_API risce_status risce_config_to_json(const risce_config* cfg, char** out);

/* Overhead table: one row per configured scheme, no simulation. */
RISCE_API risce_status risce_overhead_count(const risce_config* cfg, size_t* count);
RISCE_API risce_status risce_overhead_row_get(const risce_config* cfg, size_t index,
                                              risce_overhead_row* out);

/* Monte-Carlo runs. parallelism <= 0 picks the machine default; results do
 * not depend on it. */
RISCE_API risce_status risce_run(const risce_config* cfg, int parallelism, risce_report** out);
RISCE_API void risce_report_free(risce_report* report);
RISCE_API risce_status risce_report_row_count(const risce_report* report, size_t* count);
RISCE_API risce_status risce_report_row_get(const risce_report* report, size_t index,
                                            risce_report_row* out);
RISCE_API risce_status risce_report_to_csv(const risce_report* report, char** out);
RISCE_API risce_status risce_report_to_json(const risce_report* report, char** out);
RISCE_API risce_status risce_report_write(const risce_report* report, const char* path,
                                          const char* format /* "csv" or "json" */);

#ifdef __cplusplus
}
#endif

#endif /* RISCE_H */
