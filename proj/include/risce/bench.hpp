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

// Metrics, pilot-overhead accounting and the Monte-Carlo experiment runner.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risce/channel.hpp"
#include "risce/estimators.hpp"

namespace risce {

inline constexpr std::string_view kVersion = "0.1.0";

/// Printed with every report.
inline constexpr std::string_view kSnrConvention =
    "SNR = E||(h_d + H theta) s||^2 / (M sigma2_w) with all RIS elements ON (|theta_n| = 1), "
    "i.e. sigma2_w = (E|h_d,m|^2 + N E|H_mn|^2) / 10^(snr_db/10); snr_db = inf means noiseless";

// ---------------------------------------------------------------------------
// Metrics

enum class Alignment { none, column_sign };

/// Flips the sign of each column of H_est that is closer to -H_true.
CMatrix align_column_signs(const CMatrix& H_true, const CMatrix& H_est);

/// ||H_true - H_est||_F^2 / ||H_true||_F^2 after optional column-sign
/// alignment. Throws UndefinedMetricError for a zero H_true.
double nmse(const CMatrix& H_true, const CMatrix& H_est, Alignment alignment = Alignment::none);

/// ||H theta||^2, the power of the effective reflecting link.
double effective_power(const CMatrix& H, const CVector& theta);

// ---------------------------------------------------------------------------
// Overhead accounting

enum class Scheme { onoff, dft, correlation, omp, two_timescale, conventional };

std::string_view to_string(Scheme s);
/// Throws ConfigError for an unknown name.
Scheme scheme_from_string(std::string_view name);
/// The schemes the runner can simulate, in canonical order.
const std::vector<Scheme>& runnable_schemes();

/// Complex channel coefficients one user has to estimate. For correlation
/// this is the count of a non-typical user (k >= 2).
long long count_unknowns(const SystemDims& dims, Scheme scheme, int group_size = 1);

struct OverheadParams {
  int K = 1;
  int T_d = 1;
  int P = 100;
  int omp_slots = 0;   ///< T of the OMP random-phase schedule
  int group_size = 1;  ///< sub-surface size B; N is replaced by N / B
};

struct Overhead {
  long long raw = 0;       ///< slots for one full estimation of all K users
  double amortized = 0.0;  ///< slots per coherence block
};

Overhead pilot_overhead(const SystemDims& dims, Scheme scheme, const OverheadParams& params);

// ---------------------------------------------------------------------------
// Experiments

enum class ChannelModel { rayleigh, geometric };

struct OmpConfig {
  std::optional<int> S;
  std::optional<double> epsilon;
  int T = 0;
};

struct ExperimentConfig {
  SystemDims dims;
  ChannelModel model = ChannelModel::rayleigh;
  GeometricPathConfig paths;
  std::vector<Scheme> schemes;
  std::vector<double> snr_db;  ///< +inf is the noiseless point
  int trials = 1;
  std::uint64_t seed = 0;
  int T_d = 1;  ///< direct-channel slots; 0 treats h_d as known
  int P = 100;
  std::optional<GroupingConfig> grouping;
  std::optional<OmpConfig> omp;
  CoordDescentOptions coord_descent;

  /// Throws ConfigError.
  void validate() const;
  OverheadParams overhead_params() const;
};

struct ReportRow {
  Scheme scheme = Scheme::dft;
  double snr_db = 0.0;
  double nmse_mean = 0.0;
  double nmse_stderr = 0.0;
  int trials = 0;
  int failures = 0;
  long long raw_slots = 0;
  double amortized_slots = 0.0;
  /// Slots the simulator actually spent per trial (-1 if every trial failed).
  long long traced_slots = -1;
  std::string first_failure;
};

struct NmseReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;  ///< scheme-major, then SNR in config order
};

struct RunOptions {
  int parallelism = 0;  ///< worker threads; 0 picks hardware_concurrency
};

/// Result of one (scheme, SNR, trial) task.
struct TrialOutcome {
  bool ok = false;
  double nmse = 0.0;
  long long slots = 0;
  std::string failure;
};

/// Runs a single trial with its own seed. Exposed for tests.
TrialOutcome run_trial(const ExperimentConfig& cfg, Scheme scheme, int snr_index, int trial);

/// Seed of trial `trial` of `scheme` at SNR index `snr_index`.
std::uint64_t trial_seed(std::uint64_t seed, Scheme scheme, int snr_index, int trial);

/// Every (scheme, SNR, trial) task, aggregated deterministically; results do
/// not depend on RunOptions.
NmseReport run_monte_carlo(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Flat CSV: scheme,snr_db,nmse_mean,nmse_stderr,trials,failures,raw_slots,amortized_slots.
std::string report_to_csv(const NmseReport& report);
/// Full JSON report with metadata.
std::string report_to_json(const NmseReport& report);

/// 17 significant digits (lossless for doubles); "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_number(double v);

}  // namespace risce
