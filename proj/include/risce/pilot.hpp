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

// RIS reflection schedules and synthesis of received pilot observations,
// both for ordinary uplink pilots and for the full-duplex dual-link
// (BS -> RIS -> BS) pilots used to learn G.
//
// Pilot symbols are always s = 1. Users are time-orthogonal, so every
// observation belongs to a single user.

#pragma once

#include <string_view>
#include <vector>

#include "risce/channel.hpp"

namespace risce {

/// RIS coefficients for one slot; theta_n = beta_n exp(i phi_n), |theta_n| <= 1.
/// OFF elements are exact zeros.
class ReflectionVector {
 public:
  /// Throws ConfigError if any |theta_n| exceeds 1 (beyond rounding).
  explicit ReflectionVector(CVector theta);

  const CVector& theta() const noexcept { return theta_; }
  int size() const noexcept { return static_cast<int>(theta_.size()); }
  bool all_off() const { return theta_.isZero(0.0); }

 private:
  CVector theta_;
};

enum class ScheduleKind { onoff, dft, random_phase, custom };

std::string_view to_string(ScheduleKind kind);

/// Sequence of reflection vectors, one per pilot slot.
class ReflectionSchedule {
 public:
  ReflectionSchedule(ScheduleKind kind, std::vector<ReflectionVector> vectors);

  ScheduleKind kind() const noexcept { return kind_; }
  int slots() const noexcept { return static_cast<int>(vectors_.size()); }
  int elements() const noexcept { return vectors_.empty() ? 0 : vectors_.front().size(); }
  const ReflectionVector& operator[](int t) const { return vectors_.at(t); }
  const std::vector<ReflectionVector>& vectors() const noexcept { return vectors_; }

  /// T x N matrix whose row t is theta_t^T.
  CMatrix stacked() const;
  bool all_off() const;

 private:
  ScheduleKind kind_;
  std::vector<ReflectionVector> vectors_;
};

struct NoiseConfig {
  double sigma2_w = 0.0;  ///< receiver noise variance per complex sample
  double sigma2_z = 0.0;  ///< residual self-interference variance (dual-link)
  void validate() const;
};

/// Received uplink pilots of one user: column t of Y belongs to slot t.
struct PilotObservation {
  CMatrix Y;
  ReflectionSchedule schedule;
  CVector pilots;
  int user = 0;
};

/// Dual-link samples y[m1][m2][t] for transmit antenna m1, receive antenna
/// m2 != m1 and sub-frame t.
class DualLinkObservation {
 public:
  DualLinkObservation(int M, ReflectionSchedule schedule);

  int antennas() const noexcept { return M_; }
  int subframes() const noexcept { return schedule_.slots(); }
  const ReflectionSchedule& schedule() const noexcept { return schedule_; }

  /// Throws std::out_of_range for m1 == m2 (an antenna does not receive
  /// its own transmission).
  cplx sample(int m1, int m2, int t) const { return data_[index(m1, m2, t)]; }
  cplx& sample(int m1, int m2, int t) { return data_[index(m1, m2, t)]; }
  cplx pilot(int /*m1*/, int /*t*/) const { return {1.0, 0.0}; }

  /// Pilot slots spent: one per (sub-frame, transmit antenna).
  int slots() const noexcept { return subframes() * M_; }
  /// Sum of |y|^2 over all samples.
  double energy() const;

 private:
  std::size_t index(int m1, int m2, int t) const;

  int M_;
  ReflectionSchedule schedule_;
  std::vector<cplx> data_;
};

/// T = N slots, slot n turns on element n only.
ReflectionSchedule schedule_onoff(int N);

/// T = N slots, slot t is column t of the unnormalized N x N DFT matrix.
ReflectionSchedule schedule_dft(int N);

/// First `T` columns of the unnormalized N-point DFT matrix (T <= N).
/// Tagged custom since it is not a complete DFT schedule.
ReflectionSchedule schedule_dft_prefix(int T, int N);

/// T slots of i.i.d. unit-modulus entries with uniform phase.
ReflectionSchedule schedule_random_phase(int T, int N, Rng& rng);

/// T slots with every element OFF (direct-channel pilots).
ReflectionSchedule schedule_off(int T, int N);

/// Default dual-link schedule: the N DFT columns followed by the
/// all-ones vector, N + 1 sub-frames in total.
ReflectionSchedule schedule_dual_link_default(int N);

/// Joins schedules slot-wise; the result is tagged custom unless `kind` is given.
ReflectionSchedule concat(const ReflectionSchedule& a, const ReflectionSchedule& b);

/// Matrix of i.i.d. CN(0, variance) entries; exactly zero for variance 0
/// (no draws are consumed in that case).
CMatrix complex_noise(int rows, int cols, double variance, Rng& rng);

/// Y[:, t] = (h_d + H theta_t) s_t + w_t, given the cascaded channel.
PilotObservation simulate_uplink(const CVector& h_d, const CMatrix& H,
                                 const ReflectionSchedule& schedule, const NoiseConfig& noise,
                                 Rng& rng, int user = 0);

/// Same as above for user k of a channel set.
PilotObservation simulate_uplink(const ChannelSet& chan, int k,
                                 const ReflectionSchedule& schedule, const NoiseConfig& noise,
                                 Rng& rng);

/// y[m1][m2][t] = (g_m2^T diag(theta_t) g_m1 + z[m1][m2]) s + w, with g_m
/// the m-th row of G. z is drawn once per ordered antenna pair, w per
/// sample. Requires exactly N + 1 sub-frames.
DualLinkObservation simulate_dual_link(const CMatrix& G, const ReflectionSchedule& schedule,
                                       const NoiseConfig& noise, Rng& rng);

/// Expected per-antenna received power E|h_d,m + (H theta)_m|^2 with all
/// elements ON, for the channel statistics used by the generators.
double nominal_rx_power(int N, double direct_variance = 1.0, double reflect_variance = 1.0);

/// sigma2_w such that SNR = E||(h_d + H theta) s||^2 / (M sigma2_w) equals
/// the given value in dB. +inf yields 0 (noiseless).
double noise_variance_for_snr(double snr_db, double rx_power_per_antenna);

}  // namespace risce
