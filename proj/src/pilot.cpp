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

#include "risce/pilot.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "risce/error.hpp"

namespace risce {

namespace {

constexpr double kModulusSlack = 1e-12;

cplx dft_entry(int a, int b, int n) {
  const auto e = static_cast<double>((static_cast<long long>(a) * b) % n);
  return std::polar(1.0, -2.0 * std::numbers::pi * e / n);
}

}  // namespace

ReflectionVector::ReflectionVector(CVector theta) : theta_(std::move(theta)) {
  for (Eigen::Index n = 0; n < theta_.size(); ++n) {
    const double mag = std::abs(theta_(n));
    if (!std::isfinite(mag) || mag > 1.0 + kModulusSlack) {
      throw ConfigError("reflection coefficient " + std::to_string(n) +
                        " has modulus above 1");
    }
  }
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::onoff: return "onoff";
    case ScheduleKind::dft: return "dft";
    case ScheduleKind::random_phase: return "random_phase";
    case ScheduleKind::custom: return "custom";
  }
  return "custom";
}

ReflectionSchedule::ReflectionSchedule(ScheduleKind kind, std::vector<ReflectionVector> vectors)
    : kind_(kind), vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw ConfigError("a reflection schedule needs at least one slot");
  const int n = vectors_.front().size();
  for (const auto& v : vectors_) {
    if (v.size() != n) throw ShapeError("reflection vectors of unequal length in schedule");
  }
}

CMatrix ReflectionSchedule::stacked() const {
  CMatrix Theta(slots(), elements());
  for (int t = 0; t < slots(); ++t) Theta.row(t) = vectors_[t].theta().transpose();
  return Theta;
}

bool ReflectionSchedule::all_off() const {
  for (const auto& v : vectors_)
    if (!v.all_off()) return false;
  return true;
}

void NoiseConfig::validate() const {
  if (!(sigma2_w >= 0.0) || !(sigma2_z >= 0.0) || !std::isfinite(sigma2_w) ||
      !std::isfinite(sigma2_z)) {
    throw ConfigError("noise variances must be finite and non-negative");
  }
}

DualLinkObservation::DualLinkObservation(int M, ReflectionSchedule schedule)
    : M_(M), schedule_(std::move(schedule)),
      data_(static_cast<std::size_t>(M) * M * schedule_.slots()) {}

std::size_t DualLinkObservation::index(int m1, int m2, int t) const {
  if (m1 < 0 || m2 < 0 || m1 >= M_ || m2 >= M_ || t < 0 || t >= subframes() || m1 == m2) {
    throw std::out_of_range("dual-link sample index out of range");
  }
  return (static_cast<std::size_t>(t) * M_ + m1) * M_ + m2;
}

double DualLinkObservation::energy() const {
  double e = 0.0;
  for (int t = 0; t < subframes(); ++t)
    for (int m1 = 0; m1 < M_; ++m1)
      for (int m2 = 0; m2 < M_; ++m2)
        if (m1 != m2) e += std::norm(sample(m1, m2, t));
  return e;
}

ReflectionSchedule schedule_onoff(int N) {
  if (N < 1) throw ConfigError("schedule_onoff: N must be positive");
  std::vector<ReflectionVector> v;
  v.reserve(N);
  for (int n = 0; n < N; ++n) v.emplace_back(CVector::Unit(N, n));
  return {ScheduleKind::onoff, std::move(v)};
}

ReflectionSchedule schedule_dft(int N) {
  if (N < 1) throw ConfigError("schedule_dft: N must be positive");
  auto s = schedule_dft_prefix(N, N);
  return {ScheduleKind::dft, s.vectors()};
}

ReflectionSchedule schedule_dft_prefix(int T, int N) {
  if (N < 1 || T < 1 || T > N) throw ConfigError("schedule_dft_prefix: need 1 <= T <= N");
  std::vector<ReflectionVector> v;
  v.reserve(T);
  for (int t = 0; t < T; ++t) {
    CVector theta(N);
    for (int n = 0; n < N; ++n) theta(n) = dft_entry(n, t, N);
    v.emplace_back(std::move(theta));
  }
  return {ScheduleKind::custom, std::move(v)};
}

ReflectionSchedule schedule_random_phase(int T, int N, Rng& rng) {
  if (T < 1 || N < 1) throw ConfigError("schedule_random_phase: T and N must be positive");
  std::vector<ReflectionVector> v;
  v.reserve(T);
  for (int t = 0; t < T; ++t) {
    CVector theta(N);
    for (auto& x : theta) x = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    v.emplace_back(std::move(theta));
  }
  return {ScheduleKind::random_phase, std::move(v)};
}

ReflectionSchedule schedule_off(int T, int N) {
  if (T < 1 || N < 1) throw ConfigError("schedule_off: T and N must be positive");
  return {ScheduleKind::custom, std::vector<ReflectionVector>(T, ReflectionVector(CVector::Zero(N)))};
}

ReflectionSchedule schedule_dual_link_default(int N) {
  auto v = schedule_dft(N).vectors();
  v.emplace_back(CVector::Ones(N));
  return {ScheduleKind::custom, std::move(v)};
}

ReflectionSchedule concat(const ReflectionSchedule& a, const ReflectionSchedule& b) {
  auto v = a.vectors();
  v.insert(v.end(), b.vectors().begin(), b.vectors().end());
  return {ScheduleKind::custom, std::move(v)};
}

CMatrix complex_noise(int rows, int cols, double variance, Rng& rng) {
  CMatrix W = CMatrix::Zero(rows, cols);
  if (variance == 0.0) return W;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) W(r, c) = rng.complex_gaussian(variance);
  return W;
}

PilotObservation simulate_uplink(const CVector& h_d, const CMatrix& H,
                                 const ReflectionSchedule& schedule, const NoiseConfig& noise,
                                 Rng& rng, int user) {
  noise.validate();
  if (h_d.size() != H.rows() || schedule.elements() != H.cols()) {
    throw ShapeError("simulate_uplink: channel is " + std::to_string(H.rows()) + "x" +
                     std::to_string(H.cols()) + ", schedule has " +
                     std::to_string(schedule.elements()) + " elements");
  }
  const int T = schedule.slots();
  CVector pilots = CVector::Ones(T);
  CMatrix Y(H.rows(), T);
  for (int t = 0; t < T; ++t) Y.col(t) = (h_d + H * schedule[t].theta()) * pilots(t);
  Y += complex_noise(static_cast<int>(H.rows()), T, noise.sigma2_w, rng);
  return {std::move(Y), schedule, std::move(pilots), user};
}

PilotObservation simulate_uplink(const ChannelSet& chan, int k,
                                 const ReflectionSchedule& schedule, const NoiseConfig& noise,
                                 Rng& rng) {
  const auto H = cascaded_channel(chan, k);
  return simulate_uplink(chan.h_d.at(k), H.matrix(), schedule, noise, rng, k);
}

DualLinkObservation simulate_dual_link(const CMatrix& G, const ReflectionSchedule& schedule,
                                       const NoiseConfig& noise, Rng& rng) {
  noise.validate();
  const int M = static_cast<int>(G.rows());
  const int N = static_cast<int>(G.cols());
  if (schedule.elements() != N) throw ShapeError("simulate_dual_link: schedule length != N");
  if (schedule.slots() != N + 1) {
    throw ConfigError("simulate_dual_link: expected N+1=" + std::to_string(N + 1) +
                      " sub-frames, got " + std::to_string(schedule.slots()));
  }

  // Self-interference: one constant per ordered antenna pair.
  CMatrix Z = CMatrix::Zero(M, M);
  if (noise.sigma2_z > 0.0) {
    for (int m1 = 0; m1 < M; ++m1)
      for (int m2 = 0; m2 < M; ++m2)
        if (m1 != m2) Z(m1, m2) = rng.complex_gaussian(noise.sigma2_z);
  }

  DualLinkObservation obs(M, schedule);
  for (int t = 0; t < schedule.slots(); ++t) {
    const CVector& theta = schedule[t].theta();
    for (int m1 = 0; m1 < M; ++m1) {
      const cplx s = obs.pilot(m1, t);
      for (int m2 = 0; m2 < M; ++m2) {
        if (m1 == m2) continue;
        cplx v = (G.row(m2).transpose().array() * theta.array() * G.row(m1).transpose().array()).sum();
        v = (v + Z(m1, m2)) * s;
        if (noise.sigma2_w > 0.0) v += rng.complex_gaussian(noise.sigma2_w);
        obs.sample(m1, m2, t) = v;
      }
    }
  }
  return obs;
}

double nominal_rx_power(int N, double direct_variance, double reflect_variance) {
  return direct_variance + static_cast<double>(N) * reflect_variance;
}

double noise_variance_for_snr(double snr_db, double rx_power_per_antenna) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  if (!std::isfinite(snr_db)) throw ConfigError("SNR must be finite or +inf");
  return rx_power_per_antenna / std::pow(10.0, snr_db / 10.0);
}

}  // namespace risce
