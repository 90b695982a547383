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

#include "risce/error.hpp"
#include "risce/estimators.hpp"

namespace risce {

double TwoTimescaleResult::amortized_slots() const {
  return static_cast<double>(large_slots) / periods + small_slots;
}

TwoTimescaleResult two_timescale_pipeline(const ChannelSet& chan, const NoiseConfig& noise,
                                          const TwoTimescaleOptions& opts, Rng& rng) {
  chan.validate();
  if (opts.periods < 1) throw ConfigError("two-timescale: periods must be >= 1");
  if (opts.direct_slots < 0) throw ConfigError("two-timescale: direct_slots must be >= 0");
  const int M = chan.dims.M;
  const int N = chan.dims.N;

  TwoTimescaleResult out;
  out.periods = opts.periods;

  // Large timescale: once per period.
  const auto dual = simulate_dual_link(chan.G, schedule_dual_link_default(N), noise, rng);
  out.large = estimate_g_coord_descent(dual, opts.coord_descent, rng);
  out.large_slots = dual.slots();

  // Small timescale: every coherence block. Random phases keep every
  // element's coefficient varying across slots; an element held constant
  // would be indistinguishable from h_d.
  auto schedule = schedule_random_phase(small_timescale_slots(M, N), N, rng);
  if (opts.direct_slots > 0) schedule = concat(schedule_off(opts.direct_slots, N), schedule);
  const auto obs = simulate_uplink(chan, opts.user, schedule, noise, rng);
  const auto small = estimate_small_timescale_ls(obs, out.large.G_hat);
  out.small_slots = schedule.slots();

  out.estimate.scheme = "two_timescale";
  out.estimate.G_hat = out.large.G_hat;
  out.estimate.h_d_hat = small.h_d_hat;
  out.estimate.h_r_hat = small.h_r_hat;
  out.estimate.H_hat = CMatrix(out.large.G_hat * small.h_r_hat.asDiagonal());
  out.estimate.slots = out.large_slots + out.small_slots;
  return out;
}

}  // namespace risce
