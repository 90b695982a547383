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

#include <string>

#include "risce/bench.hpp"
#include "risce/error.hpp"

namespace risce {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

int effective_elements(const SystemDims& dims, int group_size) {
  GroupingConfig{group_size}.validate(dims.N);
  return dims.N / group_size;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::onoff: return "onoff";
    case Scheme::dft: return "dft";
    case Scheme::correlation: return "correlation";
    case Scheme::omp: return "omp";
    case Scheme::two_timescale: return "two_timescale";
    case Scheme::conventional: return "conventional";
  }
  return "?";
}

Scheme scheme_from_string(std::string_view name) {
  for (Scheme s : {Scheme::onoff, Scheme::dft, Scheme::correlation, Scheme::omp,
                   Scheme::two_timescale, Scheme::conventional}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme \"" + std::string(name) + "\"");
}

const std::vector<Scheme>& runnable_schemes() {
  static const std::vector<Scheme> all{Scheme::onoff, Scheme::dft, Scheme::correlation,
                                       Scheme::omp, Scheme::two_timescale};
  return all;
}

long long count_unknowns(const SystemDims& dims, Scheme scheme, int group_size) {
  dims.validate();
  const long long M = dims.M;
  const long long N = effective_elements(dims, group_size);
  switch (scheme) {
    case Scheme::onoff:
    case Scheme::dft:
    case Scheme::omp: return M * N;
    case Scheme::correlation: return N;
    case Scheme::two_timescale: return M * N + M + N;
    case Scheme::conventional: return M;
  }
  throw ConfigError("count_unknowns: invalid scheme");
}

Overhead pilot_overhead(const SystemDims& dims, Scheme scheme, const OverheadParams& p) {
  dims.validate();
  if (p.K < 1 || p.T_d < 0 || p.P < 1) throw ConfigError("pilot_overhead: need K >= 1, T_d >= 0, P >= 1");
  const long long M = dims.M;
  const long long N = effective_elements(dims, p.group_size);
  const long long K = p.K;
  const long long Td = p.T_d;

  Overhead o;
  switch (scheme) {
    case Scheme::onoff:
    case Scheme::dft:
      o.raw = K * (Td + N);
      break;
    case Scheme::correlation:
      o.raw = K * Td + N + (K - 1) * ceil_div(N, M);
      break;
    case Scheme::omp:
      if (p.omp_slots < 1) throw ConfigError("pilot_overhead: omp needs its slot count T");
      o.raw = K * (Td + p.omp_slots);
      break;
    case Scheme::two_timescale: {
      const long long large = (N + 1) * M;
      const long long small = K * (Td + 1 + ceil_div(N, M));
      o.raw = large + small;
      o.amortized = static_cast<double>(large) / static_cast<double>(p.P) + static_cast<double>(small);
      return o;
    }
    case Scheme::conventional:
      o.raw = K * (Td > 0 ? Td : 1);
      break;
  }
  o.amortized = static_cast<double>(o.raw);
  return o;
}

}  // namespace risce
