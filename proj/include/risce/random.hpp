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

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace risce {

using cplx = std::complex<double>;

/// Seeded random stream. Wraps mt19937_64 and converts its raw output
/// itself, so draws are identical on every standard library (the
/// std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, both outputs used).
  double normal();
  /// Circularly-symmetric complex Gaussian with E|x|^2 = variance.
  cplx complex_gaussian(double variance = 1.0);
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finaliser; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Derives a child seed from a parent seed and a list of indices.
template <class... Ix>
std::uint64_t derive_seed(std::uint64_t parent, Ix... idx) {
  std::uint64_t s = mix_seed(parent);
  ((s = mix_seed(s ^ mix_seed(static_cast<std::uint64_t>(idx) + 0x9e3779b97f4a7c15ULL))), ...);
  return s;
}

}  // namespace risce
