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

#include "risce/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "risce/error.hpp"

namespace risce {

namespace {

std::string dims_str(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Partial Fisher-Yates: `count` distinct indices from [0, n).
std::vector<int> draw_distinct(int n, int count, Rng& rng) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

void SystemDims::validate() const {
  if (M < 1 || N < 1 || K < 1) {
    throw ConfigError("system dimensions must be positive (M=" + std::to_string(M) +
                      ", N=" + std::to_string(N) + ", K=" + std::to_string(K) + ")");
  }
}

void ChannelSet::validate() const {
  dims.validate();
  if (G.rows() != dims.M || G.cols() != dims.N) {
    throw ShapeError("G is " + dims_str(G.rows(), G.cols()) + ", expected " +
                     dims_str(dims.M, dims.N));
  }
  if (static_cast<int>(h_d.size()) != dims.K || static_cast<int>(h_r.size()) != dims.K) {
    throw ShapeError("channel set must hold K=" + std::to_string(dims.K) + " users");
  }
  for (int k = 0; k < dims.K; ++k) {
    if (h_d[k].size() != dims.M) throw ShapeError("h_d[" + std::to_string(k) + "] has wrong length");
    if (h_r[k].size() != dims.N) throw ShapeError("h_r[" + std::to_string(k) + "] has wrong length");
    if (!h_d[k].allFinite() || !h_r[k].allFinite()) throw ShapeError("non-finite channel entry");
  }
  if (!G.allFinite()) throw ShapeError("non-finite channel entry in G");
}

AngularDictionary AngularDictionary::for_dims(int M, int N) {
  return {dft_dictionary(M), dft_dictionary(N)};
}

void GeometricPathConfig::validate(const SystemDims& dims) const {
  if (L_G < 1 || L_r < 1) {
    throw ConfigError("path counts must be positive (L_G=" + std::to_string(L_G) +
                      ", L_r=" + std::to_string(L_r) + ")");
  }
  if (!(gain_variance > 0.0) || !std::isfinite(gain_variance)) {
    throw ConfigError("gain_variance must be positive");
  }
  if (on_grid && (L_G > std::min(dims.M, dims.N) || L_r > dims.N)) {
    throw ConfigError("on-grid path counts exceed the angular grid (L_G <= min(M, N), L_r <= N)");
  }
}

void GroupingConfig::validate(int N) const {
  if (B < 1 || N % B != 0) {
    throw ConfigError("group size B=" + std::to_string(B) + " must divide N=" + std::to_string(N));
  }
}

CascadedChannel cascaded_channel(const CMatrix& G, const CVector& h_r) {
  if (G.cols() != h_r.size()) {
    throw ShapeError("cascaded_channel: G is " + dims_str(G.rows(), G.cols()) +
                     " but h_r has length " + std::to_string(h_r.size()));
  }
  return CascadedChannel(G * h_r.asDiagonal());
}

CascadedChannel cascaded_channel(const ChannelSet& chan, int k) {
  if (k < 0 || k >= chan.dims.K) throw ShapeError("user index out of range");
  return cascaded_channel(chan.G, chan.h_r[k]);
}

ChannelSet gen_rayleigh(const SystemDims& dims, Rng& rng) {
  dims.validate();
  ChannelSet c;
  c.dims = dims;
  c.G.resize(dims.M, dims.N);
  for (int n = 0; n < dims.N; ++n)
    for (int m = 0; m < dims.M; ++m) c.G(m, n) = rng.complex_gaussian();
  for (int k = 0; k < dims.K; ++k) {
    CVector hd(dims.M), hr(dims.N);
    for (auto& x : hd) x = rng.complex_gaussian();
    for (auto& x : hr) x = rng.complex_gaussian();
    c.h_d.push_back(std::move(hd));
    c.h_r.push_back(std::move(hr));
  }
  return c;
}

ChannelSet gen_geometric(const SystemDims& dims, const GeometricPathConfig& paths, Rng& rng) {
  dims.validate();
  paths.validate(dims);
  const int M = dims.M, N = dims.N;

  auto angles = [&](int n, int count) {
    std::vector<double> psi(count);
    if (paths.on_grid) {
      const auto idx = draw_distinct(n, count, rng);
      for (int i = 0; i < count; ++i) psi[i] = static_cast<double>(idx[i]) / n;
    } else {
      for (auto& p : psi) p = rng.uniform();
    }
    return psi;
  };

  ChannelSet c;
  c.dims = dims;
  c.G = CMatrix::Zero(M, N);
  const auto bs_psi = angles(M, paths.L_G);
  const auto ris_psi = angles(N, paths.L_G);
  const double g_scale = std::sqrt(static_cast<double>(M) * N / paths.L_G);
  for (int l = 0; l < paths.L_G; ++l) {
    const cplx alpha = rng.complex_gaussian(paths.gain_variance);
    c.G += (g_scale * alpha) * steering_vector(M, bs_psi[l]) *
           steering_vector(N, ris_psi[l]).transpose();
  }

  const double r_scale = std::sqrt(static_cast<double>(N) / paths.L_r);
  for (int k = 0; k < dims.K; ++k) {
    CVector hd(M);
    for (auto& x : hd) x = rng.complex_gaussian();
    CVector hr = CVector::Zero(N);
    for (double psi : angles(N, paths.L_r)) {
      hr += (r_scale * rng.complex_gaussian(paths.gain_variance)) * steering_vector(N, psi);
    }
    c.h_d.push_back(std::move(hd));
    c.h_r.push_back(std::move(hr));
  }
  return c;
}

CMatrix dft_dictionary(int n) {
  if (n < 1) throw ConfigError("dictionary size must be positive");
  CMatrix U(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // Reduce the exponent modulo n first so large indices stay exact.
      const auto e = static_cast<double>((static_cast<long long>(a) * b) % n);
      U(a, b) = std::polar(scale, -2.0 * std::numbers::pi * e / n);
    }
  }
  return U;
}

CVector steering_vector(int n, double psi) {
  CVector a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    // i * psi is wrapped to [0, 1) so on-grid values hit the DFT entries.
    double phase = static_cast<double>(i) * psi;
    phase -= std::floor(phase);
    a(i) = std::polar(scale, -2.0 * std::numbers::pi * phase);
  }
  return a;
}

CMatrix to_angular(const CascadedChannel& H, const AngularDictionary& dict) {
  if (dict.U_M.rows() != H.rows() || dict.U_N.rows() != H.cols()) {
    throw ShapeError("to_angular: dictionary does not match a " + dims_str(H.rows(), H.cols()) +
                     " channel");
  }
  return dict.U_M.adjoint() * H.matrix() * dict.U_N.conjugate();
}

CascadedChannel from_angular(const CMatrix& H_ang, const AngularDictionary& dict) {
  if (dict.U_M.rows() != H_ang.rows() || dict.U_N.rows() != H_ang.cols()) {
    throw ShapeError("from_angular: dictionary does not match a " +
                     dims_str(H_ang.rows(), H_ang.cols()) + " angular channel");
  }
  return CascadedChannel(dict.U_M * H_ang * dict.U_N.transpose());
}

CMatrix group_reduce(const CascadedChannel& H, const GroupingConfig& cfg) {
  cfg.validate(H.cols());
  const int groups = H.cols() / cfg.B;
  CMatrix R(H.rows(), groups);
  for (int j = 0; j < groups; ++j) {
    R.col(j) = H.matrix().middleCols(j * cfg.B, cfg.B).rowwise().sum();
  }
  return R;
}

int count_nonzero(const CMatrix& A, double threshold) {
  return static_cast<int>((A.array().abs() > threshold).count());
}

}  // namespace risce
