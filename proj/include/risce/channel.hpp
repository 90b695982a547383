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

// System geometry, ground-truth channel realizations and the transforms
// between the spatial and angular (virtual) channel representations.
//
// Conventions: the BS has M antennas, the RIS N elements, and there are K
// single-antenna users. Angles are expressed as normalized spatial
// frequencies in [0, 1); both arrays are uniform linear arrays, so the
// angular dictionaries are 1-D DFT matrices.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "risce/random.hpp"

namespace risce {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Problem geometry: M BS antennas, N RIS elements, K users.
struct SystemDims {
  int M = 1;
  int N = 1;
  int K = 1;

  /// Throws ConfigError unless M, N, K >= 1.
  void validate() const;
  bool operator==(const SystemDims&) const = default;
};

/// Ground-truth realization: per-user direct channels h_d (M), the shared
/// RIS->BS channel G (M x N) and per-user user->RIS channels h_r (N).
struct ChannelSet {
  SystemDims dims;
  std::vector<CVector> h_d;
  CMatrix G;
  std::vector<CVector> h_r;

  /// Shape and finiteness check; throws ShapeError.
  void validate() const;
};

/// H = G diag(h_r). Column n is the channel seen through RIS element n.
class CascadedChannel {
 public:
  CascadedChannel() = default;
  explicit CascadedChannel(CMatrix H) : H_(std::move(H)) {}

  const CMatrix& matrix() const noexcept { return H_; }
  int rows() const noexcept { return static_cast<int>(H_.rows()); }
  int cols() const noexcept { return static_cast<int>(H_.cols()); }
  auto column(int n) const { return H_.col(n); }

 private:
  CMatrix H_;
};

/// Unitary DFT dictionaries for the BS (M x M) and the RIS (N x N).
struct AngularDictionary {
  CMatrix U_M;
  CMatrix U_N;

  static AngularDictionary for_dims(int M, int N);
};

struct GeometricPathConfig {
  int L_G = 1;   ///< RIS->BS paths
  int L_r = 1;   ///< user->RIS paths
  bool on_grid = true;
  double gain_variance = 1.0;

  /// Throws ConfigError on non-positive counts/variance, or when on-grid
  /// angles cannot be drawn without replacement (L_G > min(M, N), L_r > N).
  void validate(const SystemDims& dims) const;
};

/// Sub-surface grouping: B consecutive RIS elements share one coefficient.
struct GroupingConfig {
  int B = 1;
  void validate(int N) const;
};

CascadedChannel cascaded_channel(const CMatrix& G, const CVector& h_r);

/// Cascaded channel of user k in a channel set.
CascadedChannel cascaded_channel(const ChannelSet& chan, int k);

/// I.i.d. CN(0, 1) entries everywhere.
ChannelSet gen_rayleigh(const SystemDims& dims, Rng& rng);

/// Sparse multipath channels built from ULA steering vectors. G is a sum
/// of L_G rank-one terms and every h_r a sum of L_r steering vectors; the
/// direct channels stay Rayleigh. Gains are scaled so that
/// E|G_mn|^2 = E|h_r,n|^2 = gain_variance, matching the Rayleigh model at
/// gain_variance = 1.
ChannelSet gen_geometric(const SystemDims& dims, const GeometricPathConfig& paths, Rng& rng);

/// Unitary DFT matrix, entry (a, b) = exp(-2 pi i a b / n) / sqrt(n).
CMatrix dft_dictionary(int n);

/// Steering vector of an n-element ULA at normalized spatial frequency
/// psi, unit norm. At psi = b / n it equals column b of dft_dictionary(n).
CVector steering_vector(int n, double psi);

/// H~ = U_M^H H conj(U_N).
CMatrix to_angular(const CascadedChannel& H, const AngularDictionary& dict);

/// H = U_M H~ U_N^T.
CascadedChannel from_angular(const CMatrix& H_ang, const AngularDictionary& dict);

/// Column j of the result is the sum of columns j*B .. j*B+B-1 of H.
CMatrix group_reduce(const CascadedChannel& H, const GroupingConfig& cfg);

/// Entries with magnitude above `threshold`.
int count_nonzero(const CMatrix& A, double threshold = 1e-9);

}  // namespace risce
