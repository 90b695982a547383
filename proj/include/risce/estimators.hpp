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

// Channel estimators: least squares for the direct and cascaded channels
// (ON/OFF, DFT and arbitrary schedules), the multi-user correlation
// estimator, angular-domain OMP, and the two-timescale framework
// (coordinate descent on dual-link pilots for G, then LS for h_d, h_r).
//
// Every estimator takes observations whose direct channel contribution is
// removed with a caller-supplied h_d estimate, except the small-timescale
// LS which estimates h_d jointly.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risce/channel.hpp"
#include "risce/pilot.hpp"

namespace risce {

struct ChannelEstimate {
  std::string scheme;
  std::optional<CMatrix> H_hat;
  std::optional<CVector> h_d_hat;
  std::optional<CMatrix> G_hat;
  std::optional<CVector> h_r_hat;
  int slots = 0;  ///< pilot slots consumed by the observations used
};

/// lambda_n = h_r,k[n] / h_r,1[n]: user k's cascaded column n is lambda_n
/// times the typical user's.
struct CorrelationCoefficients {
  CVector lambda;
};

struct LambdaEstimate {
  CorrelationCoefficients coefficients;
  ChannelEstimate estimate;
};

// ---------------------------------------------------------------------------
// Least squares

/// Averages Y[:, t] / s_t over an all-OFF observation.
CVector estimate_direct_ls(const PilotObservation& obs);

/// Column n of H_hat = Y[:, n] / s_n - h_d_hat.
ChannelEstimate estimate_cascaded_onoff(const PilotObservation& obs, const CVector& h_d_hat);

/// H_hat = Ytilde conj(Theta) / N where Theta is the stacked DFT schedule.
ChannelEstimate estimate_cascaded_dft(const PilotObservation& obs, const CVector& h_d_hat);

/// LS for an arbitrary schedule with T >= N: H_hat = Ytilde pinv(Theta^T).
/// Throws IdentifiabilityError when Theta does not have full column rank.
ChannelEstimate estimate_cascaded_ls(const PilotObservation& obs, const CVector& h_d_hat);

/// Multi-user correlation estimator for user k >= 2. Stacks, for every
/// slot t, the M x N matrix H1_hat diag(theta_t) and solves LS for lambda
/// against the h_d-corrected observations. `ridge` > 0 adds Tikhonov
/// regularization (default plain LS).
LambdaEstimate estimate_lambda_multiuser(const CMatrix& H1_hat, const PilotObservation& obs_k,
                                         const CVector& h_d_hat_k, double ridge = 0.0);

// ---------------------------------------------------------------------------
// Sparse recovery

/// OMP stopping rule: a known sparsity S, or a residual norm threshold.
struct OmpStop {
  std::optional<int> sparsity;
  std::optional<double> epsilon;

  static OmpStop known_sparsity(int s) { return {s, std::nullopt}; }
  static OmpStop residual(double eps) { return {std::nullopt, eps}; }
};

struct SparseSolution {
  CVector x;
  std::vector<int> support;  ///< selection order
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Orthogonal matching pursuit on y = A x. Atoms are compared after unit
/// normalization; the final coefficients are LS on the selected support
/// against the unnormalized A.
SparseSolution omp(const CMatrix& A, const CVector& y, const OmpStop& stop);

/// Sensing matrix of the angular model. Block row t (M rows) maps
/// vec(H~) (column-major, M*N) to H theta_t, i.e. (theta_t^T U_N) kron U_M.
CMatrix angular_sensing_matrix(const ReflectionSchedule& schedule, const AngularDictionary& dict);

struct OmpEstimate {
  ChannelEstimate estimate;
  CMatrix H_ang;
  SparseSolution solution;
};

/// Angular-domain OMP from h_d-corrected observations.
OmpEstimate estimate_angular_omp(const PilotObservation& obs, const CVector& h_d_hat,
                                 const AngularDictionary& dict, const OmpStop& stop);

// ---------------------------------------------------------------------------
// Two-timescale framework

struct CoordDescentOptions {
  int max_sweeps = 200;
  double rel_tol = 1e-8;
  int restarts = 5;
  /// Record the objective after every coordinate update (recomputed from
  /// scratch, so only meant for small problems and tests).
  bool record_trace = false;

  void validate() const;
};

struct CoordDescentResult {
  CMatrix G_hat;
  /// Best objective divided by the observation energy (0 for an all-zero
  /// observation).
  double residual = 0.0;
  bool converged = false;
  int best_restart = 0;
  int sweeps = 0;  ///< sweeps run by the best restart
  std::vector<double> restart_residuals;
  std::vector<bool> restart_converged;
  /// One entry per restart when record_trace is set: objective before the
  /// first update followed by the objective after every update.
  std::vector<std::vector<double>> traces;
};

/// Fits G to dual-link samples by cyclic coordinate descent over the entries
/// g_{m,n} in lexicographic (m, n) order. Each entry enters the model
/// linearly, so each update is a closed-form 1-D complex LS step. G is
/// identified only up to a sign per column.
CoordDescentResult estimate_g_coord_descent(const DualLinkObservation& obs,
                                            const CoordDescentOptions& opts, Rng& rng);

/// Objective sum |y - g_m2^T diag(theta_t) g_m1 s|^2 of a candidate G.
double dual_link_cost(const DualLinkObservation& obs, const CMatrix& G);

struct SmallTimescaleEstimate {
  CVector h_d_hat;
  CVector h_r_hat;
};

/// Joint LS for [h_d; h_r] with G known: slot t contributes
/// y_t = (h_d + G_hat diag(theta_t) h_r) s_t. Needs M*T >= M + N and a
/// full-rank stacking, else IdentifiabilityError.
SmallTimescaleEstimate estimate_small_timescale_ls(const PilotObservation& obs,
                                                   const CMatrix& G_hat);

/// Slots per small-timescale block: 1 + ceil(N / M).
int small_timescale_slots(int M, int N);

struct TwoTimescaleOptions {
  CoordDescentOptions coord_descent;
  int direct_slots = 0;  ///< extra all-OFF slots (T_d) stacked into the small-timescale LS
  int periods = 100;     ///< coherence blocks per large-timescale period (P)
  int user = 0;
};

struct TwoTimescaleResult {
  ChannelEstimate estimate;  ///< H_hat = G_hat diag(h_r_hat), plus components
  CoordDescentResult large;
  int large_slots = 0;  ///< (N + 1) M dual-link slots
  int small_slots = 0;  ///< T_d + 1 + ceil(N / M) uplink slots
  double amortized_slots() const;
  int periods = 1;
};

/// Dual-link pilots -> G_hat, then uplink pilots -> (h_d_hat, h_r_hat).
TwoTimescaleResult two_timescale_pipeline(const ChannelSet& chan, const NoiseConfig& noise,
                                          const TwoTimescaleOptions& opts, Rng& rng);

}  // namespace risce
