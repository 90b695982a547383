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

#include <cmath>
#include <string>

#include "risce/error.hpp"
#include "risce/estimators.hpp"

namespace risce {

namespace {

constexpr double kRankThreshold = 1e-10;

// Y[:, t] / s_t - h_d_hat for every slot.
CMatrix corrected(const PilotObservation& obs, const CVector& h_d_hat) {
  if (h_d_hat.size() != obs.Y.rows()) {
    throw ShapeError("h_d estimate has length " + std::to_string(h_d_hat.size()) +
                     ", observation has " + std::to_string(obs.Y.rows()) + " antennas");
  }
  if (obs.Y.cols() != obs.schedule.slots() || obs.pilots.size() != obs.Y.cols()) {
    throw ShapeError("observation columns do not match its schedule");
  }
  CMatrix Yt(obs.Y.rows(), obs.Y.cols());
  for (Eigen::Index t = 0; t < obs.Y.cols(); ++t) Yt.col(t) = obs.Y.col(t) / obs.pilots(t) - h_d_hat;
  return Yt;
}

void require_kind(const PilotObservation& obs, ScheduleKind kind, const char* who) {
  if (obs.schedule.kind() != kind) {
    throw MisuseError(std::string(who) + " needs a " + std::string(to_string(kind)) +
                      " schedule, got " + std::string(to_string(obs.schedule.kind())));
  }
  if (obs.schedule.slots() != obs.schedule.elements()) {
    throw MisuseError(std::string(who) + " needs T = N slots");
  }
}

}  // namespace

CVector estimate_direct_ls(const PilotObservation& obs) {
  if (!obs.schedule.all_off()) {
    throw MisuseError("direct-channel LS needs every RIS element OFF in every slot");
  }
  const auto T = obs.Y.cols();
  CVector acc = CVector::Zero(obs.Y.rows());
  for (Eigen::Index t = 0; t < T; ++t) acc += obs.Y.col(t) / obs.pilots(t);
  return acc / static_cast<double>(T);
}

ChannelEstimate estimate_cascaded_onoff(const PilotObservation& obs, const CVector& h_d_hat) {
  require_kind(obs, ScheduleKind::onoff, "ON/OFF estimator");
  ChannelEstimate est;
  est.scheme = "onoff";
  est.H_hat = corrected(obs, h_d_hat);
  est.slots = obs.schedule.slots();
  return est;
}

ChannelEstimate estimate_cascaded_dft(const PilotObservation& obs, const CVector& h_d_hat) {
  require_kind(obs, ScheduleKind::dft, "DFT estimator");
  const int N = obs.schedule.elements();
  ChannelEstimate est;
  est.scheme = "dft";
  est.H_hat = corrected(obs, h_d_hat) * obs.schedule.stacked().conjugate() / static_cast<double>(N);
  est.slots = obs.schedule.slots();
  return est;
}

ChannelEstimate estimate_cascaded_ls(const PilotObservation& obs, const CVector& h_d_hat) {
  const CMatrix Yt = corrected(obs, h_d_hat);
  const CMatrix Theta = obs.schedule.stacked();  // T x N, Yt = H Theta^T
  Eigen::ColPivHouseholderQR<CMatrix> qr(Theta);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < Theta.cols()) {
    throw IdentifiabilityError("schedule of " + std::to_string(Theta.rows()) +
                               " slots has rank " + std::to_string(qr.rank()) + " < N=" +
                               std::to_string(Theta.cols()));
  }
  ChannelEstimate est;
  est.scheme = "ls";
  est.H_hat = CMatrix(qr.solve(CMatrix(Yt.transpose())).transpose());
  est.slots = obs.schedule.slots();
  return est;
}

LambdaEstimate estimate_lambda_multiuser(const CMatrix& H1_hat, const PilotObservation& obs_k,
                                         const CVector& h_d_hat_k, double ridge) {
  const auto M = H1_hat.rows();
  const auto N = H1_hat.cols();
  if (obs_k.schedule.elements() != N || obs_k.Y.rows() != M) {
    throw ShapeError("typical-user estimate and observation disagree on M or N");
  }
  if (ridge < 0.0) throw ConfigError("ridge must be non-negative");

  const double floor = 1e-9 * H1_hat.norm() / std::sqrt(static_cast<double>(N));
  std::vector<int> degenerate;
  for (Eigen::Index n = 0; n < N; ++n) {
    const double cn = H1_hat.col(n).norm();
    if (cn < floor || cn == 0.0) degenerate.push_back(static_cast<int>(n));
  }
  if (!degenerate.empty()) {
    std::string list;
    for (int n : degenerate) list += (list.empty() ? "" : ",") + std::to_string(n);
    throw DegenerateColumnError("typical-user columns too small to anchor lambda: " + list,
                                std::move(degenerate));
  }

  const CMatrix Yt = corrected(obs_k, h_d_hat_k);
  const int T = obs_k.schedule.slots();
  CMatrix A(M * T, N);
  CVector b(M * T);
  for (int t = 0; t < T; ++t) {
    A.middleRows(t * M, M) = H1_hat * obs_k.schedule[t].theta().asDiagonal();
    b.segment(t * M, M) = Yt.col(t);
  }

  CVector lambda;
  if (ridge > 0.0) {
    const CMatrix normal = A.adjoint() * A + ridge * CMatrix::Identity(N, N);
    lambda = normal.ldlt().solve(A.adjoint() * b);
  } else {
    Eigen::ColPivHouseholderQR<CMatrix> qr(A);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < N) {
      throw IdentifiabilityError("stacked correlation system has rank " + std::to_string(qr.rank()) +
                                 " < N=" + std::to_string(N) + " with T=" + std::to_string(T) +
                                 " slots");
    }
    lambda = qr.solve(b);
  }

  LambdaEstimate out;
  out.coefficients.lambda = lambda;
  out.estimate.scheme = "correlation";
  out.estimate.H_hat = CMatrix(H1_hat * lambda.asDiagonal());
  out.estimate.h_d_hat = h_d_hat_k;
  out.estimate.slots = T;
  return out;
}

int small_timescale_slots(int M, int N) { return 1 + (N + M - 1) / M; }

SmallTimescaleEstimate estimate_small_timescale_ls(const PilotObservation& obs,
                                                   const CMatrix& G_hat) {
  const auto M = G_hat.rows();
  const auto N = G_hat.cols();
  if (obs.Y.rows() != M || obs.schedule.elements() != N) {
    throw ShapeError("small-timescale LS: observation and G estimate disagree on M or N");
  }
  const int T = obs.schedule.slots();
  if (M * T < M + N) {
    throw IdentifiabilityError("small-timescale LS needs M*T >= M+N, have " +
                               std::to_string(M * T) + " < " + std::to_string(M + N));
  }
  CMatrix A(M * T, M + N);
  CVector b(M * T);
  for (int t = 0; t < T; ++t) {
    const cplx s = obs.pilots(t);
    A.block(t * M, 0, M, M) = s * CMatrix::Identity(M, M);
    A.block(t * M, M, M, N) = s * (G_hat * obs.schedule[t].theta().asDiagonal());
    b.segment(t * M, M) = obs.Y.col(t);
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(A);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < M + N) {
    throw IdentifiabilityError("small-timescale LS: " + std::string(to_string(obs.schedule.kind())) +
                               " schedule of " + std::to_string(T) + " slots gives rank " +
                               std::to_string(qr.rank()) + " < M+N=" + std::to_string(M + N));
  }
  const CVector x = qr.solve(b);
  return {x.head(M), x.tail(N)};
}

}  // namespace risce
