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

#include <algorithm>
#include <string>

#include "risce/error.hpp"
#include "risce/estimators.hpp"

namespace risce {

SparseSolution omp(const CMatrix& A, const CVector& y, const OmpStop& stop) {
  if (A.rows() != y.size()) throw ShapeError("omp: A and y disagree on the row count");
  if (stop.sparsity.has_value() == stop.epsilon.has_value()) {
    throw ConfigError("omp: give exactly one of sparsity or residual threshold");
  }
  const auto rows = A.rows();
  const auto cols = A.cols();
  int max_iter = static_cast<int>(std::min(rows, cols));
  if (stop.sparsity) {
    const int S = *stop.sparsity;
    if (S < 0) throw ConfigError("omp: sparsity must be non-negative");
    if (S > rows) {
      throw IdentifiabilityError("omp: sparsity " + std::to_string(S) + " exceeds the " +
                                 std::to_string(rows) + " measurements; LS on the support is underdetermined");
    }
    if (S > cols) throw ConfigError("omp: sparsity exceeds the number of atoms");
    max_iter = S;
  } else if (!(*stop.epsilon > 0.0)) {
    throw ConfigError("omp: residual threshold must be positive");
  }

  const Eigen::VectorXd norms = A.colwise().norm().transpose();
  std::vector<bool> taken(cols, false);

  SparseSolution sol;
  sol.x = CVector::Zero(cols);
  CVector r = y;
  CVector coef;
  for (int it = 0; it < max_iter; ++it) {
    if (stop.epsilon && r.norm() <= *stop.epsilon) break;

    const CVector corr = A.adjoint() * r;
    Eigen::Index best = -1;
    double best_val = -1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (taken[j] || norms(j) == 0.0) continue;
      const double v = std::abs(corr(j)) / norms(j);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (best < 0) break;
    taken[best] = true;
    sol.support.push_back(static_cast<int>(best));

    CMatrix As(rows, sol.support.size());
    for (std::size_t i = 0; i < sol.support.size(); ++i) As.col(i) = A.col(sol.support[i]);
    coef = As.colPivHouseholderQr().solve(y);
    r = y - As * coef;
    ++sol.iterations;
  }
  for (std::size_t i = 0; i < sol.support.size(); ++i) sol.x(sol.support[i]) = coef(i);
  sol.residual_norm = r.norm();
  return sol;
}

CMatrix angular_sensing_matrix(const ReflectionSchedule& schedule, const AngularDictionary& dict) {
  const auto M = dict.U_M.rows();
  const auto N = dict.U_N.rows();
  if (schedule.elements() != N) throw ShapeError("sensing matrix: schedule length != N");
  const int T = schedule.slots();
  CMatrix Phi(M * T, M * N);
  for (int t = 0; t < T; ++t) {
    const CVector v = dict.U_N.transpose() * schedule[t].theta();
    for (Eigen::Index q = 0; q < N; ++q) {
      Phi.block(t * M, q * M, M, M) = v(q) * dict.U_M;
    }
  }
  return Phi;
}

OmpEstimate estimate_angular_omp(const PilotObservation& obs, const CVector& h_d_hat,
                                 const AngularDictionary& dict, const OmpStop& stop) {
  const auto M = dict.U_M.rows();
  const auto N = dict.U_N.rows();
  if (obs.Y.rows() != M || h_d_hat.size() != M) throw ShapeError("omp estimator: M mismatch");
  const int T = obs.schedule.slots();

  CVector y(M * T);
  for (int t = 0; t < T; ++t) y.segment(t * M, M) = obs.Y.col(t) / obs.pilots(t) - h_d_hat;

  OmpEstimate out;
  out.solution = omp(angular_sensing_matrix(obs.schedule, dict), y, stop);
  out.H_ang = Eigen::Map<const CMatrix>(out.solution.x.data(), M, N);
  out.estimate.scheme = "omp";
  out.estimate.H_hat = from_angular(out.H_ang, dict).matrix();
  out.estimate.slots = T;
  return out;
}

}  // namespace risce
