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

// Coordinate descent for the dual-link model
//
//   y[m1][m2][t] = s * sum_n theta_t[n] G[m1][n] G[m2][n],  m1 != m2.
//
// Entry G[m][n] appears in the samples with m1 = m or m2 = m, each time
// multiplied by theta_t[n] G[m'][n] (m' the other antenna), so holding the
// rest fixed the objective is a 1-D linear LS problem in G[m][n]:
//
//   delta = sum conj(a) r / sum |a|^2,   a = s theta_t[n] G[m'][n],
//
// with r the current residuals. The update lowers the objective by
// |sum conj(a) r|^2 / sum |a|^2 >= 0.

#include <cmath>
#include <limits>

#include "risce/error.hpp"
#include "risce/estimators.hpp"

namespace risce {

namespace {

class Residuals {
 public:
  Residuals(int M, int T) : M_(M), data_(static_cast<std::size_t>(M) * M * T) {}
  cplx& operator()(int m1, int m2, int t) {
    return data_[(static_cast<std::size_t>(t) * M_ + m1) * M_ + m2];
  }
  double energy() const {
    double e = 0.0;
    for (const auto& v : data_) e += std::norm(v);
    return e;
  }

 private:
  int M_;
  std::vector<cplx> data_;  // diagonal entries stay zero
};

cplx model_sample(const CMatrix& G, const CMatrix& Theta, int m1, int m2, int t) {
  cplx v{0.0, 0.0};
  for (Eigen::Index n = 0; n < G.cols(); ++n) v += Theta(t, n) * G(m1, n) * G(m2, n);
  return v;
}

Residuals residuals_of(const DualLinkObservation& obs, const CMatrix& Theta, const CMatrix& G) {
  const int M = obs.antennas();
  const int T = obs.subframes();
  Residuals R(M, T);
  for (int t = 0; t < T; ++t)
    for (int m1 = 0; m1 < M; ++m1)
      for (int m2 = 0; m2 < M; ++m2)
        if (m1 != m2) R(m1, m2, t) = obs.sample(m1, m2, t) - obs.pilot(m1, t) * model_sample(G, Theta, m1, m2, t);
  return R;
}

}  // namespace

void CoordDescentOptions::validate() const {
  if (max_sweeps < 1) throw ConfigError("coordinate descent: max_sweeps must be >= 1");
  if (restarts < 1) throw ConfigError("coordinate descent: restarts must be >= 1");
  if (!(rel_tol > 0.0)) throw ConfigError("coordinate descent: rel_tol must be positive");
}

double dual_link_cost(const DualLinkObservation& obs, const CMatrix& G) {
  if (G.rows() != obs.antennas() || G.cols() != obs.schedule().elements()) {
    throw ShapeError("dual_link_cost: G shape does not match the observation");
  }
  return residuals_of(obs, obs.schedule().stacked(), G).energy();
}

CoordDescentResult estimate_g_coord_descent(const DualLinkObservation& obs,
                                            const CoordDescentOptions& opts, Rng& rng) {
  opts.validate();
  const int M = obs.antennas();
  const int T = obs.subframes();
  const int N = obs.schedule().elements();
  const CMatrix Theta = obs.schedule().stacked();

  CoordDescentResult result;
  result.G_hat = CMatrix::Zero(M, N);
  const double energy = obs.energy();
  if (energy == 0.0) {
    result.converged = true;
    result.restart_residuals.assign(1, 0.0);
    result.restart_converged.assign(1, true);
    return result;
  }

  // Initial entries sized so the model matches the observed sample power.
  const double theta_power = Theta.squaredNorm() / T;
  const double samples = static_cast<double>(M) * (M - 1) * T;
  const double init_var = theta_power > 0.0 ? std::sqrt(energy / samples / theta_power) : 1.0;
  // Treat the objective as zero once it is this far below the data energy.
  const double zero_floor = 1e-30 * energy;

  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    CMatrix G(M, N);
    for (Eigen::Index n = 0; n < N; ++n)
      for (Eigen::Index m = 0; m < M; ++m) G(m, n) = rng.complex_gaussian(init_var);

    Residuals R = residuals_of(obs, Theta, G);
    double cost = R.energy();
    std::vector<double> trace;
    if (opts.record_trace) trace.push_back(cost);

    bool converged = false;
    int sweeps = 0;
    while (sweeps < opts.max_sweeps) {
      ++sweeps;
      const double prev = cost;
      for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
          cplx num{0.0, 0.0};
          double den = 0.0;
          for (int t = 0; t < T; ++t) {
            const cplx th = Theta(t, n);
            if (th == cplx{}) continue;
            for (int mo = 0; mo < M; ++mo) {
              if (mo == m) continue;
              const cplx a_tx = obs.pilot(m, t) * th * G(mo, n);   // sample (m -> mo)
              const cplx a_rx = obs.pilot(mo, t) * th * G(mo, n);  // sample (mo -> m)
              num += std::conj(a_tx) * R(m, mo, t) + std::conj(a_rx) * R(mo, m, t);
              den += std::norm(a_tx) + std::norm(a_rx);
            }
          }
          if (den == 0.0) continue;
          const cplx delta = num / den;
          if (delta == cplx{}) continue;
          for (int t = 0; t < T; ++t) {
            const cplx th = Theta(t, n);
            if (th == cplx{}) continue;
            for (int mo = 0; mo < M; ++mo) {
              if (mo == m) continue;
              R(m, mo, t) -= obs.pilot(m, t) * th * G(mo, n) * delta;
              R(mo, m, t) -= obs.pilot(mo, t) * th * G(mo, n) * delta;
            }
          }
          G(m, n) += delta;
          if (opts.record_trace) trace.push_back(dual_link_cost(obs, G));
        }
      }
      cost = R.energy();
      if (cost <= zero_floor || prev - cost <= opts.rel_tol * prev) {
        converged = true;
        break;
      }
    }

    const double normalized = cost / energy;
    result.restart_residuals.push_back(normalized);
    result.restart_converged.push_back(converged);
    if (opts.record_trace) result.traces.push_back(std::move(trace));
    if (normalized < best) {
      best = normalized;
      result.G_hat = G;
      result.residual = normalized;
      result.converged = converged;
      result.best_restart = restart;
      result.sweeps = sweeps;
    }
  }
  return result;
}

}  // namespace risce
