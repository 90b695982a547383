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
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "risce/bench.hpp"
#include "risce/error.hpp"

namespace risce {

void ExperimentConfig::validate() const {
  dims.validate();
  if (schemes.empty()) throw ConfigError("schemes: list is empty");
  std::set<Scheme> seen;
  for (Scheme s : schemes) {
    if (s == Scheme::conventional) throw ConfigError("schemes: \"conventional\" is not simulated");
    if (!seen.insert(s).second) throw ConfigError("schemes: duplicate \"" + std::string(to_string(s)) + "\"");
  }
  if (snr_db.empty()) throw ConfigError("snr_db: list is empty");
  for (double v : snr_db) {
    if (std::isnan(v) || v == -INFINITY) throw ConfigError("snr_db: values must be finite or +inf");
  }
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (T_d < 0) throw ConfigError("T_d: must be >= 0");
  if (P < 1) throw ConfigError("P: must be >= 1");
  if (model == ChannelModel::geometric) paths.validate(dims);
  if (grouping) {
    grouping->validate(dims.N);
    if (seen.count(Scheme::two_timescale) && grouping->B > 1) {
      throw ConfigError("grouping: not supported with two_timescale (h_r is not identifiable per group)");
    }
  }
  if (seen.count(Scheme::omp)) {
    if (!omp) throw ConfigError("omp: block required when scheme \"omp\" is listed");
    if (omp->T < 1) throw ConfigError("omp.T: must be >= 1");
    if (omp->S.has_value() == omp->epsilon.has_value()) {
      throw ConfigError("omp: give exactly one of S or epsilon");
    }
    if (omp->S && (*omp->S < 1 || static_cast<long long>(*omp->S) > static_cast<long long>(omp->T) * dims.M)) {
      throw ConfigError("omp.S: must satisfy 1 <= S <= T*M");
    }
    if (omp->epsilon && !(*omp->epsilon > 0.0)) throw ConfigError("omp.epsilon: must be positive");
  }
  coord_descent.validate();
}

OverheadParams ExperimentConfig::overhead_params() const {
  OverheadParams p;
  p.K = dims.K;
  p.T_d = T_d;
  p.P = P;
  p.omp_slots = omp ? omp->T : 0;
  p.group_size = grouping ? grouping->B : 1;
  return p;
}

std::uint64_t trial_seed(std::uint64_t seed, Scheme scheme, int snr_index, int trial) {
  return derive_seed(seed, static_cast<int>(scheme), snr_index, trial);
}

namespace {

struct ErrorAccumulator {
  double num = 0.0;
  double den = 0.0;
  void add(const CMatrix& H, const CMatrix& H_hat) {
    num += (H - H_hat).squaredNorm();
    den += H.squaredNorm();
  }
};

class TrialRunner {
 public:
  TrialRunner(const ExperimentConfig& cfg, double snr_db, Rng& rng) : cfg_(cfg), rng_(rng) {
    const int B = cfg.grouping ? cfg.grouping->B : 1;
    N_eff_ = cfg.dims.N / B;
    double reflect_var = 1.0;
    if (cfg.model == ChannelModel::geometric) {
      chan_ = gen_geometric(cfg.dims, cfg.paths, rng);
      reflect_var = cfg.paths.gain_variance * cfg.paths.gain_variance;
    } else {
      chan_ = gen_rayleigh(cfg.dims, rng);
    }
    noise_.sigma2_w = noise_variance_for_snr(snr_db, nominal_rx_power(cfg.dims.N, 1.0, reflect_var));
    for (int k = 0; k < cfg.dims.K; ++k) {
      CascadedChannel H = cascaded_channel(chan_, k);
      H_.push_back(B > 1 ? group_reduce(H, GroupingConfig{B}) : H.matrix());
    }
  }

  TrialOutcome run(Scheme scheme) {
    switch (scheme) {
      case Scheme::onoff: return per_user_ls(false);
      case Scheme::dft: return per_user_ls(true);
      case Scheme::correlation: return correlation();
      case Scheme::omp: return sparse();
      case Scheme::two_timescale: return two_timescale();
      case Scheme::conventional: break;
    }
    throw ConfigError("scheme is not simulated");
  }

 private:
  // Direct channel of user k from T_d all-OFF slots; known when T_d = 0.
  CVector direct(int k) {
    if (cfg_.T_d == 0) return chan_.h_d[k];
    const auto obs = simulate_uplink(chan_.h_d[k], H_[k], schedule_off(cfg_.T_d, N_eff_), noise_, rng_, k);
    slots_ += obs.schedule.slots();
    return estimate_direct_ls(obs);
  }

  PilotObservation observe(int k, const ReflectionSchedule& schedule) {
    auto obs = simulate_uplink(chan_.h_d[k], H_[k], schedule, noise_, rng_, k);
    slots_ += schedule.slots();
    return obs;
  }

  TrialOutcome finish() const {
    TrialOutcome o;
    o.slots = slots_;
    if (err_.den == 0.0) {
      o.failure = "nmse: true channel is zero";
      return o;
    }
    o.ok = true;
    o.nmse = err_.num / err_.den;
    return o;
  }

  TrialOutcome per_user_ls(bool dft) {
    const auto schedule = dft ? schedule_dft(N_eff_) : schedule_onoff(N_eff_);
    for (int k = 0; k < cfg_.dims.K; ++k) {
      const CVector hd = direct(k);
      const auto obs = observe(k, schedule);
      const auto est = dft ? estimate_cascaded_dft(obs, hd) : estimate_cascaded_onoff(obs, hd);
      err_.add(H_[k], *est.H_hat);
    }
    return finish();
  }

  TrialOutcome correlation() {
    const CVector hd1 = direct(0);
    const auto typical = estimate_cascaded_dft(observe(0, schedule_dft(N_eff_)), hd1);
    const CMatrix& H1_hat = *typical.H_hat;
    err_.add(H_[0], H1_hat);
    const int T_k = (N_eff_ + cfg_.dims.M - 1) / cfg_.dims.M;
    const auto schedule = schedule_dft_prefix(T_k, N_eff_);
    for (int k = 1; k < cfg_.dims.K; ++k) {
      const CVector hd = direct(k);
      const auto est = estimate_lambda_multiuser(H1_hat, observe(k, schedule), hd);
      err_.add(H_[k], *est.estimate.H_hat);
    }
    return finish();
  }

  TrialOutcome sparse() {
    const auto dict = AngularDictionary::for_dims(cfg_.dims.M, N_eff_);
    const OmpStop stop{cfg_.omp->S, cfg_.omp->epsilon};
    for (int k = 0; k < cfg_.dims.K; ++k) {
      const CVector hd = direct(k);
      const auto schedule = schedule_random_phase(cfg_.omp->T, N_eff_, rng_);
      const auto est = estimate_angular_omp(observe(k, schedule), hd, dict, stop);
      err_.add(H_[k], *est.estimate.H_hat);
    }
    return finish();
  }

  TrialOutcome two_timescale() {
    const int M = cfg_.dims.M;
    const int N = cfg_.dims.N;
    const auto dual = simulate_dual_link(chan_.G, schedule_dual_link_default(N), noise_, rng_);
    slots_ += dual.slots();
    const auto large = estimate_g_coord_descent(dual, cfg_.coord_descent, rng_);

    auto schedule = schedule_random_phase(small_timescale_slots(M, N), N, rng_);
    if (cfg_.T_d > 0) schedule = concat(schedule_off(cfg_.T_d, N), schedule);
    for (int k = 0; k < cfg_.dims.K; ++k) {
      const auto small = estimate_small_timescale_ls(observe(k, schedule), large.G_hat);
      err_.add(H_[k], large.G_hat * small.h_r_hat.asDiagonal());
    }
    if (!large.converged) {
      TrialOutcome o;
      o.slots = slots_;
      o.failure = "coordinate descent did not converge within max_sweeps";
      return o;
    }
    return finish();
  }

  const ExperimentConfig& cfg_;
  Rng& rng_;
  ChannelSet chan_;
  std::vector<CMatrix> H_;  // cascaded channels seen by the estimators
  int N_eff_ = 0;
  NoiseConfig noise_;
  long long slots_ = 0;
  ErrorAccumulator err_;
};

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& cfg, Scheme scheme, int snr_index, int trial) {
  Rng rng(trial_seed(cfg.seed, scheme, snr_index, trial));
  try {
    TrialRunner runner(cfg, cfg.snr_db.at(snr_index), rng);
    return runner.run(scheme);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    TrialOutcome o;
    o.failure = e.what();
    return o;
  }
}

NmseReport run_monte_carlo(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const auto n_schemes = cfg.schemes.size();
  const auto n_snr = cfg.snr_db.size();
  const auto n_trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t tasks = n_schemes * n_snr * n_trials;

  std::vector<TrialOutcome> outcomes(tasks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> config_failed{false};
  std::string config_error;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks && !config_failed; i = next++) {
      const auto s = i / (n_snr * n_trials);
      const auto snr = (i / n_trials) % n_snr;
      const auto t = i % n_trials;
      try {
        outcomes[i] = run_trial(cfg, cfg.schemes[s], static_cast<int>(snr), static_cast<int>(t));
      } catch (const ConfigError& e) {
        if (!config_failed.exchange(true)) config_error = e.what();
      }
    }
  };

  unsigned threads = opts.parallelism > 0 ? static_cast<unsigned>(opts.parallelism)
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (config_failed) throw ConfigError(config_error);

  NmseReport report;
  report.config = cfg;
  const auto params = cfg.overhead_params();
  for (std::size_t s = 0; s < n_schemes; ++s) {
    const auto overhead = pilot_overhead(cfg.dims, cfg.schemes[s], params);
    for (std::size_t snr = 0; snr < n_snr; ++snr) {
      ReportRow row;
      row.scheme = cfg.schemes[s];
      row.snr_db = cfg.snr_db[snr];
      row.trials = cfg.trials;
      row.raw_slots = overhead.raw;
      row.amortized_slots = overhead.amortized;

      std::vector<double> values;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& o = outcomes[(s * n_snr + snr) * n_trials + t];
        if (row.traced_slots < 0 && o.slots > 0) row.traced_slots = o.slots;
        if (o.ok) {
          values.push_back(o.nmse);
        } else {
          ++row.failures;
          if (row.first_failure.empty()) row.first_failure = o.failure;
        }
      }
      if (values.empty()) {
        row.nmse_mean = std::nan("");
        row.nmse_stderr = std::nan("");
      } else {
        double sum = 0.0;
        for (double v : values) sum += v;
        row.nmse_mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
          double ss = 0.0;
          for (double v : values) ss += (v - row.nmse_mean) * (v - row.nmse_mean);
          const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
          row.nmse_stderr = sd / std::sqrt(static_cast<double>(values.size()));
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace risce
