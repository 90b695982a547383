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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracle.hpp"
#include "risce/bench.hpp"
#include "risce/error.hpp"

using namespace risce;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.dims = {4, 8, 2};
  cfg.schemes = {Scheme::dft};
  cfg.snr_db = {10.0};
  cfg.trials = 20;
  cfg.seed = 42;
  return cfg;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("nmse") {
  CMatrix H(1, 2);
  H << 1.0, 0.0;
  CMatrix E(1, 2);
  E << 0.0, 1.0;
  CHECK(nmse(H, H) == 0.0);
  CHECK(nmse(H, CMatrix::Zero(1, 2)) == 1.0);
  CHECK(nmse(H, E) == 2.0);
  CHECK_THROWS_AS(nmse(CMatrix::Zero(2, 2), CMatrix::Ones(2, 2)), UndefinedMetricError);
  CHECK_THROWS_AS(nmse(H, CMatrix::Zero(2, 2)), ShapeError);

  Rng rng(1);
  CMatrix G(3, 4);
  for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = rng.complex_gaussian();
  CMatrix flipped = G;
  flipped.col(0) *= -1.0;
  flipped.col(2) *= -1.0;
  CHECK(nmse(G, flipped) > 0.1);
  CHECK(nmse(G, flipped, Alignment::column_sign) <= 1e-30);
  CHECK(align_column_signs(G, flipped) == G);
}

TEST_CASE("effective_power") {
  CHECK(effective_power(CMatrix::Identity(2, 2), CVector::Ones(2)) == 2.0);
  CHECK(effective_power(CMatrix::Identity(2, 2), CVector::Zero(2)) == 0.0);
  CHECK_THROWS_AS(effective_power(CMatrix::Identity(2, 2), CVector::Ones(3)), ShapeError);

  Rng rng(2);
  const auto chan = gen_rayleigh({4, 6, 1}, rng);
  CVector theta(6);
  for (auto& x : theta) x = rng.complex_gaussian();
  const CVector y = oracle::uplink_sample(CVector::Zero(4), chan.G, chan.h_r[0], theta);
  CHECK(effective_power(cascaded_channel(chan, 0).matrix(), theta) ==
        doctest::Approx(y.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("count_unknowns") {
  const SystemDims big{64, 256, 1};
  CHECK(count_unknowns(big, Scheme::dft) == 16384);
  CHECK(count_unknowns(big, Scheme::onoff) == 16384);
  CHECK(count_unknowns(big, Scheme::conventional) == 64);
  CHECK(count_unknowns(big, Scheme::correlation) == 256);
  CHECK(count_unknowns(big, Scheme::two_timescale) == 16384 + 64 + 256);
  CHECK(count_unknowns(big, Scheme::dft, 4) == 4096);
  CHECK_THROWS_AS(scheme_from_string("bogus"), ConfigError);
  for (Scheme s : runnable_schemes()) CHECK(scheme_from_string(to_string(s)) == s);
}

TEST_CASE("pilot_overhead") {
  OverheadParams p;
  CHECK(pilot_overhead({1, 256, 1}, Scheme::dft, p).raw == 257);

  p.K = 4;
  p.T_d = 0;
  CHECK(pilot_overhead({8, 32, 4}, Scheme::correlation, p).raw == 44);
  CHECK(pilot_overhead({8, 32, 4}, Scheme::dft, p).raw == 128);

  OverheadParams q;
  q.T_d = 0;
  q.P = 100;
  const auto tt = pilot_overhead({8, 32, 1}, Scheme::two_timescale, q);
  CHECK(tt.amortized == doctest::Approx(7.64));
  CHECK(tt.raw == 264 + 5);
  CHECK(pilot_overhead({8, 32, 1}, Scheme::dft, q).amortized == 32.0);

  OverheadParams g;
  g.group_size = 4;
  CHECK(pilot_overhead({8, 32, 1}, Scheme::dft, g).raw == 9);
  g.group_size = 5;
  CHECK_THROWS_AS(pilot_overhead({8, 32, 1}, Scheme::dft, g), ConfigError);

  OverheadParams o;
  CHECK_THROWS_AS(pilot_overhead({8, 32, 1}, Scheme::omp, o), ConfigError);
  o.omp_slots = 8;
  CHECK(pilot_overhead({8, 32, 1}, Scheme::omp, o).raw == 9);
}

TEST_CASE("simulator slot traces match the overhead formulas") {
  // Correlation and two-timescale need a full-rank G, so they run on
  // Rayleigh channels; OMP needs an on-grid sparse channel.
  auto rayleigh = base_config();
  rayleigh.dims = {8, 32, 4};
  rayleigh.snr_db = {kInf};
  rayleigh.trials = 2;
  rayleigh.schemes = {Scheme::onoff, Scheme::dft, Scheme::correlation, Scheme::two_timescale};
  auto sparse = rayleigh;
  sparse.model = ChannelModel::geometric;
  sparse.paths = {4, 1, true, 1.0};
  sparse.schemes = {Scheme::omp};
  sparse.omp = OmpConfig{4, std::nullopt, 8};
  for (int T_d : {0, 1, 3}) {
    for (auto* cfg : {&rayleigh, &sparse}) {
      cfg->T_d = T_d;
      const auto report = run_monte_carlo(*cfg, {1});
      for (const auto& row : report.rows) {
        CAPTURE(to_string(row.scheme));
        CAPTURE(T_d);
        CHECK(row.failures == 0);
        CHECK(row.traced_slots == row.raw_slots);
        CHECK(row.nmse_mean <= 1e-10);
      }
    }
  }
}

TEST_CASE("run_monte_carlo") {
  SUBCASE("noiseless DFT is exact") {
    auto cfg = base_config();
    cfg.snr_db = {kInf};
    const auto r = run_monte_carlo(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].nmse_mean <= 1e-12);
    CHECK(r.rows[0].trials == 20);
  }
  SUBCASE("same seed, same report; parallelism does not matter") {
    auto cfg = base_config();
    cfg.schemes = {Scheme::onoff, Scheme::dft, Scheme::correlation};
    cfg.snr_db = {0.0, 20.0};
    const auto a = report_to_csv(run_monte_carlo(cfg, {1}));
    const auto b = report_to_csv(run_monte_carlo(cfg, {1}));
    const auto c = report_to_csv(run_monte_carlo(cfg, {7}));
    CHECK(a == b);
    CHECK(a == c);
    cfg.seed = 43;
    CHECK(report_to_csv(run_monte_carlo(cfg, {2})) != a);
  }
  SUBCASE("trial seeds are distinct across keys") {
    CHECK(trial_seed(1, Scheme::dft, 0, 0) != trial_seed(1, Scheme::dft, 0, 1));
    CHECK(trial_seed(1, Scheme::dft, 0, 0) != trial_seed(1, Scheme::dft, 1, 0));
    CHECK(trial_seed(1, Scheme::dft, 0, 0) != trial_seed(1, Scheme::onoff, 0, 0));
    CHECK(trial_seed(1, Scheme::dft, 0, 0) != trial_seed(2, Scheme::dft, 0, 0));
  }
  SUBCASE("NMSE falls with SNR") {
    auto cfg = base_config();
    cfg.schemes = {Scheme::onoff, Scheme::dft};
    cfg.snr_db = {0.0, 10.0, 20.0};
    cfg.trials = 200;
    cfg.T_d = 0;
    const auto r = run_monte_carlo(cfg);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      if (r.rows[i].scheme != r.rows[i - 1].scheme) continue;
      const double band = 3.0 * std::hypot(r.rows[i].nmse_stderr, r.rows[i - 1].nmse_stderr);
      CHECK(r.rows[i].nmse_mean <= r.rows[i - 1].nmse_mean + band);
    }
  }
  SUBCASE("solver failures are counted, not thrown") {
    auto cfg = base_config();
    cfg.dims = {4, 8, 1};
    cfg.schemes = {Scheme::two_timescale};
    cfg.snr_db = {kInf};
    cfg.trials = 3;
    cfg.coord_descent.max_sweeps = 1;
    cfg.coord_descent.restarts = 1;
    const auto r = run_monte_carlo(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].failures == 3);
    CHECK(std::isnan(r.rows[0].nmse_mean));
    CHECK_FALSE(r.rows[0].first_failure.empty());
  }
  SUBCASE("config errors abort") {
    auto cfg = base_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_monte_carlo(cfg), ConfigError);
  }
}

TEST_CASE("report serialization") {
  auto cfg = base_config();
  cfg.trials = 3;
  const auto r = run_monte_carlo(cfg);
  const auto csv = report_to_csv(r);
  CHECK(csv.rfind("scheme,snr_db,nmse_mean,nmse_stderr,trials,failures,raw_slots,amortized_slots\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  const auto json = report_to_json(r);
  CHECK(json.find("\"snr_convention\"") != std::string::npos);
  CHECK(json.find("\"seed\": 42") != std::string::npos);

  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(-kInf) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}
