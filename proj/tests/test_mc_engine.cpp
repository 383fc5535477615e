// Copyright 2026 The fdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fdsim/error.hpp"
#include "fdsim/mc_engine.hpp"
#include "support.hpp"

namespace fdsim {
namespace {

ExperimentConfig si_config(int M, int N, int K, double mu, double nu,
                           std::int64_t trials, SimulationMode mode) {
  ExperimentConfig cfg;
  cfg.geometry = {1, K, M, N};
  cfg.si_spec = RicianSpec(mu, nu);
  cfg.trials = trials;
  cfg.seed = 77;
  cfg.mode = mode;
  return cfg;
}

TEST(RunSiEmpirical, IdenticalAcrossWorkerCounts) {
  // Spans several blocks, including a ragged last block.
  const auto cfg = si_config(6, 4, 2, 0.5, 1.0, 3 * kTrialBlockSize + 17,
                             SimulationMode::Empirical);
  const auto one = run_si_empirical(cfg, {1});
  const auto four = run_si_empirical(cfg, {4});
  EXPECT_EQ(one.samples, four.samples);
  EXPECT_EQ(one.emp_m1, four.emp_m1);
  EXPECT_EQ(one.emp_m2, four.emp_m2);
  EXPECT_EQ(one.gof.ks_statistic, four.gof.ks_statistic);
}

TEST(RunSiEmpirical, ReportInvariants) {
  const auto cfg = si_config(8, 4, 3, 1.0, 0.5, 5000, SimulationMode::Empirical);
  const auto r = run_si_empirical(cfg);
  ASSERT_EQ(r.samples.size(), 5000u);
  EXPECT_EQ(r.gof.sample_count, 5000u);
  EXPECT_LT(test::rel_err(r.emp_var, r.emp_m2 - r.emp_m1 * r.emp_m1), 1e-9);
  for (double x : r.samples) ASSERT_GE(x, 0.0);
  EXPECT_GE(r.gof.ks_statistic, 0.0);
  EXPECT_LE(r.gof.ks_statistic, 1.0);
  EXPECT_EQ(r.config_echo.geometry, cfg.geometry);
  EXPECT_DOUBLE_EQ(r.closed_form.m1, 3 * 1.25);
  EXPECT_EQ(r.singular_redraws, 0u);
}

TEST(RunSiEmpirical, SeedChangesSamples) {
  auto cfg = si_config(4, 4, 1, 0.5, 1.0, 100, SimulationMode::Empirical);
  const auto a = run_si_empirical(cfg);
  cfg.seed += 1;
  EXPECT_NE(a.samples, run_si_empirical(cfg).samples);
}

TEST(RunSiEmpirical, PreconditionsEnforced) {
  auto cfg = si_config(4, 4, 1, 0.5, 1.0, 10, SimulationMode::Theoretical);
  EXPECT_THROW(run_si_empirical(cfg), InvalidParameter);
  cfg.mode = SimulationMode::Empirical;
  cfg.trials = 0;
  EXPECT_THROW(run_si_empirical(cfg), InvalidParameter);
  cfg.trials = 10;
  cfg.geometry.users = 5;
  EXPECT_THROW(run_si_empirical(cfg), InvalidParameter);
}

TEST(RunSiTheoretical, MatchedSeedsReproduce) {
  const auto cfg = si_config(16, 8, 3, 0.5, 1.0, 10000, SimulationMode::Theoretical);
  const auto a = run_si_theoretical(cfg, {1});
  const auto b = run_si_theoretical(cfg, {3});
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.emp_m1, b.emp_m1);
  EXPECT_THROW(run_si_empirical(cfg), InvalidParameter);
}

TEST(RunSi, DispatchesOnMode) {
  auto cfg = si_config(4, 4, 2, 0.5, 1.0, 50, SimulationMode::Theoretical);
  EXPECT_EQ(run_si(cfg).samples, run_si_theoretical(cfg).samples);
  cfg.mode = SimulationMode::Empirical;
  EXPECT_EQ(run_si(cfg).samples, run_si_empirical(cfg).samples);
}

ExperimentConfig sinr_config(int L, int K, int M, int N, LinkDirection dir) {
  ExperimentConfig cfg;
  cfg.geometry = {L, K, M, N};
  cfg.si_spec = RicianSpec(0.5, 1.0);
  cfg.trials = 1;
  cfg.seed = 5;
  cfg.direction = dir;
  return cfg;
}

void expect_sinr_identity(const SinrSample& s) {
  for (double t : {s.useful, s.mui, s.ici, s.cmi, s.si, s.noise}) EXPECT_GE(t, 0.0);
  const double denom = s.mui + s.ici + s.cmi + s.si + s.noise;
  EXPECT_LT(test::rel_err(s.sinr, s.useful / denom), 1e-12);
}

TEST(SinrDownlink, SingleCellSingleRadioHasOnlySiAndNoise) {
  const auto cfg = sinr_config(1, 1, 4, 4, LinkDirection::Downlink);
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng({1, t});
    const auto s = sinr_sample_downlink(cfg, rng);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].mui, 0.0);
    EXPECT_EQ(s[0].ici, 0.0);
    EXPECT_EQ(s[0].cmi, 0.0);
    EXPECT_GT(s[0].si, 0.0);
    EXPECT_LT(test::rel_err(s[0].sinr, s[0].useful / (s[0].si + s[0].noise)), 1e-12);
  }
}

TEST(SinrDownlink, SingleCellHasNoInterCellTerm) {
  const auto cfg = sinr_config(1, 3, 8, 4, LinkDirection::Downlink);
  Rng rng({2, 0});
  for (const auto& s : sinr_sample_downlink(cfg, rng)) {
    EXPECT_EQ(s.ici, 0.0);
    // Other radios of the same cell still transmit uplink towards the node.
    EXPECT_GT(s.cmi, 0.0);
    EXPECT_LT(s.mui, 1e-20);
    expect_sinr_identity(s);
  }
}

TEST(SinrDownlink, MultiCellTermsPresent) {
  auto cfg = sinr_config(3, 2, 6, 4, LinkDirection::Downlink);
  Rng rng({3, 0});
  for (const auto& s : sinr_sample_downlink(cfg, rng)) {
    EXPECT_GT(s.ici, 0.0);
    EXPECT_GT(s.cmi, 0.0);
    expect_sinr_identity(s);
  }
  cfg.direction = LinkDirection::Uplink;
  EXPECT_THROW(sinr_sample_downlink(cfg, rng), InvalidParameter);
}

TEST(SinrUplink, SingleCellTerms) {
  const auto cfg = sinr_config(1, 2, 6, 4, LinkDirection::Uplink);
  Rng rng({4, 0});
  for (const auto& s : sinr_sample_uplink(cfg, rng)) {
    EXPECT_EQ(s.ici, 0.0);
    EXPECT_EQ(s.cmi, 0.0);
    EXPECT_LT(s.mui, 1e-20);
    EXPECT_GT(s.si, 0.0);
    expect_sinr_identity(s);
  }
}

TEST(SinrUplink, ZeroNoisePower) {
  auto cfg = sinr_config(2, 2, 6, 4, LinkDirection::Uplink);
  cfg.noise_power = 0.0;
  Rng rng({5, 0});
  for (const auto& s : sinr_sample_uplink(cfg, rng)) {
    EXPECT_EQ(s.noise, 0.0);
    EXPECT_GT(s.ici, 0.0);
    EXPECT_GT(s.cmi, 0.0);
    expect_sinr_identity(s);
  }
  cfg.direction = LinkDirection::Downlink;
  EXPECT_THROW(sinr_sample_uplink(cfg, rng), InvalidParameter);
}

TEST(RunSinr, RowCountAndReproducibility) {
  for (auto dir : {LinkDirection::Downlink, LinkDirection::Uplink}) {
    auto cfg = sinr_config(2, 3, 8, 6, dir);
    cfg.trials = kTrialBlockSize + 5;
    const auto a = run_sinr(cfg, {1});
    const auto b = run_sinr(cfg, {4});
    ASSERT_EQ(a.samples.size(), static_cast<std::size_t>(cfg.trials) * 3);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      ASSERT_EQ(a.samples[i].sinr, b.samples[i].sinr);
      ASSERT_EQ(a.samples[i].si, b.samples[i].si);
    }
  }
}

TEST(ExperimentConfig, Validation) {
  auto cfg = sinr_config(1, 1, 2, 2, LinkDirection::Uplink);
  EXPECT_NO_THROW(cfg.validate());
  cfg.noise_power = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
  cfg.noise_power = 1.0;
  cfg.geometry.cells = 0;
  EXPECT_THROW(cfg.validate(), InvalidParameter);
}

TEST(ExperimentConfig, RadioSpecFallsBackToNodeSpec) {
  auto cfg = sinr_config(1, 1, 2, 2, LinkDirection::Downlink);
  EXPECT_EQ(cfg.radio_spec(), cfg.si_spec);
  cfg.radio_si_spec = RicianSpec(2.0, 0.1);
  EXPECT_EQ(cfg.radio_spec().mu(), 2.0);
}

}  // namespace
}  // namespace fdsim
