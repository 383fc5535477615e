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

#include "fdsim/beamforming.hpp"
#include "fdsim/closedform.hpp"
#include "fdsim/mc_engine.hpp"
#include "fdsim/stats.hpp"
#include "support.hpp"

namespace fdsim {
namespace {

constexpr std::int64_t kMillion = 1'000'000;

// Effective ZF channel gains for M = 16, N = 8, K = 3: the useful downlink
// gain |h_k v_k|^2 is Gamma(M - K + 1, 1), the useful uplink gain |w_k h_k|^2
// is Gamma(N - K + 1, 1), and an independent Rayleigh vector seen through a
// unit-norm decoder row is Gamma(1, 1).
struct ZfGains {
  std::vector<double> down, up, cross;
};

const ZfGains& zf_gains() {
  static const ZfGains gains = [] {
    const int m = 16, n = 8, k = 3;
    ZfGains g;
    g.down.resize(kMillion);
    g.up.resize(kMillion);
    g.cross.resize(kMillion);
    for (std::int64_t t = 0; t < kMillion; ++t) {
      Rng rng({2024, static_cast<std::uint64_t>(t)});
      const ComplexMatrix h_down = generate_matrix(k, m, RicianSpec::rayleigh(), rng);
      const ComplexMatrix h_up = generate_matrix(n, k, RicianSpec::rayleigh(), rng);
      const ComplexMatrix h_other = generate_matrix(n, 1, RicianSpec::rayleigh(), rng);
      const BeamformerPair bf = zf_beamformers(h_down, h_up);
      g.down[t] = std::norm((h_down.row(0) * bf.precoder.col(0))(0, 0));
      g.up[t] = std::norm((bf.decoder.row(0) * h_up.col(0))(0, 0));
      g.cross[t] = std::norm((bf.decoder.row(0) * h_other)(0, 0));
    }
    return g;
  }();
  return gains;
}

void expect_gamma_fit(const std::vector<double>& x, GammaParams law,
                      double mean_tol, double ks_tol) {
  const auto st = test::sample_stats(x);
  EXPECT_LT(test::rel_err(st.mean, law.mean()), mean_tol);
  EXPECT_LT(test::rel_err(st.var, law.variance()), mean_tol);
  EXPECT_LE(ks_distance(x, [&](double t) { return gamma_cdf(t, law); }), ks_tol);
}

TEST(ZfEffectiveGain, DownlinkUsefulIsGammaMMinusKPlusOne) {
  expect_gamma_fit(zf_gains().down, {14, 1}, 0.01, 0.01);
}

TEST(ZfEffectiveGain, UplinkUsefulIsGammaNMinusKPlusOne) {
  expect_gamma_fit(zf_gains().up, {6, 1}, 0.01, 0.01);
}

TEST(ZfEffectiveGain, CrossLinkIsUnitExponential) {
  expect_gamma_fit(zf_gains().cross, {1, 1}, 0.01, 0.01);
}

TEST(ResidualSi, SingleStreamMeanIsChannelPower) {
  const auto& r = test::cached_empirical(16, 8, 1, 0.5, 1.0, kMillion);
  EXPECT_LT(test::rel_err(r.emp_m1, 1.25), 0.01);
  EXPECT_LE(r.gof.ks_statistic, 0.01);
}

TEST(ResidualSi, ThreeStreamMeanScalesWithK) {
  const auto& r = test::cached_empirical(16, 8, 3, 0.5, 1.0, kMillion);
  EXPECT_LT(test::rel_err(r.emp_m1, 3.75), 0.01);
  EXPECT_LE(r.gof.ks_statistic, 0.03);
}

TEST(ResidualSi, RayleighSisoIsExactlyExponential) {
  const auto& r = test::cached_empirical(1, 1, 1, 0.0, 1.0, kMillion);
  EXPECT_LT(test::rel_err(r.emp_m1, 1.0), 0.01);
  EXPECT_LE(r.gof.ks_statistic, 0.01);
}

// Closed-form first and second moments lie within three standard errors of a
// 10^6-trial simulation for several geometries.
TEST(ResidualSi, ClosedFormMomentsWithinThreeStandardErrors) {
  struct Case { int M, N, K; double mu, nu; };
  for (const Case c : {Case{16, 8, 1, 0.5, 1.0}, Case{16, 8, 3, 0.5, 1.0},
                       Case{4, 4, 2, 0.5, 1.0}, Case{8, 6, 2, 1.0, 0.5}}) {
    const auto& r = test::cached_empirical(c.M, c.N, c.K, c.mu, c.nu, kMillion);
    const auto st = test::sample_stats(r.samples);
    const auto m = si_moments({1, c.K, c.M, c.N}, RicianSpec(c.mu, c.nu));
    EXPECT_NEAR(st.mean, m.m1, 3 * st.mean_se) << c.M << c.N << c.K;
    EXPECT_NEAR(st.m2, m.m2, 3 * st.m2_se) << c.M << c.N << c.K;
    EXPECT_NEAR(st.var, m.var, 3 * st.var_se) << c.M << c.N << c.K;
  }
}

TEST(ResidualSi, SecondMomentDualOracle) {
  const auto& r = test::cached_empirical(16, 8, 3, 0.5, 1.0, kMillion);
  const double exact =
      test::to_double(test::exact_moments(16, 8, 3, {1, 4}, {1, 1}).m2);
  EXPECT_DOUBLE_EQ(exact, 15221.0 / 765.0);
  EXPECT_LT(test::rel_err(r.emp_m2, exact), 0.03);
  EXPECT_LT(test::rel_err(moment2({1, 3, 16, 8}, RicianSpec(0.5, 1.0)), exact), 1e-14);
}

TEST(ResidualSi, TheoreticalModeMatchesGammaLaw) {
  ExperimentConfig cfg;
  cfg.geometry = {1, 3, 16, 8};
  cfg.si_spec = RicianSpec(0.5, 1.0);
  cfg.trials = kMillion;
  cfg.seed = 11;
  cfg.mode = SimulationMode::Theoretical;
  const auto big = run_si_theoretical(cfg);
  EXPECT_LT(test::rel_err(big.emp_m1, 3.75), 0.01);

  cfg.trials = 100000;
  const auto small = run_si_theoretical(cfg);
  EXPECT_LE(small.gof.ks_statistic, 0.01);
}

ExperimentConfig sinr_config(int L, int K, int M, int N, LinkDirection dir) {
  ExperimentConfig cfg;
  cfg.geometry = {L, K, M, N};
  cfg.si_spec = RicianSpec(0.5, 1.0);
  cfg.trials = 100000;
  cfg.seed = 321;
  cfg.direction = dir;
  return cfg;
}

double mean_of(const SinrReport& r, double SinrSample::*field) {
  long double s = 0;
  for (const auto& x : r.samples) s += x.*field;
  return static_cast<double>(s / r.samples.size());
}

TEST(Sinr, DownlinkUsefulGainMean) {
  const auto r = run_sinr(sinr_config(1, 3, 16, 8, LinkDirection::Downlink));
  EXPECT_LT(test::rel_err(mean_of(r, &SinrSample::useful), 14.0), 0.01);
}

TEST(Sinr, DownlinkInterCellGainMean) {
  const auto r = run_sinr(sinr_config(2, 1, 16, 8, LinkDirection::Downlink));
  EXPECT_LT(test::rel_err(mean_of(r, &SinrSample::ici), 1.0), 0.02);
}

TEST(Sinr, UplinkUsefulAndNoiseMeans) {
  auto cfg = sinr_config(1, 1, 16, 8, LinkDirection::Uplink);
  cfg.noise_power = 0.3;
  const auto r = run_sinr(cfg);
  EXPECT_LT(test::rel_err(mean_of(r, &SinrSample::useful), 8.0), 0.01);
  EXPECT_LT(test::rel_err(mean_of(r, &SinrSample::noise), 0.3), 0.01);
}

TEST(Sinr, UplinkSiMeanMatchesClosedForm) {
  const auto r = run_sinr(sinr_config(1, 3, 16, 8, LinkDirection::Uplink));
  EXPECT_LT(test::rel_err(mean_of(r, &SinrSample::si),
                          moment1(3, RicianSpec(0.5, 1.0))),
            0.02);
}

}  // namespace
}  // namespace fdsim
