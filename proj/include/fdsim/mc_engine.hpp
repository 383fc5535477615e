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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdsim/beamforming.hpp"
#include "fdsim/closedform.hpp"
#include "fdsim/rng.hpp"
#include "fdsim/stats.hpp"

namespace fdsim {

enum class SimulationMode { Empirical, Theoretical };
enum class LinkDirection { Downlink, Uplink };

struct ExperimentConfig {
  SystemGeometry geometry;
  /// Residual SI statistics of the multi-antenna node's N x M SI channel.
  RicianSpec si_spec = RicianSpec::rayleigh();
  /// SISO residual SI of the FD radios; falls back to `si_spec`.
  std::optional<RicianSpec> radio_si_spec;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  double noise_power = 1.0;
  SimulationMode mode = SimulationMode::Empirical;
  LinkDirection direction = LinkDirection::Uplink;

  void validate() const;
  const RicianSpec& radio_spec() const {
    return radio_si_spec ? *radio_si_spec : si_spec;
  }
};

/// Power gains of one received stream; sinr = useful / (sum of the rest).
struct SinrSample {
  double useful = 0.0;
  double mui = 0.0;
  double ici = 0.0;
  double cmi = 0.0;
  double si = 0.0;
  double noise = 0.0;
  double sinr = 0.0;
};

struct McReport {
  std::vector<double> samples;  // indexed by trial
  double emp_m1 = 0.0;
  double emp_m2 = 0.0;
  double emp_var = 0.0;  // emp_m2 - emp_m1^2
  MomentSet closed_form;
  GammaParams gamma;
  GofReport gof;
  ExperimentConfig config_echo;
  std::uint64_t singular_redraws = 0;
};

struct SinrReport {
  std::vector<SinrSample> samples;  // trial-major, K entries per trial
  std::uint64_t singular_redraws = 0;
  ExperimentConfig config_echo;
};

/// Execution knobs that never change results. threads == 0 picks the
/// hardware concurrency.
struct RunOptions {
  unsigned threads = 0;
};

/// Trials are processed in blocks of this many; partial sums are merged in
/// block order, so results do not depend on the worker count.
inline constexpr std::int64_t kTrialBlockSize = 4096;

/// Per trial: Rician N x M SI channel, Rayleigh K x M downlink and N x K
/// uplink channels, zero-forcing beamformers, then ||w_1 H_si V||^2.
/// Rank-deficient draws are redrawn from the trial's next substream.
McReport run_si_empirical(const ExperimentConfig& cfg, RunOptions opts = {});

/// Per trial: one draw from gamma_mimo(geometry, si_spec).
McReport run_si_theoretical(const ExperimentConfig& cfg,
                            RunOptions opts = {});

/// Dispatches on cfg.mode.
McReport run_si(const ExperimentConfig& cfg, RunOptions opts = {});

/// One realisation of every downlink channel seen by the K radios of the
/// reference cell. Throws SingularChannel on a rank-deficient draw.
std::vector<SinrSample> sinr_sample_downlink(const ExperimentConfig& cfg,
                                             Rng& rng);

/// One realisation of every uplink term at the reference node, one entry per
/// decoded stream.
std::vector<SinrSample> sinr_sample_uplink(const ExperimentConfig& cfg,
                                           Rng& rng);

/// cfg.trials independent SINR realisations in cfg.direction.
SinrReport run_sinr(const ExperimentConfig& cfg, RunOptions opts = {});

}  // namespace fdsim
