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

#include <string_view>

#include "fdsim/channel.hpp"

namespace fdsim {

/// Gamma law with shape `shape` (kappa) and scale `scale` (theta).
struct GammaParams {
  double shape = 1.0;
  double scale = 1.0;

  double mean() const { return shape * scale; }
  double variance() const { return shape * scale * scale; }

  /// Throws InvalidParameter unless both are finite and positive.
  void validate() const;
};

struct MomentSet {
  double m1 = 0.0;
  double m2 = 0.0;
  double var = 0.0;
};

/// Cells, served radios (streams) per cell, and node transmit/receive
/// antenna counts.
struct SystemGeometry {
  int cells = 1;
  int users = 1;
  int tx_antennas = 1;
  int rx_antennas = 1;

  /// Requires all counts >= 1 and users <= min(tx_antennas, rx_antennas).
  void validate() const;

  friend bool operator==(const SystemGeometry&, const SystemGeometry&) =
      default;
};

enum class SpecialCase { SingleUser, RayleighChannel, MassiveMimo };

std::string_view to_string(SpecialCase c);

/// Residual SI specs with mu > 0 and nu below this are rejected by the Gamma
/// matchers: the shape parameter diverges as the channel turns deterministic.
inline constexpr double kMinSpreadForGamma = 1e-6;

/// Gamma match of |h|^2 for a single-antenna Rician SI channel.
GammaParams gamma_siso(const RicianSpec& spec);

/// Gamma match of ||w_k H V||^2 at a node with M transmit and N receive
/// antennas serving K streams with unit-norm linear beamformers.
GammaParams gamma_mimo(const SystemGeometry& geom, const RicianSpec& spec);

/// Closed-form special cases of the MIMO match.
///
/// SingleUser requires K = 1. RayleighChannel uses max(N, M) and ignores the
/// Rician statistics entirely, so it does not reduce to gamma_mimo at mu = 0
/// when N > M. MassiveMimo ignores the antenna counts.
GammaParams gamma_special(SpecialCase which, const SystemGeometry& geom,
                          const RicianSpec& spec);

/// E{||w_k H V||^2} = K (mu^2 + nu^2).
double moment1(int users, const RicianSpec& spec);

/// E{||w_k H V||^4}.
double moment2(const SystemGeometry& geom, const RicianSpec& spec);

/// Var{||w_k H V||^2}, evaluated from its own closed form rather than by
/// subtracting moments.
double si_variance(const SystemGeometry& geom, const RicianSpec& spec);

MomentSet si_moments(const SystemGeometry& geom, const RicianSpec& spec);

/// Method of moments: shape = m1^2 / var, scale = var / m1.
GammaParams moment_match(double m1, double var);

}  // namespace fdsim
