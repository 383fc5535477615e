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

#include "fdsim/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "fdsim/error.hpp"

namespace fdsim {
namespace {

void require_gamma_regime(const RicianSpec& spec) {
  detail::require(spec.mu() == 0.0 || spec.nu() >= kMinSpreadForGamma,
                  "nu too small for a Gamma match of a near-deterministic "
                  "Rician channel");
}

// Shared quantities of the MIMO formulas. `spread` is nu^2 (2 mu^2 + nu^2),
// the variance of a single |H_nm|^2.
struct Terms {
  double k, m, n;
  double power;   // mu^2 + nu^2
  double mu4;     // mu^4
  double spread;  // nu^2 (2 mu^2 + nu^2)
};

Terms terms(const SystemGeometry& g, const RicianSpec& s) {
  const double mu2 = s.mu() * s.mu();
  const double nu2 = s.nu() * s.nu();
  return {static_cast<double>(g.users),
          static_cast<double>(g.tx_antennas),
          static_cast<double>(g.rx_antennas),
          mu2 + nu2,
          mu2 * mu2,
          nu2 * (2.0 * mu2 + nu2)};
}

// (2NM + K(M-K+2)(NM-N-M-1)/(M+1)) mu^4 + (N+1)(M+1) nu^2 (2mu^2 + nu^2);
// the common numerator/denominator of the Gamma shape and scale.
double mimo_dispersion(const Terms& t) {
  const double nm_excess = t.n * t.m - t.n - t.m - 1.0;
  const double mean_coeff =
      2.0 * t.n * t.m + t.k * (t.m - t.k + 2.0) * nm_excess / (t.m + 1.0);
  return mean_coeff * t.mu4 + (t.n + 1.0) * (t.m + 1.0) * t.spread;
}

}  // namespace

void GammaParams::validate() const {
  detail::require(std::isfinite(shape) && shape > 0.0,
                  "Gamma shape must be positive and finite");
  detail::require(std::isfinite(scale) && scale > 0.0,
                  "Gamma scale must be positive and finite");
}

void SystemGeometry::validate() const {
  detail::require(cells >= 1, "need at least one cell");
  detail::require(users >= 1, "need at least one stream (K >= 1)");
  detail::require(tx_antennas >= 1 && rx_antennas >= 1,
                  "antenna counts must be positive");
  detail::require(users <= std::min(tx_antennas, rx_antennas),
                  "K must not exceed min(N, M)");
}

std::string_view to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::SingleUser:
      return "single-user";
    case SpecialCase::RayleighChannel:
      return "rayleigh";
    case SpecialCase::MassiveMimo:
      return "massive-mimo";
  }
  return "unknown";
}

GammaParams gamma_siso(const RicianSpec& spec) {
  require_gamma_regime(spec);
  const double mu2 = spec.mu() * spec.mu();
  const double nu2 = spec.nu() * spec.nu();
  const double power = mu2 + nu2;
  const double spread = (2.0 * mu2 + nu2) * nu2;
  return {power * power / spread, spread / power};
}

GammaParams gamma_mimo(const SystemGeometry& geom, const RicianSpec& spec) {
  geom.validate();
  require_gamma_regime(spec);
  const Terms t = terms(geom, spec);
  const double dispersion = mimo_dispersion(t);
  const double weight = (t.n + 1.0) * (t.m - t.k + 2.0);
  // shape = K P^2 weight / D, scale = D / (weight P); grouped so that the
  // product is exactly K P up to one rounding per factor.
  const double ratio = t.power / dispersion;
  return {t.k * weight * t.power * ratio, 1.0 / (weight * ratio)};
}

GammaParams gamma_special(SpecialCase which, const SystemGeometry& geom,
                          const RicianSpec& spec) {
  switch (which) {
    case SpecialCase::SingleUser: {
      geom.validate();
      detail::require(geom.users == 1, "single-user case requires K = 1");
      require_gamma_regime(spec);
      const Terms t = terms(geom, spec);
      const double mu2 = spec.mu() * spec.mu();
      const double nu2 = spec.nu() * spec.nu();
      const double np1mp1 = (t.n + 1.0) * (t.m + 1.0);
      const double denom = (3.0 * t.n * t.m - t.n - t.m - 1.0) * t.mu4 +
                           2.0 * np1mp1 * mu2 * nu2 + np1mp1 * nu2 * nu2;
      const double shape = np1mp1 * t.power * t.power / denom;
      const double scale =
          t.power + 2.0 * (t.m * t.n - t.n - t.m - 1.0) * t.mu4 /
                        (np1mp1 * t.power);
      return {shape, scale};
    }
    case SpecialCase::RayleighChannel: {
      geom.validate();
      const double k = geom.users;
      const double widest = std::max(geom.rx_antennas, geom.tx_antennas);
      return {k * (widest - k + 2.0) / (widest + 1.0),
              (widest + 1.0) / (widest - k + 2.0)};
    }
    case SpecialCase::MassiveMimo: {
      detail::require(geom.users >= 1, "need at least one stream (K >= 1)");
      require_gamma_regime(spec);
      const double k = geom.users;
      const double mu2 = spec.mu() * spec.mu();
      const double nu2 = spec.nu() * spec.nu();
      const double power = mu2 + nu2;
      const double denom =
          (k + 2.0) * mu2 * mu2 + 2.0 * mu2 * nu2 + nu2 * nu2;
      return {k * power * power / denom, denom / power};
    }
  }
  throw InvalidParameter("unknown special case");
}

double moment1(int users, const RicianSpec& spec) {
  detail::require(users >= 1, "need at least one stream (K >= 1)");
  return static_cast<double>(users) * spec.fading_power();
}

double moment2(const SystemGeometry& geom, const RicianSpec& spec) {
  geom.validate();
  const Terms t = terms(geom, spec);
  const double stream_factor = (t.m + 1.0) / (t.m - t.k + 2.0) + t.k;
  const double mean_coeff =
      2.0 * t.n * t.m / ((t.n + 1.0) * (t.m + 1.0));
  return t.k * stream_factor * (mean_coeff * t.mu4 + t.spread);
}

double si_variance(const SystemGeometry& geom, const RicianSpec& spec) {
  geom.validate();
  const Terms t = terms(geom, spec);
  const double gap = t.m - t.k + 2.0;
  const double mean_coeff =
      (t.k * gap * (t.n * t.m - t.n - t.m - 1.0) +
       2.0 * t.n * t.m * (t.m + 1.0)) /
      ((t.n + 1.0) * (t.m + 1.0));
  return t.k / gap * (mean_coeff * t.mu4 + (t.m + 1.0) * t.spread);
}

MomentSet si_moments(const SystemGeometry& geom, const RicianSpec& spec) {
  return {moment1(geom.users, spec), moment2(geom, spec),
          si_variance(geom, spec)};
}

GammaParams moment_match(double m1, double var) {
  detail::require(std::isfinite(m1) && m1 > 0.0, "mean must be positive");
  detail::require(std::isfinite(var) && var > 0.0,
                  "variance must be positive");
  return {m1 * m1 / var, var / m1};
}

}  // namespace fdsim
