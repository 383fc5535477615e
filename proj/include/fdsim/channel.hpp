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

#include <complex>

#include <Eigen/Dense>

#include "fdsim/rng.hpp"

namespace fdsim {

using Complex = std::complex<double>;

/// Dense row-major complex matrix; holds channels, beamformers and symbol
/// vectors alike.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Statistics of a complex Gaussian channel entry CN(mu, nu^2).
///
/// The mean sits on the real axis; the real and imaginary parts each carry
/// variance nu^2 / 2. Equivalently parameterised by the Rician factor
/// varpi = mu^2 / nu^2 and the total power omega = mu^2 + nu^2.
class RicianSpec {
 public:
  /// Throws InvalidParameter unless mu >= 0 and nu > 0 (both finite).
  RicianSpec(double mu, double nu);

  static RicianSpec rayleigh() { return RicianSpec(0.0, 1.0); }
  static RicianSpec from_factor(double varpi, double omega);

  double mu() const { return mu_; }
  double nu() const { return nu_; }
  double rician_factor() const { return (mu_ * mu_) / (nu_ * nu_); }
  double fading_power() const { return mu_ * mu_ + nu_ * nu_; }

  friend bool operator==(const RicianSpec&, const RicianSpec&) = default;

 private:
  double mu_;
  double nu_;
};

/// (varpi, omega) -> (mu, nu). Rejects varpi < 0 and omega <= 0.
RicianSpec rician_from_factor(double varpi, double omega);

Complex sample_complex_gaussian(double mu, double nu, Rng& rng);

/// I.i.d. entries drawn from `spec`, filled in row-major order.
ComplexMatrix generate_matrix(int rows, int cols, const RicianSpec& spec,
                              Rng& rng);
ComplexMatrix generate_matrix(int rows, int cols, const RicianSpec& spec,
                              RngHandle handle);

}  // namespace fdsim
