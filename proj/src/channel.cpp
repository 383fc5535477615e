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

#include "fdsim/channel.hpp"

#include <cmath>
#include <string>

#include "fdsim/error.hpp"

namespace fdsim {

RicianSpec::RicianSpec(double mu, double nu) : mu_(mu), nu_(nu) {
  detail::require(std::isfinite(mu) && std::isfinite(nu),
                  "Rician parameters must be finite");
  detail::require(mu >= 0.0, "Rician mean mu must be non-negative, got " +
                                 std::to_string(mu));
  detail::require(nu > 0.0, "Rician spread nu must be positive, got " +
                                std::to_string(nu));
}

RicianSpec RicianSpec::from_factor(double varpi, double omega) {
  detail::require(std::isfinite(varpi) && std::isfinite(omega),
                  "Rician factor and power must be finite");
  detail::require(varpi >= 0.0, "Rician factor must be non-negative");
  detail::require(omega > 0.0, "fading power must be positive");
  return RicianSpec(std::sqrt(varpi * omega / (varpi + 1.0)),
                    std::sqrt(omega / (varpi + 1.0)));
}

RicianSpec rician_from_factor(double varpi, double omega) {
  return RicianSpec::from_factor(varpi, omega);
}

Complex sample_complex_gaussian(double mu, double nu, Rng& rng) {
  detail::require(nu > 0.0, "nu must be positive");
  const double sigma = nu * M_SQRT1_2;
  const double re = mu + sigma * rng.normal();
  const double im = sigma * rng.normal();
  return {re, im};
}

ComplexMatrix generate_matrix(int rows, int cols, const RicianSpec& spec,
                              Rng& rng) {
  detail::require(rows >= 1 && cols >= 1,
                  "matrix dimensions must be positive");
  ComplexMatrix out(rows, cols);
  const double sigma = spec.nu() * M_SQRT1_2;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double re = spec.mu() + sigma * rng.normal();
    const double im = sigma * rng.normal();
    out.data()[i] = Complex(re, im);
  }
  return out;
}

ComplexMatrix generate_matrix(int rows, int cols, const RicianSpec& spec,
                              RngHandle handle) {
  Rng rng(handle);
  return generate_matrix(rows, cols, spec, rng);
}

}  // namespace fdsim
