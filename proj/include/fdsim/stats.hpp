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
#include <functional>
#include <span>
#include <vector>

#include "fdsim/closedform.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

struct Histogram {
  std::vector<double> bin_edges;  // strictly ascending, size = counts + 1
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

struct GofReport {
  double ks_statistic = 0.0;
  double mean_rel_err = 0.0;
  double var_rel_err = 0.0;
  std::uint64_t sample_count = 0;
};

/// log I0(x) for x >= 0: power series below 15, large-argument expansion of
/// e^{-x} I0(x) above, so the result stays finite for any finite x.
double log_bessel_i0(double x);

/// Density of |h|^2 for a Rician h with factor `varpi` and power `omega`.
double si_pdf_siso(double x, double varpi, double omega);

double gamma_pdf(double x, const GammaParams& p);

/// Regularised lower incomplete gamma P(shape, x / scale).
double gamma_cdf(double x, const GammaParams& p);

/// Marsaglia-Tsang squeeze sampler; shapes below one are boosted by
/// sampling shape + 1 and multiplying by U^(1/shape).
double gamma_sample(const GammaParams& p, Rng& rng);

/// Two-sided sup distance between the empirical CDF of `samples` and `cdf`.
double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf);

/// Equal-width bins over [0, max(samples)].
Histogram histogram(std::span<const double> samples, int bin_count);

/// Equal-width bins over [0, upper]; every sample must lie in that range.
Histogram histogram(std::span<const double> samples, int bin_count,
                    double upper);

}  // namespace fdsim
