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

#include "fdsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "fdsim/error.hpp"

namespace fdsim {
namespace {

constexpr double kSeriesCutoff = 15.0;

double log_i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::log(sum);
}

// e^{-x} sqrt(2 pi x) I0(x) ~ sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double log_i0_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

}  // namespace

double log_bessel_i0(double x) {
  detail::require(!std::isnan(x), "log_bessel_i0 of NaN");
  x = std::abs(x);
  return x < kSeriesCutoff ? log_i0_series(x) : log_i0_asymptotic(x);
}

double si_pdf_siso(double x, double varpi, double omega) {
  detail::require(std::isfinite(varpi) && varpi >= 0.0,
                  "Rician factor must be non-negative");
  detail::require(std::isfinite(omega) && omega > 0.0,
                  "fading power must be positive");
  detail::require(x >= 0.0, "density argument must be non-negative");
  if (std::isinf(x)) return 0.0;
  const double rate = (1.0 + varpi) / omega;
  const double bessel_arg = 2.0 * std::sqrt(varpi * rate * x);
  return std::exp(std::log(rate) - varpi - rate * x +
                  log_bessel_i0(bessel_arg));
}

double gamma_pdf(double x, const GammaParams& p) {
  p.validate();
  detail::require(x >= 0.0, "density argument must be non-negative");
  if (x == 0.0) {
    if (p.shape < 1.0) return std::numeric_limits<double>::infinity();
    return p.shape == 1.0 ? 1.0 / p.scale : 0.0;
  }
  if (std::isinf(x)) return 0.0;
  const double z = x / p.scale;
  return std::exp((p.shape - 1.0) * std::log(z) - z -
                  std::lgamma(p.shape)) /
         p.scale;
}

double gamma_cdf(double x, const GammaParams& p) {
  p.validate();
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(p.shape, x / p.scale);
}

double gamma_sample(const GammaParams& p, Rng& rng) {
  p.validate();
  const bool boosted = p.shape < 1.0;
  const double shape = boosted ? p.shape + 1.0 : p.shape;
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double draw = 0.0;
  for (;;) {
    const double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      draw = d * v;
      break;
    }
  }
  if (boosted) draw *= std::pow(rng.uniform(), 1.0 / p.shape);
  return draw * p.scale;
}

double ks_distance(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  detail::require(!samples.empty(), "KS distance needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double below = f - static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n - f;
    worst = std::max({worst, below, above});
  }
  return std::clamp(worst, 0.0, 1.0);
}

Histogram histogram(std::span<const double> samples, int bin_count) {
  detail::require(!samples.empty(), "histogram needs at least one sample");
  const double top = *std::max_element(samples.begin(), samples.end());
  return histogram(samples, bin_count, top);
}

Histogram histogram(std::span<const double> samples, int bin_count,
                    double upper) {
  detail::require(!samples.empty(), "histogram needs at least one sample");
  detail::require(bin_count >= 1, "histogram needs at least one bin");
  detail::require(std::isfinite(upper) && upper >= 0.0,
                  "histogram upper edge must be finite and non-negative");
  if (upper == 0.0) upper = 1.0;

  Histogram h;
  h.bin_edges.resize(static_cast<std::size_t>(bin_count) + 1);
  const double width = upper / bin_count;
  for (int i = 0; i <= bin_count; ++i) h.bin_edges[i] = width * i;
  h.bin_edges.back() = upper;
  h.counts.assign(static_cast<std::size_t>(bin_count), 0);

  for (double x : samples) {
    detail::require(x >= 0.0 && x <= upper,
                    "histogram sample outside [0, upper]");
    const auto bin = std::min<std::size_t>(
        static_cast<std::size_t>(x / width), h.counts.size() - 1);
    ++h.counts[bin];
  }
  h.total = samples.size();
  return h;
}

}  // namespace fdsim
