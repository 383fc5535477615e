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

// Test-only helpers: sample statistics, an exact rational evaluation of the
// residual SI moment formulas, and a cache of expensive Monte Carlo runs that
// several suites share.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

#include "fdsim/mc_engine.hpp"

namespace fdsim::test {

struct SampleStats {
  double mean = 0.0;
  double var = 0.0;        // population variance
  double mean_se = 0.0;    // standard error of the mean
  double m2 = 0.0;         // raw second moment
  double m2_se = 0.0;      // standard error of the raw second moment
  double var_se = 0.0;     // standard error of the variance
};

inline SampleStats sample_stats(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (double v : x) {
    const long double v2 = static_cast<long double>(v) * v;
    s1 += v;
    s2 += v2;
    s3 += v2 * v;
    s4 += v2 * v2;
  }
  SampleStats st;
  st.mean = static_cast<double>(s1 / n);
  st.m2 = static_cast<double>(s2 / n);
  st.var = st.m2 - st.mean * st.mean;
  st.mean_se = std::sqrt(st.var / n);
  const double m4 = static_cast<double>(s4 / n);
  st.m2_se = std::sqrt((m4 - st.m2 * st.m2) / n);
  const double m1 = st.mean, m3 = static_cast<double>(s3 / n);
  const double central4 =
      m4 - 4 * m1 * m3 + 6 * m1 * m1 * st.m2 - 3 * m1 * m1 * m1 * m1;
  st.var_se = std::sqrt(std::max(central4 - st.var * st.var, 0.0) / n);
  return st;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

using Rational = boost::rational<long long>;

/// Exact first/second moments and variance for rational mu^2 and nu^2,
/// typed independently from the library's floating-point grouping.
struct ExactMoments {
  Rational m1, m2, var, shape, scale;
};

inline ExactMoments exact_moments(long long M, long long N, long long K,
                                  Rational mu2, Rational nu2) {
  const Rational p = mu2 + nu2;
  const Rational q = nu2 * (2 * mu2 + nu2);
  ExactMoments e;
  e.m1 = K * p;
  e.m2 = K * (Rational(M + 1, M - K + 2) + K) *
         (Rational(2 * N * M, N * M + N + M + 1) * mu2 * mu2 + q);
  e.var = Rational(K, M - K + 2) *
          (Rational(K * (M - K + 2) * (N * M - N - M - 1) + 2 * N * M * (M + 1),
                    (N + 1) * (M + 1)) *
               mu2 * mu2 +
           (M + 1) * q);
  const Rational dispersion =
      (2 * N * M + Rational(K * (M - K + 2), M + 1) * (N * M - N - M - 1)) *
          mu2 * mu2 +
      (N + 1) * (M + 1) * q;
  e.shape = K * (N + 1) * (M - K + 2) * p * p / dispersion;
  e.scale = dispersion / ((N + 1) * (M - K + 2) * p);
  return e;
}

inline double to_double(Rational r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

/// Empirical residual SI runs keyed by (M, N, K, mu, nu, trials, seed).
inline const McReport& cached_empirical(int M, int N, int K, double mu,
                                        double nu, std::int64_t trials,
                                        std::uint64_t seed = 20240601) {
  using Key = std::tuple<int, int, int, double, double, std::int64_t,
                         std::uint64_t>;
  static std::map<Key, McReport> cache;
  const Key key{M, N, K, mu, nu, trials, seed};
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExperimentConfig cfg;
    cfg.geometry = {1, K, M, N};
    cfg.si_spec = RicianSpec(mu, nu);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.mode = SimulationMode::Empirical;
    it = cache.emplace(key, run_si_empirical(cfg)).first;
  }
  return it->second;
}

}  // namespace fdsim::test
