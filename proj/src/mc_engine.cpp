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

#include "fdsim/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fdsim/channel.hpp"
#include "fdsim/error.hpp"

namespace fdsim {
namespace {

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t redraws = 0;
};

std::int64_t block_count(std::int64_t trials) {
  return (trials + kTrialBlockSize - 1) / kTrialBlockSize;
}

unsigned worker_count(RunOptions opts, std::int64_t blocks) {
  unsigned n = opts.threads != 0 ? opts.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::int64_t>(static_cast<std::int64_t>(n), blocks));
}

// Runs fn(block, begin, end) for every block of [0, trials); any exception
// thrown by a worker is rethrown on the calling thread.
template <class Fn>
void for_each_block(std::int64_t trials, RunOptions opts, Fn&& fn) {
  const std::int64_t blocks = block_count(trials);
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        const std::int64_t begin = b * kTrialBlockSize;
        fn(b, begin, std::min(trials, begin + kTrialBlockSize));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  const unsigned n = worker_count(opts, blocks);
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

// Retries `draw` on successive substreams of `trial` until no channel is
// singular. Returns the number of redraws needed.
template <class Draw>
std::uint64_t with_redraws(std::uint64_t seed, StreamDomain domain,
                           std::uint64_t trial, Draw&& draw) {
  for (unsigned attempt = 0; attempt < kMaxRedrawAttempts; ++attempt) {
    Rng rng({seed, trial_stream(domain, trial, attempt)});
    try {
      draw(rng);
      return attempt;
    } catch (const SingularChannel&) {
    }
  }
  throw SingularChannel("trial " + std::to_string(trial) +
                        " stayed rank deficient after " +
                        std::to_string(kMaxRedrawAttempts) + " redraws");
}

McReport summarise(const ExperimentConfig& cfg, std::vector<double> samples,
                   const std::vector<BlockSums>& blocks) {
  McReport r;
  BlockSums total;
  for (const auto& b : blocks) {
    total.sum += b.sum;
    total.sum_sq += b.sum_sq;
    total.redraws += b.redraws;
  }
  const double n = static_cast<double>(samples.size());
  r.emp_m1 = total.sum / n;
  r.emp_m2 = total.sum_sq / n;
  r.emp_var = r.emp_m2 - r.emp_m1 * r.emp_m1;
  r.closed_form = si_moments(cfg.geometry, cfg.si_spec);
  r.gamma = gamma_mimo(cfg.geometry, cfg.si_spec);
  const GammaParams law = r.gamma;
  r.gof.ks_statistic =
      ks_distance(samples, [&law](double x) { return gamma_cdf(x, law); });
  r.gof.mean_rel_err =
      std::abs(r.emp_m1 - r.closed_form.m1) / r.closed_form.m1;
  r.gof.var_rel_err =
      std::abs(r.emp_var - r.closed_form.var) / r.closed_form.var;
  r.gof.sample_count = samples.size();
  r.samples = std::move(samples);
  r.config_echo = cfg;
  r.singular_redraws = total.redraws;
  return r;
}

Complex scaled_noise(double power, Rng& rng) {
  const Complex z = sample_complex_gaussian(0.0, 1.0, rng);
  return power > 0.0 ? std::sqrt(power) * z : Complex{};
}

void finish(SinrSample& s) {
  s.sinr = s.useful / (s.mui + s.ici + s.cmi + s.si + s.noise);
}

}  // namespace

void ExperimentConfig::validate() const {
  geometry.validate();
  detail::require(trials >= 1, "need at least one trial");
  detail::require(static_cast<std::uint64_t>(trials) <= kMaxTrialsPerDomain,
                  "trial count exceeds the substream address space");
  detail::require(std::isfinite(noise_power) && noise_power >= 0.0,
                  "noise power must be finite and non-negative");
}

McReport run_si_empirical(const ExperimentConfig& cfg, RunOptions opts) {
  cfg.validate();
  detail::require(cfg.mode == SimulationMode::Empirical,
                  "run_si_empirical needs an empirical-mode config");
  const auto& g = cfg.geometry;
  std::vector<double> samples(static_cast<std::size_t>(cfg.trials));
  std::vector<BlockSums> blocks(block_count(cfg.trials));

  for_each_block(cfg.trials, opts, [&](std::int64_t b, std::int64_t begin,
                                       std::int64_t end) {
    BlockSums acc;
    for (std::int64_t t = begin; t < end; ++t) {
      double gain = 0.0;
      acc.redraws += with_redraws(
          cfg.seed, StreamDomain::SiEmpirical, t, [&](Rng& rng) {
            const ComplexMatrix h_down = generate_matrix(
                g.users, g.tx_antennas, RicianSpec::rayleigh(), rng);
            const ComplexMatrix h_up = generate_matrix(
                g.rx_antennas, g.users, RicianSpec::rayleigh(), rng);
            const ComplexMatrix h_si =
                generate_matrix(g.rx_antennas, g.tx_antennas, cfg.si_spec, rng);
            const BeamformerPair bf = zf_beamformers(h_down, h_up);
            gain = residual_si_gain(bf.decoder.row(0), h_si, bf.precoder);
          });
      samples[t] = gain;
      acc.sum += gain;
      acc.sum_sq += gain * gain;
    }
    blocks[b] = acc;
  });
  return summarise(cfg, std::move(samples), blocks);
}

McReport run_si_theoretical(const ExperimentConfig& cfg, RunOptions opts) {
  cfg.validate();
  detail::require(cfg.mode == SimulationMode::Theoretical,
                  "run_si_theoretical needs a theoretical-mode config");
  const GammaParams law = gamma_mimo(cfg.geometry, cfg.si_spec);
  std::vector<double> samples(static_cast<std::size_t>(cfg.trials));
  std::vector<BlockSums> blocks(block_count(cfg.trials));

  for_each_block(cfg.trials, opts, [&](std::int64_t b, std::int64_t begin,
                                       std::int64_t end) {
    BlockSums acc;
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng({cfg.seed, trial_stream(StreamDomain::SiTheoretical, t)});
      const double x = gamma_sample(law, rng);
      samples[t] = x;
      acc.sum += x;
      acc.sum_sq += x * x;
    }
    blocks[b] = acc;
  });
  return summarise(cfg, std::move(samples), blocks);
}

McReport run_si(const ExperimentConfig& cfg, RunOptions opts) {
  return cfg.mode == SimulationMode::Empirical ? run_si_empirical(cfg, opts)
                                               : run_si_theoretical(cfg, opts);
}

std::vector<SinrSample> sinr_sample_downlink(const ExperimentConfig& cfg,
                                             Rng& rng) {
  detail::require(cfg.direction == LinkDirection::Downlink,
                  "sinr_sample_downlink needs a downlink config");
  const auto& g = cfg.geometry;
  const int k_count = g.users;
  const int others = g.cells - 1;
  const RicianSpec rayleigh = RicianSpec::rayleigh();

  // Own node to own radios, and the matching precoder.
  const ComplexMatrix h_own = generate_matrix(k_count, g.tx_antennas, rayleigh, rng);
  const ComplexMatrix v_own = zf_precoder(h_own);
  // Node j to the reference radios, and node j's precoder for its own radios.
  std::vector<ComplexMatrix> h_cross, v_cross;
  for (int j = 0; j < others; ++j) {
    h_cross.push_back(generate_matrix(k_count, g.tx_antennas, rayleigh, rng));
    v_cross.push_back(zf_precoder(
        generate_matrix(k_count, g.tx_antennas, rayleigh, rng)));
  }
  // Radio-to-radio links: row k = reference radio, column j*K + u = radio u
  // of cell j (cell 0 is the reference cell).
  const ComplexMatrix h_radio =
      generate_matrix(k_count, g.cells * k_count, rayleigh, rng);

  std::vector<SinrSample> out(k_count);
  for (int k = 0; k < k_count; ++k) {
    SinrSample& s = out[k];
    const auto gains = (h_own.row(k) * v_own).eval();
    for (int u = 0; u < k_count; ++u) {
      (u == k ? s.useful : s.mui) += std::norm(gains(u));
    }
    for (int j = 0; j < others; ++j) {
      s.ici += (h_cross[j].row(k) * v_cross[j]).squaredNorm();
    }
    for (Eigen::Index c = 0; c < h_radio.cols(); ++c) {
      if (c != k) s.cmi += std::norm(h_radio(k, c));
    }
  }
  // SISO residual SI and receiver noise are drawn last, one per radio.
  const RicianSpec& radio = cfg.radio_spec();
  for (int k = 0; k < k_count; ++k) {
    out[k].si = std::norm(sample_complex_gaussian(radio.mu(), radio.nu(), rng));
  }
  for (int k = 0; k < k_count; ++k) {
    out[k].noise = std::norm(scaled_noise(cfg.noise_power, rng));
    finish(out[k]);
  }
  return out;
}

std::vector<SinrSample> sinr_sample_uplink(const ExperimentConfig& cfg,
                                           Rng& rng) {
  detail::require(cfg.direction == LinkDirection::Uplink,
                  "sinr_sample_uplink needs an uplink config");
  const auto& g = cfg.geometry;
  const int k_count = g.users;
  const int others = g.cells - 1;
  const RicianSpec rayleigh = RicianSpec::rayleigh();

  const ComplexMatrix h_up = generate_matrix(g.rx_antennas, k_count, rayleigh, rng);
  const ComplexMatrix w = zf_decoder(h_up);
  const ComplexMatrix v_own =
      zf_precoder(generate_matrix(k_count, g.tx_antennas, rayleigh, rng));
  const ComplexMatrix h_si =
      generate_matrix(g.rx_antennas, g.tx_antennas, cfg.si_spec, rng);

  // Radios of cell j to the reference node; node j to the reference node,
  // with node j's own precoder.
  std::vector<ComplexMatrix> h_radios, h_nodes, v_cross;
  for (int j = 0; j < others; ++j) {
    h_radios.push_back(generate_matrix(g.rx_antennas, k_count, rayleigh, rng));
    h_nodes.push_back(
        generate_matrix(g.rx_antennas, g.tx_antennas, rayleigh, rng));
    v_cross.push_back(zf_precoder(
        generate_matrix(k_count, g.tx_antennas, rayleigh, rng)));
  }
  ComplexMatrix noise(g.rx_antennas, 1);
  for (Eigen::Index n = 0; n < noise.rows(); ++n) {
    noise(n, 0) = scaled_noise(cfg.noise_power, rng);
  }

  std::vector<SinrSample> out(k_count);
  for (int k = 0; k < k_count; ++k) {
    SinrSample& s = out[k];
    const ComplexMatrix w_k = w.row(k);
    const auto gains = (w_k * h_up).eval();
    for (int u = 0; u < k_count; ++u) {
      (u == k ? s.useful : s.mui) += std::norm(gains(u));
    }
    for (int j = 0; j < others; ++j) {
      s.ici += (w_k * h_radios[j]).squaredNorm();
      s.cmi += (w_k * h_nodes[j] * v_cross[j]).squaredNorm();
    }
    s.si = residual_si_gain(w_k, h_si, v_own);
    s.noise = std::norm((w_k * noise)(0, 0));
    finish(s);
  }
  return out;
}

SinrReport run_sinr(const ExperimentConfig& cfg, RunOptions opts) {
  cfg.validate();
  const auto k_count = static_cast<std::size_t>(cfg.geometry.users);
  SinrReport report;
  report.samples.resize(static_cast<std::size_t>(cfg.trials) * k_count);
  std::vector<std::uint64_t> redraws(block_count(cfg.trials), 0);

  for_each_block(cfg.trials, opts, [&](std::int64_t b, std::int64_t begin,
                                       std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      std::vector<SinrSample> trial;
      redraws[b] += with_redraws(cfg.seed, StreamDomain::Sinr, t, [&](Rng& rng) {
        trial = cfg.direction == LinkDirection::Downlink
                    ? sinr_sample_downlink(cfg, rng)
                    : sinr_sample_uplink(cfg, rng);
      });
      std::copy(trial.begin(), trial.end(),
                report.samples.begin() + static_cast<std::ptrdiff_t>(t * k_count));
    }
  });
  for (auto r : redraws) report.singular_redraws += r;
  report.config_echo = cfg;
  return report;
}

}  // namespace fdsim
