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

#include "fdsim/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdsim/error.hpp"
#include "fdsim/mc_engine.hpp"
#include "fdsim/report_io.hpp"

namespace fdsim::cli {
namespace {

using nlohmann::json;

struct Flags {
  int M = 1;
  int N = 1;
  int K = 1;
  int L = 1;
  double mu = 0.0;
  double nu = 1.0;
  double varpi = 0.0;
  double omega = 1.0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  double noise = 1.0;
  std::string mode = "empirical";
  std::string direction = "uplink";
  int bins = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  std::string config;

  std::map<std::string, CLI::Option*> options;

  bool given(const std::string& key) const {
    auto it = options.find(key);
    return it != options.end() && it->second->count() > 0;
  }
};

const std::vector<std::string> kConfigKeys = {
    "M",     "N",    "K",    "L",         "mu",   "nu",
    "varpi", "omega", "trials", "seed",   "noise", "mode",
    "direction", "bins", "out", "format", "threads"};

template <class T>
void add(CLI::App* app, Flags& f, const std::string& key, T& target,
         const std::string& help) {
  f.options[key] = app->add_option("--" + key, target, help);
}

void add_model_flags(CLI::App* app, Flags& f) {
  add(app, f, "M", f.M, "transmit antennas at the multi-antenna node");
  add(app, f, "N", f.N, "receive antennas at the multi-antenna node");
  add(app, f, "K", f.K, "FD radios (streams) per cell");
  add(app, f, "L", f.L, "cells");
  add(app, f, "mu", f.mu, "residual SI channel mean");
  add(app, f, "nu", f.nu, "residual SI channel spread (sqrt of variance)");
  add(app, f, "varpi", f.varpi, "residual SI Rician factor");
  add(app, f, "omega", f.omega, "residual SI fading power");
  for (const char* a : {"mu", "nu"}) {
    for (const char* b : {"varpi", "omega"}) {
      f.options[a]->excludes(f.options[b]);
    }
  }
  f.options["config"] =
      app->add_option("--config", f.config, "JSON config; flags override it")
          ->check(CLI::ExistingFile);
  add(app, f, "out", f.out, "output path prefix");
  add(app, f, "format", f.format, "csv or jsonl");
  f.options["format"]->check(CLI::IsMember({"csv", "jsonl"}));
}

void add_run_flags(CLI::App* app, Flags& f) {
  add(app, f, "trials", f.trials, "Monte Carlo trials");
  add(app, f, "seed", f.seed, "base seed (falls back to $FDSIM_SEED)");
  add(app, f, "threads", f.threads, "worker threads (0 = all cores)");
}

json load_config(const Flags& f) {
  if (f.config.empty()) return json::object();
  std::ifstream in(f.config);
  if (!in) throw InvalidParameter("cannot read config " + f.config);
  json j = json::parse(in);
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) ==
        kConfigKeys.end()) {
      throw InvalidParameter("unknown config key '" + key + "'");
    }
  }
  return j;
}

// Flag value if given on the command line, else the config file value, else
// the flag's default.
template <class T>
T pick(const Flags& f, const json& file, const std::string& key,
       const T& flag_value) {
  if (f.given(key)) return flag_value;
  if (file.contains(key)) return file.at(key).get<T>();
  return flag_value;
}

RicianSpec resolve_spec(const Flags& f, const json& file) {
  const bool flag_moments = f.given("mu") || f.given("nu");
  const bool flag_factor = f.given("varpi") || f.given("omega");
  const bool file_moments = file.contains("mu") || file.contains("nu");
  const bool file_factor = file.contains("varpi") || file.contains("omega");
  bool use_factor = false;
  if (flag_moments) {
    use_factor = false;
  } else if (flag_factor) {
    use_factor = true;
  } else {
    detail::require(!(file_moments && file_factor),
                    "config gives both (mu, nu) and (varpi, omega)");
    use_factor = file_factor;
  }
  if (use_factor) {
    return RicianSpec::from_factor(pick(f, file, "varpi", f.varpi),
                                   pick(f, file, "omega", f.omega));
  }
  return RicianSpec(pick(f, file, "mu", f.mu), pick(f, file, "nu", f.nu));
}

struct Resolved {
  ExperimentConfig config;
  RunOptions run;
  std::string mode;
  int bins = 0;
  std::string out;
  io::OutputFormat format = io::OutputFormat::Csv;
};

std::uint64_t resolve_seed(const Flags& f, const json& file) {
  if (f.given("seed")) return f.seed;
  if (file.contains("seed")) return file.at("seed").get<std::uint64_t>();
  if (const char* env = std::getenv("FDSIM_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidParameter("FDSIM_SEED is not an unsigned integer");
  }
  return f.seed;
}

Resolved resolve(const Flags& f) {
  const json file = load_config(f);
  Resolved r;
  auto& c = r.config;
  c.geometry.tx_antennas = pick(f, file, "M", f.M);
  c.geometry.rx_antennas = pick(f, file, "N", f.N);
  c.geometry.users = pick(f, file, "K", f.K);
  c.geometry.cells = pick(f, file, "L", f.L);
  c.si_spec = resolve_spec(f, file);
  c.trials = pick(f, file, "trials", f.trials);
  c.seed = resolve_seed(f, file);
  c.noise_power = pick(f, file, "noise", f.noise);

  const std::string direction = pick(f, file, "direction", f.direction);
  detail::require(direction == "uplink" || direction == "downlink",
                  "direction must be uplink or downlink");
  c.direction = direction == "uplink" ? LinkDirection::Uplink
                                      : LinkDirection::Downlink;
  r.mode = pick(f, file, "mode", f.mode);
  detail::require(r.mode == "empirical" || r.mode == "theoretical" ||
                      r.mode == "both",
                  "mode must be empirical, theoretical or both");
  c.mode = r.mode == "theoretical" ? SimulationMode::Theoretical
                                   : SimulationMode::Empirical;
  r.bins = pick(f, file, "bins", f.bins);
  detail::require(r.bins >= 0, "bins must be non-negative");
  r.out = pick(f, file, "out", f.out);
  const std::string format = pick(f, file, "format", f.format);
  detail::require(format == "csv" || format == "jsonl",
                  "format must be csv or jsonl");
  r.format = format == "csv" ? io::OutputFormat::Csv : io::OutputFormat::Jsonl;
  r.run.threads = pick(f, file, "threads", f.threads);
  c.validate();
  return r;
}

std::string output_path(const Resolved& r, const std::string& suffix) {
  return r.out + "_" + suffix + std::string(io::extension(r.format));
}

void write_all(const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [path, content] : files) io::write_file_atomic(path, content);
}

int cmd_si_experiment(const Flags& f, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve(f);
  std::vector<SimulationMode> modes;
  if (r.mode != "theoretical") modes.push_back(SimulationMode::Empirical);
  if (r.mode != "empirical") modes.push_back(SimulationMode::Theoretical);

  std::vector<McReport> reports;
  for (const auto mode : modes) {
    ExperimentConfig cfg = r.config;
    cfg.mode = mode;
    reports.push_back(run_si(cfg, r.run));
    if (reports.back().singular_redraws > 0) {
      err << "note: " << reports.back().singular_redraws
          << " rank-deficient channel draws were regenerated\n";
    }
  }

  io::Table stdout_table;
  std::vector<std::pair<std::string, std::string>> files;
  double upper = 0.0;
  for (const auto& rep : reports) {
    upper = std::max(upper,
                     *std::max_element(rep.samples.begin(), rep.samples.end()));
  }
  for (const auto& rep : reports) {
    const std::string name =
        rep.config_echo.mode == SimulationMode::Empirical ? "empirical"
                                                          : "theoretical";
    const io::Table summary = io::si_summary_table(rep);
    if (stdout_table.columns.empty()) {
      stdout_table.columns = summary.columns;
      stdout_table.columns.insert(stdout_table.columns.begin(), "mode");
    }
    auto row = summary.rows.front();
    row.insert(row.begin(), name);
    stdout_table.add_row(std::move(row));

    if (r.out.empty()) continue;
    files.emplace_back(output_path(r, name + "_summary"),
                       io::render(summary, r.format));
    if (r.bins > 0) {
      files.emplace_back(
          output_path(r, name + "_hist"),
          io::render(io::histogram_table(histogram(rep.samples, r.bins, upper)),
                     r.format));
    } else {
      files.emplace_back(output_path(r, name + "_samples"),
                         io::render(io::sample_table(rep), r.format));
    }
  }
  write_all(files);
  out << io::render(stdout_table, r.format);
  return kSuccess;
}

int cmd_moments(const Flags& f, std::ostream& out) {
  const Resolved r = resolve(f);
  const std::string text = io::render(
      io::moments_table(r.config.geometry, r.config.si_spec), r.format);
  if (!r.out.empty()) write_all({{output_path(r, "moments"), text}});
  out << text;
  return kSuccess;
}

int cmd_sinr(const Flags& f, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve(f);
  const SinrReport report = run_sinr(r.config, r.run);
  if (report.singular_redraws > 0) {
    err << "note: " << report.singular_redraws
        << " rank-deficient channel draws were regenerated\n";
  }
  if (!r.out.empty()) {
    const std::string dir =
        r.config.direction == LinkDirection::Downlink ? "downlink" : "uplink";
    write_all({{output_path(r, "sinr_" + dir),
                io::render(io::sinr_table(report), r.format)}});
  }
  out << io::render(io::sinr_summary_table(report), r.format);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Residual self-interference statistics for full-duplex "
               "multi-user MIMO links",
               "fdsim"};
  app.require_subcommand(1);

  Flags si_flags, moment_flags, sinr_flags;
  auto* si = app.add_subcommand(
      "si", "Monte Carlo residual SI experiment (empirical/theoretical)");
  add_model_flags(si, si_flags);
  add_run_flags(si, si_flags);
  add(si, si_flags, "mode", si_flags.mode, "empirical, theoretical or both");
  si_flags.options["mode"]->check(
      CLI::IsMember({"empirical", "theoretical", "both"}));
  add(si, si_flags, "bins", si_flags.bins,
      "histogram bins (0 writes raw samples)");
  si_flags.options["bins"]->check(CLI::NonNegativeNumber);

  auto* moments = app.add_subcommand(
      "moments", "closed-form residual SI moments and Gamma parameters");
  add_model_flags(moments, moment_flags);

  auto* sinr = app.add_subcommand("sinr", "per-term SINR sampling");
  add_model_flags(sinr, sinr_flags);
  add_run_flags(sinr, sinr_flags);
  add(sinr, sinr_flags, "noise", sinr_flags.noise, "receiver noise power");
  add(sinr, sinr_flags, "direction", sinr_flags.direction,
      "uplink or downlink");
  sinr_flags.options["direction"]->check(
      CLI::IsMember({"uplink", "downlink"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (si->parsed()) return cmd_si_experiment(si_flags, out, err);
    if (moments->parsed()) return cmd_moments(moment_flags, out);
    return cmd_sinr(sinr_flags, out, err);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const json::exception& e) {
    err << "error: bad config: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace fdsim::cli
