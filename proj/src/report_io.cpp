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

#include "fdsim/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "fdsim/error.hpp"

namespace fdsim::io {
namespace {

std::string cell_text(const Cell& c, OutputFormat format) {
  return std::visit(
      [format](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return format == OutputFormat::Jsonl ? "\"" + v + "\"" : v;
        } else if constexpr (std::is_same_v<T, double>) {
          if (format == OutputFormat::Jsonl && !std::isfinite(v)) return "null";
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      c);
}

double mean_of(const std::vector<SinrSample>& s, double SinrSample::*field) {
  double sum = 0.0;
  for (const auto& x : s) sum += x.*field;
  return sum / static_cast<double>(s.size());
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  detail::require(row.size() == columns.size(),
                  "row width does not match the column count");
  rows.push_back(std::move(row));
}

std::string render(const Table& table, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += cell_text(row[i], format);
      }
      out += '\n';
    }
    return out;
  }
  for (const auto& row : table.rows) {
    out += '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += '"' + table.columns[i] + "\":" + cell_text(row[i], format);
    }
    out += "}\n";
  }
  return out;
}

std::string_view extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".jsonl";
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into " + path.string() +
                             ": " + ec.message());
  }
}

Table si_summary_table(const McReport& r) {
  const auto& c = r.config_echo;
  const auto& g = c.geometry;
  Table t{{"M", "N", "K", "mu", "nu", "trials", "seed", "emp_m1", "emp_m2",
           "emp_var", "cf_m1", "cf_m2", "cf_var", "kappa", "theta", "ks"},
          {}};
  t.add_row({std::int64_t{g.tx_antennas}, std::int64_t{g.rx_antennas},
             std::int64_t{g.users}, c.si_spec.mu(), c.si_spec.nu(),
             std::int64_t{c.trials}, std::uint64_t{c.seed}, r.emp_m1,
             r.emp_m2, r.emp_var, r.closed_form.m1, r.closed_form.m2,
             r.closed_form.var, r.gamma.shape, r.gamma.scale,
             r.gof.ks_statistic});
  return t;
}

Table sample_table(const McReport& r) {
  Table t{{"si_gain"}, {}};
  t.rows.reserve(r.samples.size());
  for (double x : r.samples) t.rows.push_back({x});
  return t;
}

Table histogram_table(const Histogram& h) {
  Table t{{"bin_left", "count"}, {}};
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    t.rows.push_back({h.bin_edges[i], std::uint64_t{h.counts[i]}});
  }
  return t;
}

Table moments_table(const SystemGeometry& g, const RicianSpec& spec) {
  const MomentSet m = si_moments(g, spec);
  const GammaParams p = gamma_mimo(g, spec);
  Table t{{"M", "N", "K", "mu", "nu", "m1", "m2", "var", "kappa", "theta"},
          {}};
  t.add_row({std::int64_t{g.tx_antennas}, std::int64_t{g.rx_antennas},
             std::int64_t{g.users}, spec.mu(), spec.nu(), m.m1, m.m2, m.var,
             p.shape, p.scale});
  return t;
}

Table sinr_table(const SinrReport& r) {
  Table t{{"trial", "k", "useful", "mui", "ici", "cmi", "si", "noise", "sinr"},
          {}};
  const auto k_count = static_cast<std::size_t>(r.config_echo.geometry.users);
  t.rows.reserve(r.samples.size());
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    t.rows.push_back({std::uint64_t{i / k_count}, std::uint64_t{i % k_count},
                      s.useful, s.mui, s.ici, s.cmi, s.si, s.noise, s.sinr});
  }
  return t;
}

Table sinr_summary_table(const SinrReport& r) {
  const auto& c = r.config_echo;
  const auto& g = c.geometry;
  Table t{{"L", "K", "M", "N", "direction", "trials", "seed", "mean_useful",
           "mean_mui", "mean_ici", "mean_cmi", "mean_si", "mean_noise",
           "mean_sinr"},
          {}};
  const auto& s = r.samples;
  t.add_row({std::int64_t{g.cells}, std::int64_t{g.users},
             std::int64_t{g.tx_antennas}, std::int64_t{g.rx_antennas},
             std::string(c.direction == LinkDirection::Downlink ? "downlink"
                                                                : "uplink"),
             std::int64_t{c.trials}, std::uint64_t{c.seed},
             mean_of(s, &SinrSample::useful), mean_of(s, &SinrSample::mui),
             mean_of(s, &SinrSample::ici), mean_of(s, &SinrSample::cmi),
             mean_of(s, &SinrSample::si), mean_of(s, &SinrSample::noise),
             mean_of(s, &SinrSample::sinr)});
  return t;
}

}  // namespace fdsim::io
