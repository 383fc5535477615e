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
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdsim/mc_engine.hpp"

namespace fdsim::io {

enum class OutputFormat { Csv, Jsonl };

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// CSV: header line then one line per row. JSONL: one object per row keyed
/// by column name; non-finite doubles become null.
std::string render(const Table& table, OutputFormat format);

std::string_view extension(OutputFormat format);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// Columns: M,N,K,mu,nu,trials,seed,emp_m1,emp_m2,emp_var,cf_m1,cf_m2,
/// cf_var,kappa,theta,ks
Table si_summary_table(const McReport& report);

/// Column: si_gain
Table sample_table(const McReport& report);

/// Columns: bin_left,count
Table histogram_table(const Histogram& hist);

/// Columns: M,N,K,mu,nu,m1,m2,var,kappa,theta
Table moments_table(const SystemGeometry& geom, const RicianSpec& spec);

/// Columns: trial,k,useful,mui,ici,cmi,si,noise,sinr
Table sinr_table(const SinrReport& report);

/// Columns: L,K,M,N,direction,trials,seed,mean_useful,mean_mui,mean_ici,
/// mean_cmi,mean_si,mean_noise,mean_sinr
Table sinr_summary_table(const SinrReport& report);

}  // namespace fdsim::io
