// SPDX-License-Identifier: Apache-2.0
//
// irsdm: receive beamforming and IRS phase-shift design for directional modulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef IRSDM_IO_HPP
#define IRSDM_IO_HPP

// Result files: CSV tables, solution dumps, plot scripts and the run manifest.

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irsdm/experiments.hpp"

namespace irsdm
{

// 12 significant digits; NaN prints as an empty field.
std::string format_number(double v);
// "re+imj", e.g. 0.25-1.5j.
std::string format_complex(std::complex<double> z);

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const;
};

// Columns: scheme, series, variable, value, trial, eve, r_b, r_e, r_s, rps, iterations,
// flops, ratio_to_random, status, error.
CsvTable sweep_table(const std::vector<SweepRow> &rows);
// Columns: scheme, M, iteration, rps, r_s, theta_choice.
CsvTable trace_table(const std::vector<TraceRow> &rows);

// RFC 4180 quoting, LF line endings, header row first.
std::string to_csv(const CsvTable &t);
CsvTable parse_csv(const std::string &text);

void write_text(const std::filesystem::path &path, const std::string &text);
std::string read_text(const std::filesystem::path &path);

// key = value lines: scheme, eve model, rates, trace summary, beamformer entries and
// theta phases (omitted for NoIRS).
std::string solution_dump(const SchemeRun &run);

// Self-contained matplotlib script that reads `csv_name` from its own directory.
std::string plot_script(FigureId id, const std::string &csv_name);

struct RunManifest
{
    std::string config_digest;
    std::string version;
    std::string command;
    std::uint64_t seed = 1;
    std::string timestamp; // UTC, ISO 8601
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

std::string utc_timestamp();

} // namespace irsdm

#endif // IRSDM_IO_HPP
