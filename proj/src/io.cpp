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
#include "irsdm/io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace irsdm
{

std::string format_number(double v)
{
    if (std::isnan(v))
        return {};
    return fmt::format("{:.12g}", v);
}

std::string format_complex(std::complex<double> z)
{
    return fmt::format("{:.12g}{:+.12g}j", z.real(), z.imag());
}

std::size_t CsvTable::column(const std::string &name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw Error("CSV has no column '" + name + "'");
}

CsvTable sweep_table(const std::vector<SweepRow> &rows)
{
    CsvTable t;
    t.header = {"scheme", "series", "variable", "value", "trial", "eve", "r_b", "r_e",
                "r_s", "rps", "iterations", "flops", "ratio_to_random", "status", "error"};
    for (const auto &r : rows)
        t.rows.push_back({to_string(r.scheme), r.series, to_string(r.variable), format_number(r.value),
                          std::to_string(r.trial), to_string(r.eve), format_number(r.r_b), format_number(r.r_e),
                          format_number(r.r_s), format_number(r.rps), std::to_string(r.iterations_used),
                          format_number(r.flops), format_number(r.ratio_to_random), r.ok ? "ok" : "error", r.error});
    return t;
}

CsvTable trace_table(const std::vector<TraceRow> &rows)
{
    CsvTable t;
    t.header = {"scheme", "M", "iteration", "rps", "r_s", "theta_choice"};
    for (const auto &r : rows)
        t.rows.push_back({to_string(r.scheme), std::to_string(r.m), std::to_string(r.iteration), format_number(r.rps),
                          format_number(r.r_s), r.choice});
    return t;
}

namespace
{

std::string quote(const std::string &f)
{
    if (f.find_first_of(",\"\n\r") == std::string::npos)
        return f;
    std::string out = "\"";
    for (char c : f)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

void append_line(std::string &out, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
            out += ',';
        out += quote(fields[i]);
    }
    out += '\n';
}

} // namespace

std::string to_csv(const CsvTable &t)
{
    std::string out;
    append_line(out, t.header);
    for (const auto &r : t.rows)
        append_line(out, r);
    return out;
}

CsvTable parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"')
            {
                field += '"';
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                field += c;
            continue;
        }
        any = true;
        if (c == '"')
            quoted = true;
        else if (c == ',')
        {
            rec.push_back(std::move(field));
            field.clear();
        }
        else if (c == '\n')
        {
            rec.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(rec));
            rec.clear();
            any = false;
        }
        else if (c != '\r')
            field += c;
    }
    if (quoted)
        throw Error("CSV ends inside a quoted field");
    if (any)
    {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    CsvTable t;
    if (records.empty())
        return t;
    t.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i)
    {
        if (records[i].size() != t.header.size())
            throw Error("CSV row " + std::to_string(i) + " has " + std::to_string(records[i].size()) +
                        " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(records[i]));
    }
    return t;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw Error("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string solution_dump(const SchemeRun &run)
{
    std::string out;
    const auto kv = [&](const std::string &k, const std::string &v) { out += k + " = " + v + "\n"; };
    const auto vec = [&](const std::string &name, const CVectord &v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            kv(fmt::format("{}[{}]", name, i), format_complex(v(i)));
    };

    kv("scheme", to_string(run.scheme));
    kv("eve_model", to_string(run.eve));
    kv("r_b", format_number(run.report.r_b));
    kv("r_e", format_number(run.report.r_e));
    kv("r_s", format_number(run.report.r_s));
    kv("rps", format_number(run.report.rps));
    kv("iterations", std::to_string(run.trace.iterations_used));
    kv("converged", run.trace.converged ? "true" : "false");
    vec("u_B1", run.solution.u_b1);
    vec("u_B2", run.solution.u_b2);
    vec("u_E1", run.solution.u_e1);
    vec("u_E2", run.solution.u_e2);
    if (run.has_theta)
    {
        const auto ph = run.solution.theta.phases();
        for (Eigen::Index i = 0; i < ph.size(); ++i)
            kv(fmt::format("theta_phase[{}]", i), format_number(ph(i)));
    }
    return out;
}

std::string plot_script(FigureId id, const std::string &csv_name)
{
    std::string body;
    if (id == FigureId::Fig2)
    {
        body = R"py(series = {}
for r in rows:
    series.setdefault((r["scheme"], r["M"]), []).append((int(r["iteration"]), float(r["r_s"])))
for (scheme, m), pts in sorted(series.items()):
    pts.sort()
    ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=f"{scheme}, M={m}")
ax.set_xlabel("iteration")
)py";
    }
    else
    {
        const char *xlabel = id == FigureId::Fig3 ? "Ps (dBm)" : id == FigureId::Fig6 ? "theta_AE (rad)" : "M";
        body = fmt::format(R"py(series = {{}}
for r in rows:
    if r["status"] != "ok":
        continue
    key = r["scheme"] + (" " + r["series"] if r["series"] else "")
    series.setdefault(key, {{}}).setdefault(float(r["value"]), []).append(float(r["r_s"]))
for key, pts in sorted(series.items()):
    xs = sorted(pts)
    ax.plot(xs, [sum(pts[x]) / len(pts[x]) for x in xs], marker="o", label=key)
ax.set_xlabel("{}")
)py",
                           xlabel);
    }
    return fmt::format(R"py(#!/usr/bin/env python3
# Plots {1}; the CSV is the authoritative output.
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "{1}"), newline="") as f:
    rows = list(csv.DictReader(f))

fig, ax = plt.subplots(figsize=(6, 4))
{2}ax.set_ylabel("secrecy rate (bit/s/Hz)")
ax.grid(True, alpha=0.3)
ax.legend()
fig.tight_layout()
out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "{0}.png")
fig.savefig(out, dpi=150)
)py",
                       to_string(id), csv_name, body);
}

nlohmann::json RunManifest::to_json() const
{
    return {{"config_digest", config_digest}, {"version", version},     {"command", command},
            {"seed", seed},                   {"timestamp", timestamp}, {"outputs", outputs}};
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace irsdm
