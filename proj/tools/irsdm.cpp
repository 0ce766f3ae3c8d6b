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
// irsdm command-line front end: solve one scenario, regenerate figure data, run ad hoc
// sweeps and print the operation-count models.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "irsdm/config.hpp"
#include "irsdm/experiments.hpp"
#include "irsdm/io.hpp"

#ifndef IRSDM_VERSION
#define IRSDM_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace irsdm;

namespace
{

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("irsdm");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::info);
    if (const char *lvl = std::getenv("IRSDM_LOG"))
    {
        const auto level = spdlog::level::from_str(lvl);
        // from_str maps unknown names to off; only honour names it really knows.
        if (level != spdlog::level::off || std::string(lvl) == "off")
            spdlog::set_level(level);
        else
            spdlog::warn("IRSDM_LOG='{}' not recognised; using info", lvl);
    }
}

struct Common
{
    std::string config;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    std::string out;
    bool literal_zf = false;
    bool no_safeguard = false;
    std::string eve;
};

void add_common(CLI::App *cmd, Common &c, bool with_jobs)
{
    cmd->add_option("--config", c.config, "scenario file (key = value); defaults apply when omitted");
    cmd->add_option("--seed", c.seed, "seed for the random-phase benchmark")->capture_default_str();
    if (with_jobs)
        cmd->add_option("--jobs", c.jobs, "worker threads (0 = all cores)")->capture_default_str();
    cmd->add_flag("--literal-zf", c.literal_zf, "ZF subproblems without the null-space projection");
    cmd->add_flag("--no-safeguard", c.no_safeguard,
                  "GAO theta update as printed: conjugated stationary point, no monotone safeguard");
    cmd->add_option("--eve", c.eve, "Eve combiner model for every scheme: matched | zf")
        ->check(CLI::IsMember({"matched", "zf"}));
}

SchemeOptions scheme_options(const Common &c)
{
    SchemeOptions opt;
    opt.zf.enforce_zf_in_subproblem = !c.literal_zf;
    if (c.no_safeguard)
    {
        opt.gao.safeguard = false;
        opt.gao.stationary = StationaryForm::Printed;
    }
    if (c.eve == "matched")
        opt.eve = EveModel::Matched;
    else if (c.eve == "zf")
        opt.eve = EveModel::ZeroForcing;
    return opt;
}

ScenarioConfig load(const Common &c)
{
    if (c.config.empty())
        return parse_config_text("").scenario;
    return parse_config(c.config).scenario;
}

std::string command_line(int argc, char **argv)
{
    std::string s;
    for (int i = 0; i < argc; ++i)
        s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

void write_manifest(const fs::path &dir, const std::string &name, const ScenarioConfig &cfg, const Common &c,
                    const std::string &cmd, const std::vector<std::string> &outputs)
{
    RunManifest m;
    m.config_digest = sha256_hex(canonical_config(cfg));
    m.version = IRSDM_VERSION;
    m.command = cmd;
    m.seed = c.seed;
    m.timestamp = utc_timestamp();
    m.outputs = outputs;
    write_text(dir / name, m.to_json().dump(2) + "\n");
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_solve(const Common &c, const std::string &scheme_name, const std::string &cmd)
{
    const auto cfg = load(c);
    const auto scheme = parse_scheme(scheme_name);
    const auto run = run_scheme(cfg, scheme, scheme_options(c), c.seed);

    std::cout << fmt::format("scheme     {}\n", to_string(run.scheme));
    std::cout << fmt::format("eve_model  {}\n", to_string(run.eve));
    std::cout << fmt::format("r_b        {} bit/s/Hz\n", format_number(run.report.r_b));
    std::cout << fmt::format("r_e        {} bit/s/Hz\n", format_number(run.report.r_e));
    std::cout << fmt::format("r_s        {} bit/s/Hz\n", format_number(run.report.r_s));
    std::cout << fmt::format("rps        {} W\n", format_number(run.report.rps));
    if (scheme == Scheme::GAO || scheme == Scheme::ZF)
        std::cout << fmt::format("iterations {} ({})\n", run.trace.iterations_used,
                                 run.trace.converged ? "converged" : "max_iter reached");

    if (!c.out.empty())
    {
        const fs::path dir(c.out);
        const std::string file = "solution_" + to_string(scheme) + ".txt";
        write_text(dir / file, solution_dump(run));
        write_manifest(dir, "manifest_solve_" + to_string(scheme) + ".json", cfg, c, cmd, {file});
        spdlog::info("wrote {}", (dir / file).string());
    }
    return 0;
}

int cmd_figure(const Common &c, const std::string &fig_name, const std::string &cmd)
{
    const auto cfg = load(c);
    const auto id = parse_figure(fig_name);
    const auto res = run_figure(id, cfg, scheme_options(c), c.seed, c.jobs);
    const fs::path dir(c.out.empty() ? "results" : c.out);
    const std::string csv = to_string(id) + ".csv";
    const std::string py = to_string(id) + ".py";
    write_text(dir / csv, to_csv(id == FigureId::Fig2 ? trace_table(res.traces) : sweep_table(res.rows)));
    write_text(dir / py, plot_script(id, csv));
    write_manifest(dir, "manifest_" + to_string(id) + ".json", figure_base(id, cfg), c, cmd, {csv, py});

    int failed = 0;
    for (const auto &r : res.rows)
        failed += r.ok ? 0 : 1;
    if (failed)
        spdlog::warn("{} of {} runs failed; see the status/error columns", failed, res.rows.size());
    std::cout << (dir / csv).string() << "\n";
    return 0;
}

int cmd_sweep(const Common &c, const std::string &variable, const std::string &values, const std::string &schemes,
              int trials, const std::string &name, const std::string &cmd)
{
    const auto cfg = load(c);
    SweepSpec spec;
    spec.variable = parse_sweep_variable(variable);
    for (const auto &v : split(values, ','))
        spec.values.push_back(parse_angle(v, "values"));
    if (!schemes.empty())
    {
        spec.schemes.clear();
        for (const auto &s : split(schemes, ','))
            spec.schemes.push_back(parse_scheme(s));
    }
    spec.trials = trials;
    spec.seed = c.seed;

    const auto rows = run_sweep(cfg, spec, scheme_options(c), c.jobs);
    const auto text = to_csv(sweep_table(rows));
    if (c.out.empty())
    {
        std::cout << text;
        return 0;
    }
    const fs::path dir(c.out);
    const std::string csv = name + ".csv";
    write_text(dir / csv, text);
    write_manifest(dir, "manifest_" + name + ".json", cfg, c, cmd, {csv});
    std::cout << (dir / csv).string() << "\n";
    return 0;
}

int cmd_complexity(const Common &c, double d, double l, const std::string &m_values)
{
    const auto cfg = load(c);
    CsvTable t;
    t.header = {"M", "D", "L", "N_A", "N_B", "flops_gao", "flops_zf", "zf_over_gao"};
    for (const auto &mv : split(m_values, ','))
    {
        const double m = parse_angle(mv, "M");
        const double g = flops_gao(d, m, static_cast<double>(cfg.n_a), static_cast<double>(cfg.n_b));
        const double z = flops_zf(l, m, static_cast<double>(cfg.n_b));
        t.rows.push_back({format_number(m), format_number(d), format_number(l), std::to_string(cfg.n_a),
                          std::to_string(cfg.n_b), format_number(g), format_number(z), format_number(z / g)});
    }
    const auto text = to_csv(t);
    if (c.out.empty())
        std::cout << text;
    else
    {
        write_text(fs::path(c.out) / "complexity.csv", text);
        std::cout << (fs::path(c.out) / "complexity.csv").string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    setup_logging();
    const std::string cmdline = command_line(argc, argv);

    CLI::App app{"Receive beamforming and IRS phase-shift design for directional modulation"};
    app.set_version_flag("--version", IRSDM_VERSION);
    app.require_subcommand(1);

    Common c;

    std::string scheme = "GAO";
    auto *solve = app.add_subcommand("solve", "run one scheme and print its rates");
    add_common(solve, c, false);
    solve->add_option("--scheme", scheme, "GAO | ZF | RandomPhase | NoIRS")->capture_default_str();
    solve->add_option("--out", c.out, "directory for the solution dump and manifest");

    std::string fig;
    auto *figure = app.add_subcommand("figure", "regenerate one figure's data (CSV + plot script)");
    add_common(figure, c, true);
    figure->add_option("id", fig, "fig2 | fig3 | fig4 | fig5 | fig6")->required();
    figure->add_option("--out", c.out, "output directory (default: results)");

    std::string variable, values, schemes;
    int trials = 1;
    std::string name = "sweep";
    auto *sweep = app.add_subcommand("sweep", "sweep one variable over a list of values");
    add_common(sweep, c, true);
    sweep->add_option("--variable", variable, "Ps_dBm | M | snr_dB | theta_AE")->required();
    sweep->add_option("--values", values, "comma-separated values (angles accept e.g. 11pi/36)")->required();
    sweep->add_option("--schemes", schemes, "comma-separated schemes (default: all four)");
    sweep->add_option("--trials", trials, "random-phase trials per value")->capture_default_str();
    sweep->add_option("--name", name, "CSV base name")->capture_default_str();
    sweep->add_option("--out", c.out, "output directory (default: CSV to stdout)");

    double d_iter = 6, l_iter = 3;
    std::string m_values = "40,80,120,160,200";
    auto *complexity = app.add_subcommand("complexity", "evaluate the GAO and ZF operation-count models");
    add_common(complexity, c, false);
    complexity->add_option("--D", d_iter, "GAO iterations")->capture_default_str();
    complexity->add_option("--L", l_iter, "ZF iterations")->capture_default_str();
    complexity->add_option("--m-values", m_values, "comma-separated IRS sizes")->capture_default_str();
    complexity->add_option("--out", c.out, "output directory (default: CSV to stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*solve)
            return cmd_solve(c, scheme, cmdline);
        if (*figure)
            return cmd_figure(c, fig, cmdline);
        if (*sweep)
            return cmd_sweep(c, variable, values, schemes, trials, name, cmdline);
        return cmd_complexity(c, d_iter, l_iter, m_values);
    }
    catch (const ValidationError &e)
    {
        spdlog::error("{}", e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        spdlog::error("{}", e.what());
        return 1;
    }
}
