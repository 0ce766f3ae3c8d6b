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
#include "irsdm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <tuple>

namespace irsdm
{

namespace
{

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Single-stream transmit design for the IRS-free benchmark: H_CM collapses to H_AB^H
// (rank one), so only v1 exists and stream 2's power is folded into stream 1.
TransmitDesign<double> single_stream_design(const ChannelSet<double> &ch)
{
    const CMatrixd h_cm = stack_cm_channel(ch);
    const auto d = svd(h_cm);
    if (d.rank() < 1)
        throw DegenerateError("no-IRS benchmark: direct channel to Bob is zero");
    return {d.V.col(0), CVectord(), an_projection(h_cm)};
}

SchemeRun run_no_irs(const ScenarioConfig &cfg, const SchemeOptions &opt)
{
    const auto ch = no_irs_channels(build_channels<double>(cfg));
    const auto td = single_stream_design(ch);
    const auto pb = PowerBudget<double>::from(cfg);
    const double beta = pb.beta1 + pb.beta2;

    SchemeRun run;
    run.scheme = Scheme::NoIRS;
    run.has_theta = false;
    // Zero-forcing Eve would null her only path here; the benchmark always uses the matched Eve.
    (void)opt;
    run.eve = EveModel::Matched;
    run.solution.theta = PhaseShiftVector<double>::ones(ch.m());

    const CMatrixd hb = effective_channel(ch, run.solution.theta, Side::Bob);
    const CMatrixd he = effective_channel(ch, run.solution.theta, Side::Eve);
    const CVectord xb = hb * td.v1;
    const CVectord xe = he * td.v1;
    run.solution.u_b1 = rank_one_principal(xb).vector;
    run.solution.u_e1 = rank_one_principal(xe).vector;

    const double s = std::sqrt(beta * pb.ps);
    CMatrixd gb(1, 1), ge(1, 1);
    gb(0, 0) = s * run.solution.u_b1.dot(xb);
    ge(0, 0) = s * run.solution.u_e1.dot(xe);
    run.report.r_b = log_det_rate<double>(gb, CMatrixd(run.solution.u_b1), CMatrixd(), pb.sigma2);
    run.report.r_e = log_det_rate<double>(ge, CMatrixd(run.solution.u_e1),
                                          an_covariance_eve(ch, td.p_an, pb.beta3, pb.ps), pb.sigma2);
    run.report.r_s = std::max(0.0, run.report.r_b - run.report.r_e);
    run.report.rps = std::norm(gb(0, 0));
    return run;
}

} // namespace

std::string to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::GAO:
        return "GAO";
    case Scheme::ZF:
        return "ZF";
    case Scheme::RandomPhase:
        return "RandomPhase";
    case Scheme::NoIRS:
        return "NoIRS";
    }
    return "?";
}

Scheme parse_scheme(const std::string &name)
{
    const auto n = lower(name);
    if (n == "gao")
        return Scheme::GAO;
    if (n == "zf")
        return Scheme::ZF;
    if (n == "random" || n == "randomphase" || n == "random-phase")
        return Scheme::RandomPhase;
    if (n == "noirs" || n == "no-irs")
        return Scheme::NoIRS;
    throw ValidationError("scheme", "unknown scheme '" + name + "' (expected GAO, ZF, RandomPhase or NoIRS)");
}

const std::vector<Scheme> &all_schemes()
{
    static const std::vector<Scheme> s{Scheme::GAO, Scheme::ZF, Scheme::RandomPhase, Scheme::NoIRS};
    return s;
}

std::string to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::Ps_dBm:
        return "Ps_dBm";
    case SweepVariable::M:
        return "M";
    case SweepVariable::snr_dB:
        return "snr_dB";
    case SweepVariable::theta_AE:
        return "theta_AE";
    }
    return "?";
}

SweepVariable parse_sweep_variable(const std::string &name)
{
    const auto n = lower(name);
    if (n == "ps_dbm")
        return SweepVariable::Ps_dBm;
    if (n == "m")
        return SweepVariable::M;
    if (n == "snr_db")
        return SweepVariable::snr_dB;
    if (n == "theta_ae")
        return SweepVariable::theta_AE;
    throw ValidationError("variable", "unknown sweep variable '" + name + "' (expected Ps_dBm, M, snr_dB or theta_AE)");
}

EveModel eve_model_for(Scheme s, const SchemeOptions &opt)
{
    if (s == Scheme::NoIRS)
        return EveModel::Matched;
    if (opt.eve)
        return *opt.eve;
    return s == Scheme::ZF ? EveModel::ZeroForcing : EveModel::Matched;
}

PhaseShiftVector<double> random_phase_psm(std::size_t m, std::uint64_t seed)
{
    if (m < 1)
        throw DimensionError("random_phase_psm: M must be >= 1");
    std::mt19937_64 rng(seed);
    RVectord phi(static_cast<Eigen::Index>(m));
    // 53 high bits -> [0, 1); spelled out so draws are identical across standard libraries.
    for (Eigen::Index i = 0; i < phi.size(); ++i)
        phi(i) = 2.0 * kPi * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return PhaseShiftVector<double>::from_phases(phi);
}

ChannelSet<double> no_irs_channels(const ChannelSet<double> &ch)
{
    ChannelSet<double> out = ch;
    out.h_ai.setZero();
    out.h_ib_h.setZero();
    out.h_ie_h.setZero();
    return out;
}

double flops_gao(double d, double m, double n_a, double n_b)
{
    return d * (m * m * m + (2 * n_b + 5) * m * m + (2 * n_b * n_a + 2 * n_a + 2 * n_b + 2) * m +
                (2 * n_b * n_b * n_b + 2 * n_b * n_b + 2 * n_b * n_a));
}

double flops_zf(double l, double m, double n_b)
{
    return l * (m * m * m + (2 * n_b + 1) * m * m + (2 * n_b * n_b * n_b + 2 * n_b * n_b));
}

double sigma2_for_snr(const ScenarioConfig &cfg, double snr_db)
{
    return cfg.ps * path_loss<double>(cfg.d_ab, cfg.alpha) / std::pow(10.0, snr_db / 10.0);
}

SchemeRun run_scheme(const ScenarioConfig &cfg, Scheme scheme, const SchemeOptions &opt, std::uint64_t seed,
                     const IterationObserver<double> &observe)
{
    cfg.validate();
    if (scheme == Scheme::NoIRS)
        return run_no_irs(cfg, opt);

    const auto ch = build_channels<double>(cfg);
    const auto td = make_transmit_design(ch);
    SchemeRun run;
    run.scheme = scheme;
    run.eve = eve_model_for(scheme, opt);
    const auto m = static_cast<double>(cfg.m);

    switch (scheme)
    {
    case Scheme::GAO: {
        auto s = opt.gao;
        s.eve = run.eve;
        auto res = run_gao(ch, td, cfg, s, observe);
        run.solution = std::move(res.solution);
        run.trace = std::move(res.trace);
        run.flops = flops_gao(run.trace.iterations_used, m, static_cast<double>(cfg.n_a), static_cast<double>(cfg.n_b));
        break;
    }
    case Scheme::ZF: {
        auto s = opt.zf;
        s.eve = run.eve;
        auto res = run_zf(ch, td, cfg, s, observe);
        run.solution = std::move(res.solution);
        run.trace = std::move(res.trace);
        run.flops = flops_zf(run.trace.iterations_used, m, static_cast<double>(cfg.n_b));
        break;
    }
    case Scheme::RandomPhase: {
        auto &sol = run.solution;
        sol.theta = random_phase_psm(cfg.m, seed);
        std::tie(sol.u_b1, sol.u_b2) = gao_update_rbf(ch, sol.theta, td, cfg);
        std::tie(sol.u_e1, sol.u_e2) = eve_beamformers(ch, sol.theta, td, run.eve);
        break;
    }
    case Scheme::NoIRS:
        break;
    }
    run.report = secrecy_rate(ch, run.solution, td, cfg);
    return run;
}

ScenarioConfig apply_variable(const ScenarioConfig &base, SweepVariable var, double value)
{
    ScenarioConfig cfg = base;
    switch (var)
    {
    case SweepVariable::Ps_dBm:
        cfg.ps = dbm_to_watts(value);
        break;
    case SweepVariable::M:
        if (!(value >= 1.0) || value != std::floor(value))
            throw ValidationError("M", "sweep value must be a positive integer");
        cfg.m = static_cast<std::size_t>(value);
        break;
    case SweepVariable::snr_dB:
        cfg.sigma2 = sigma2_for_snr(cfg, value);
        break;
    case SweepVariable::theta_AE:
        cfg.ae.departure = value;
        break;
    }
    return cfg;
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw ValidationError("values", "sweep needs at least one value");
    if (schemes.empty())
        throw ValidationError("schemes", "sweep needs at least one scheme");
    if (trials < 1)
        throw ValidationError("trials", "must be >= 1");
}

std::vector<SweepRow> run_sweep(const ScenarioConfig &base, const SweepSpec &spec, const SchemeOptions &opt,
                                unsigned jobs)
{
    spec.validate();

    // Only RandomPhase depends on the trial index; the deterministic schemes run once per value.
    struct Job
    {
        std::size_t scheme_idx, value_idx;
        int trial;
    };
    std::vector<Job> work;
    for (std::size_t s = 0; s < spec.schemes.size(); ++s)
        for (std::size_t v = 0; v < spec.values.size(); ++v)
        {
            const int n = spec.schemes[s] == Scheme::RandomPhase ? spec.trials : 1;
            for (int t = 0; t < n; ++t)
                work.push_back({s, v, t});
        }

    std::vector<SweepRow> results(work.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++)
        {
            const auto &job = work[i];
            SweepRow &row = results[i];
            row.scheme = spec.schemes[job.scheme_idx];
            row.series = spec.series;
            row.variable = spec.variable;
            row.value = spec.values[job.value_idx];
            row.trial = job.trial;
            row.eve = eve_model_for(row.scheme, opt);
            try
            {
                const auto cfg = apply_variable(base, spec.variable, row.value);
                const auto run = run_scheme(cfg, row.scheme, opt, spec.seed + static_cast<std::uint64_t>(job.trial));
                row.r_b = run.report.r_b;
                row.r_e = run.report.r_e;
                row.r_s = run.report.r_s;
                row.rps = run.report.rps;
                row.iterations_used = run.trace.iterations_used;
                row.flops = run.flops;
            }
            catch (const std::exception &e)
            {
                row.ok = false;
                row.error = e.what();
                row.r_b = row.r_e = row.r_s = row.rps = std::numeric_limits<double>::quiet_NaN();
            }
        }
    };

    unsigned n_threads = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, work.size()));
    if (n_threads <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }

    // Expand deterministic schemes to one row per trial.
    std::vector<SweepRow> rows;
    rows.reserve(spec.schemes.size() * spec.values.size() * static_cast<std::size_t>(spec.trials));
    for (const auto &r : results)
    {
        rows.push_back(r);
        if (r.scheme != Scheme::RandomPhase)
            for (int t = 1; t < spec.trials; ++t)
            {
                rows.push_back(r);
                rows.back().trial = t;
            }
    }
    annotate_ratios(rows);
    return rows;
}

void annotate_ratios(std::vector<SweepRow> &rows)
{
    std::map<std::pair<std::string, double>, std::pair<double, int>> random_mean;
    for (const auto &r : rows)
        if (r.scheme == Scheme::RandomPhase && r.ok)
        {
            auto &acc = random_mean[{r.series, r.value}];
            acc.first += r.r_s;
            acc.second += 1;
        }
    for (auto &r : rows)
    {
        const auto it = random_mean.find({r.series, r.value});
        if (r.ok && it != random_mean.end() && it->second.first > 0.0)
            r.ratio_to_random = r.r_s / (it->second.first / it->second.second);
    }
}

std::string to_string(FigureId f)
{
    return "fig" + std::to_string(static_cast<int>(f) + 2);
}

FigureId parse_figure(const std::string &name)
{
    const auto n = lower(name);
    for (int k = 2; k <= 6; ++k)
        if (n == "fig" + std::to_string(k) || n == std::to_string(k))
            return static_cast<FigureId>(k - 2);
    throw ValidationError("figure", "unknown figure '" + name + "' (expected fig2..fig6)");
}

SweepSpec figure_sweep(FigureId id)
{
    SweepSpec s;
    switch (id)
    {
    case FigureId::Fig2:
        s.variable = SweepVariable::M;
        s.values = {20, 200};
        s.schemes = {Scheme::GAO, Scheme::ZF};
        break;
    case FigureId::Fig3:
        s.variable = SweepVariable::Ps_dBm;
        s.values = {20, 25, 30, 35, 40};
        break;
    case FigureId::Fig4:
        s.variable = SweepVariable::M;
        s.values = {40, 80, 120, 160, 200};
        break;
    case FigureId::Fig5:
        s.variable = SweepVariable::M;
        s.values = {40, 80, 120, 160, 200};
        s.schemes = {Scheme::GAO, Scheme::ZF};
        break;
    case FigureId::Fig6:
        s.variable = SweepVariable::theta_AE;
        for (int k = 0; k < 72; ++k)
            s.values.push_back(k * kPi / 36.0);
        break;
    }
    return s;
}

ScenarioConfig figure_base(FigureId id, const ScenarioConfig &base)
{
    ScenarioConfig cfg = base;
    if (id == FigureId::Fig6)
    {
        cfg.ai.departure = kPi / 12.0;
        cfg.d_ab = 100.0;
        cfg.d_ae = 100.0;
    }
    return cfg;
}

FigureResult run_figure(FigureId id, const ScenarioConfig &base, const SchemeOptions &opt, std::uint64_t seed,
                        unsigned jobs)
{
    FigureResult out;
    out.id = id;
    const ScenarioConfig cfg = figure_base(id, base);
    SweepSpec spec = figure_sweep(id);
    spec.seed = seed;

    if (id == FigureId::Fig2)
    {
        for (const Scheme s : spec.schemes)
            for (const double m : spec.values)
            {
                const auto run = run_scheme(apply_variable(cfg, SweepVariable::M, m), s, opt, seed);
                for (const auto &r : run.trace.records)
                    out.traces.push_back({s, static_cast<std::size_t>(m), r.iteration, r.rps, r.r_s, to_string(r.choice)});
            }
        return out;
    }
    if (id == FigureId::Fig5)
    {
        for (const double snr : {0.0, 10.0, 20.0})
        {
            spec.series = "snr=" + std::to_string(static_cast<int>(snr)) + "dB";
            auto rows = run_sweep(apply_variable(cfg, SweepVariable::snr_dB, snr), spec, opt, jobs);
            out.rows.insert(out.rows.end(), rows.begin(), rows.end());
        }
        return out;
    }
    out.rows = run_sweep(cfg, spec, opt, jobs);
    return out;
}

} // namespace irsdm
