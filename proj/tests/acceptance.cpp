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
// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "irsdm/experiments.hpp"
#include "support.hpp"

using namespace irsdm;
using namespace irsdm::testing;

namespace
{

using Clock = std::chrono::steady_clock;

struct Verdict
{
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Random model instance with a usable two-stream transmit design.
struct Model
{
    ScenarioConfig cfg;
    ChannelSet<double> ch;
    TransmitDesign<double> td;
};

Model random_model(std::mt19937_64 &rng, std::size_t m_lo = 2, std::size_t m_hi = 40)
{
    while (true)
    {
        Model md;
        md.cfg = random_scenario(rng, m_lo, m_hi);
        md.ch = build_channels<double>(md.cfg);
        try
        {
            md.td = make_transmit_design(md.ch);
            return md;
        }
        catch (const DegenerateError &)
        {
        }
    }
}

Verdict an_nulling()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0, worst_trace = 0;
    for (int i = 0; i < 100; ++i)
    {
        const auto md = random_model(rng);
        const CMatrixd h_cm = stack_cm_channel(md.ch);
        worst = std::max({worst, (md.ch.h_ai * md.td.p_an).norm(), (md.ch.h_ab_h * md.td.p_an).norm()});
        const double expect = static_cast<double>(md.cfg.n_a) - static_cast<double>(numerical_rank(h_cm));
        worst_trace = std::max(worst_trace, std::abs(std::real(md.td.p_an.trace()) - expect));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && worst_trace <= 1e-9 && secs < 5.0,
            fmt::format("max ||H P_AN||_F = {:.2e}, max trace error = {:.2e}, {:.2f} s", worst, worst_trace, secs)};
}

Verdict rank_one_oracle()
{
    std::mt19937_64 rng(1002);
    double worst = 0;
    for (int i = 0; i < 100; ++i)
    {
        const auto md = random_model(rng);
        const auto theta = random_theta(md.ch.m(), rng);
        const auto [u1, u2] = gao_update_rbf(md.ch, theta, md.td, md.cfg);
        const CMatrixd hb = effective_channel(md.ch, theta, Side::Bob);
        worst = std::max({worst, phase_invariant_distance(u1, CVectord(hb * md.td.v1)),
                          phase_invariant_distance(u2, CVectord(hb * md.td.v2))});
    }
    return {worst <= 1e-8, fmt::format("max phase-invariant deviation = {:.2e}", worst)};
}

Verdict theta_grid_oracle()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1003);
    double gao_min = 1e300, zf_min = 1e300;
    for (int i = 0; i < 50; ++i)
    {
        // GAO: random receive beamformers, safeguarded update from theta = 1.
        auto t = random_theta_instance(rng, 2);
        const auto rps = [&](const CVectord &th) {
            BeamformingSolution<double> s{t.u_b1, t.u_b2, {}, {}, PhaseShiftVector<double>(th)};
            return receive_power_sum(t.ch, s, t.td, t.cfg);
        };
        const auto up = gao_update_theta(gao_theta_terms(t.ch, t.u_b1, t.u_b2, t.td, t.cfg),
                                         PhaseShiftVector<double>::ones(2), true);
        gao_min = std::min(gao_min, rps(up.theta.values()) / grid_max(2, 64, rps));
    }
    for (int i = 0; i < 50; ++i)
    {
        // ZF: zero-forcing receive beamformers, phase-align update.
        auto t = random_theta_instance(rng, 2);
        std::tie(t.u_b1, t.u_b2) = zf_update_rbf(t.ch, random_theta(2, rng), t.td, t.cfg);
        const auto rps = [&](const CVectord &th) {
            BeamformingSolution<double> s{t.u_b1, t.u_b2, {}, {}, PhaseShiftVector<double>(th)};
            return receive_power_sum(t.ch, s, t.td, t.cfg);
        };
        const auto th = zf_update_theta(t.ch, t.u_b1, t.td, t.cfg, PhaseShiftVector<double>::ones(2));
        zf_min = std::min(zf_min, rps(th.values()) / grid_max(2, 64, rps));
    }
    const double secs = seconds_since(t0);
    // ZF is the exact continuous optimum; allow rounding in the last place.
    return {gao_min >= 0.98 && zf_min >= 1.0 - 1e-12 && secs < 30.0,
            fmt::format("min GAO/grid = {:.6f}, min ZF/grid = {:.12f}, {:.2f} s", gao_min, zf_min, secs)};
}

bool non_decreasing(const ConvergenceTrace<double> &tr)
{
    for (std::size_t i = 1; i < tr.records.size(); ++i)
        if (tr.records[i].rps < tr.records[i - 1].rps)
            return false;
    return true;
}

Verdict convergence()
{
    ScenarioConfig cfg;
    cfg.m = 200;
    const auto ch = build_channels<double>(cfg);
    const auto td = make_transmit_design(ch);
    const auto gao = run_gao(ch, td, cfg);
    const auto zf = run_zf(ch, td, cfg);
    const bool ok = gao.trace.converged && gao.trace.iterations_used <= 10 && zf.trace.converged &&
                    zf.trace.iterations_used <= 5 && zf.trace.iterations_used <= gao.trace.iterations_used &&
                    non_decreasing(gao.trace) && non_decreasing(zf.trace);
    return {ok, fmt::format("GAO {} iterations ({}), ZF {} iterations ({}), monotone GAO {} ZF {}",
                            gao.trace.iterations_used, gao.trace.converged ? "converged" : "not converged",
                            zf.trace.iterations_used, zf.trace.converged ? "converged" : "not converged",
                            non_decreasing(gao.trace), non_decreasing(zf.trace))};
}

// r_s by scheme at each sweep value (trial 0; RandomPhase averaged over trials).
std::map<double, std::map<Scheme, double>> by_value(const std::vector<SweepRow> &rows, const std::string &series = "")
{
    std::map<double, std::map<Scheme, double>> sum;
    std::map<double, std::map<Scheme, int>> n;
    for (const auto &r : rows)
        if (r.ok && r.series == series)
        {
            sum[r.value][r.scheme] += r.r_s;
            n[r.value][r.scheme] += 1;
        }
    for (auto &[v, m] : sum)
        for (auto &[s, x] : m)
            x /= n[v][s];
    return sum;
}

Verdict ordering(const FigureResult &fig3, const FigureResult &fig4)
{
    bool ok = true;
    std::string why;
    for (const auto *fig : {&fig3, &fig4})
    {
        for (const auto &r : fig->rows)
            if (!r.ok)
            {
                ok = false;
                why += fmt::format(" {} {} failed;", to_string(r.scheme), r.value);
            }
        for (const auto &[v, rs] : by_value(fig->rows))
        {
            const double g = rs.at(Scheme::GAO), z = rs.at(Scheme::ZF), rnd = rs.at(Scheme::RandomPhase),
                         no = rs.at(Scheme::NoIRS);
            if (!(g >= rnd && z >= rnd && g >= no))
            {
                ok = false;
                why += fmt::format(" {} at {}: GAO {:.4f} ZF {:.4f} Random {:.4f} NoIRS {:.4f};", to_string(fig->id), v,
                                   g, z, rnd, no);
            }
        }
    }
    const auto at40 = by_value(fig4.rows).at(40.0);
    const double rg = at40.at(Scheme::GAO) / at40.at(Scheme::RandomPhase);
    const double rz = at40.at(Scheme::ZF) / at40.at(Scheme::RandomPhase);
    ok = ok && rg >= 1.3 && rz >= 1.3;
    return {ok, fmt::format("M=40: GAO/Random = {:.3f}, ZF/Random = {:.3f}{}", rg, rz, why)};
}

Verdict snr_gap(const FigureResult &fig5)
{
    const auto gap = [&](const std::string &series) {
        const auto v = by_value(fig5.rows, series);
        double s = 0;
        for (const auto &[m, rs] : v)
            s += rs.at(Scheme::GAO) - rs.at(Scheme::ZF);
        return s / static_cast<double>(v.size());
    };
    bool all_ok = true;
    for (const auto &r : fig5.rows)
        all_ok = all_ok && r.ok;
    const double g0 = gap("snr=0dB"), g10 = gap("snr=10dB"), g20 = gap("snr=20dB");
    return {all_ok && g20 > g0, fmt::format("mean GAO-ZF gap: 0 dB {:.6f}, 10 dB {:.6f}, 20 dB {:.6f}", g0, g10, g20)};
}

Verdict eve_dip(const FigureResult &fig6)
{
    std::map<Scheme, std::vector<const SweepRow *>> curve;
    for (const auto &r : fig6.rows)
        if (r.trial == 0)
            curve[r.scheme].push_back(&r);
    bool ok = true;
    std::string detail;
    double best_other = 0;
    for (const auto &[s, rows] : curve)
    {
        if (rows.size() != 72)
            return {false, "fig6 curve does not have 72 points"};
        const auto *lo = rows[10], *dip = rows[11], *hi = rows[12];
        const bool valid = lo->ok && dip->ok && hi->ok;
        const bool below = valid && dip->r_s < lo->r_s && dip->r_s < hi->r_s;
        ok = ok && below;
        detail += fmt::format("{} {:.4f} ({:.4f}, {:.4f}); ", to_string(s), dip->r_s, lo->r_s, hi->r_s);
        if (s != Scheme::GAO && dip->ok)
            best_other = std::max(best_other, dip->r_s);

        // Mirror pairs k <-> 72 - k; rows that failed must fail on both sides.
        double asym = 0;
        for (int k = 1; k < 36; ++k)
        {
            const auto *a = rows[static_cast<std::size_t>(k)], *b = rows[static_cast<std::size_t>(72 - k)];
            if (a->ok != b->ok)
                asym = std::numeric_limits<double>::infinity();
            else if (a->ok)
                asym = std::max(asym, std::abs(a->r_s - b->r_s));
        }
        ok = ok && asym <= 1e-6;
        detail += fmt::format("asym {:.1e}; ", asym);
    }
    const double g = curve[Scheme::GAO][11]->r_s;
    const bool gao_best = g >= best_other * (1 - 1e-9);
    return {ok && gao_best, detail + fmt::format("GAO best at dip: {}", gao_best)};
}

Verdict complexity()
{
    bool ok = flops_gao(1, 1, 1, 1) == 22.0 && flops_zf(1, 1, 1) == 8.0 &&
              flops_gao(2, 3, 4, 5) == 2 * (27 + 15 * 9 + 60 * 3 + (250 + 50 + 40)) &&
              flops_zf(2, 3, 4) == 2 * (27 + 9 * 9 + (128 + 32));
    std::string detail = fmt::format("flops_gao(1,1,1,1) = {}, flops_zf(1,1,1) = {};", flops_gao(1, 1, 1, 1),
                                     flops_zf(1, 1, 1));
    for (double m = 40; m <= 200; m += 40)
    {
        const double z = flops_zf(3, m, 4), g = flops_gao(6, m, 16, 4);
        ok = ok && z < g;
        detail += fmt::format(" M={} ZF/GAO={:.3f}", m, z / g);
    }
    return {ok, detail};
}

Verdict rate_cross_check()
{
    std::mt19937_64 rng(1009);
    double worst = 0;
    for (int i = 0; i < 100; ++i)
    {
        const auto md = random_model(rng);
        BeamformingSolution<double> sol;
        sol.theta = random_theta(md.ch.m(), rng);
        sol.u_b1 = random_unit(md.ch.n_b(), rng);
        sol.u_b2 = random_unit(md.ch.n_b(), rng);
        sol.u_e1 = random_unit(md.ch.n_e(), rng);
        sol.u_e2 = random_unit(md.ch.n_e(), rng);
        const auto rep = secrecy_rate(md.ch, sol, md.td, md.cfg);
        const auto [rb, re] = reference_rates(md.cfg, md.ch, md.td, sol);
        worst = std::max({worst, std::abs(rep.r_b - rb) / std::max(1.0, rb), std::abs(rep.r_e - re) / std::max(1.0, re)});
    }
    return {worst <= 1e-8, fmt::format("max relative deviation = {:.2e}", worst)};
}

Verdict zf_separation()
{
    // Every ZF run of the figure presets, checked at every iterate.
    double worst = 0;
    int runs = 0, iterates = 0;
    const ScenarioConfig defaults;
    for (auto id : {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6})
    {
        const auto base = figure_base(id, defaults);
        const auto spec = figure_sweep(id);
        std::vector<ScenarioConfig> cfgs;
        for (double v : spec.values)
        {
            const auto c = apply_variable(base, spec.variable, v);
            if (id == FigureId::Fig5)
                for (double snr : {0.0, 10.0, 20.0})
                    cfgs.push_back(apply_variable(c, SweepVariable::snr_dB, snr));
            else
                cfgs.push_back(c);
        }
        for (const auto &c : cfgs)
        {
            const auto ch = build_channels<double>(c);
            const auto td = make_transmit_design(ch);
            run_zf<double>(ch, td, c, {}, [&](const BeamformingSolution<double> &s, const IterationRecord<double> &) {
                worst = std::max({worst, (s.u_b1.adjoint() * ch.h_ab_h).norm(), (s.u_b2.adjoint() * ch.h_ib_h).norm()});
                ++iterates;
            });
            ++runs;
        }
    }
    return {worst <= 1e-8, fmt::format("{} runs, {} iterates, max residual = {:.2e}", runs, iterates, worst)};
}

} // namespace

int main()
{
    const ScenarioConfig defaults;
    int failed = 0;
    const auto report = [&](int id, const char *name, const std::function<Verdict()> &check) {
        Verdict v;
        try
        {
            v = check();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "artificial-noise nulling", an_nulling);
    report(2, "rank-one receive beamformer oracle", rank_one_oracle);
    report(3, "phase-shift grid oracle", theta_grid_oracle);
    report(4, "convergence at M=200", convergence);
    report(5, "scheme ordering over Ps and M", [&] {
        return ordering(run_figure(FigureId::Fig3, defaults), run_figure(FigureId::Fig4, defaults));
    });
    report(6, "GAO-ZF gap grows with SNR", [&] { return snr_gap(run_figure(FigureId::Fig5, defaults)); });
    report(7, "Eve-alignment dip", [&] { return eve_dip(run_figure(FigureId::Fig6, defaults)); });
    report(8, "operation-count models", complexity);
    report(9, "rate cross-check", rate_cross_check);
    report(10, "zero-forcing stream separation", zf_separation);
    return failed == 0 ? 0 : 1;
}
