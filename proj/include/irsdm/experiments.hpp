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
#ifndef IRSDM_EXPERIMENTS_HPP
#define IRSDM_EXPERIMENTS_HPP

// Baseline schemes, parameter sweeps, figure presets and the FLOP-count models.
// Everything here runs in double precision.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "irsdm/opt_gao.hpp"
#include "irsdm/opt_zf.hpp"

namespace irsdm
{

enum class Scheme
{
    GAO,
    ZF,
    RandomPhase,
    NoIRS
};

std::string to_string(Scheme s);
// Accepts gao, zf, random, randomphase, noirs, no-irs (case-insensitive).
Scheme parse_scheme(const std::string &name);
const std::vector<Scheme> &all_schemes();

enum class SweepVariable
{
    Ps_dBm,
    M,
    snr_dB,
    theta_AE
};

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string &name);

// Algorithm settings for every scheme. `eve` overrides the per-scheme default
// (matched for GAO, RandomPhase and NoIRS; zero-forcing for ZF).
struct SchemeOptions
{
    GaoSettings gao;
    ZfSettings zf;
    std::optional<EveModel> eve;
};

EveModel eve_model_for(Scheme s, const SchemeOptions &opt);

// One scheme on one scenario.
struct SchemeRun
{
    Scheme scheme = Scheme::GAO;
    BeamformingSolution<double> solution; // NoIRS: single stream, u_b2/u_e2 empty
    RateReport<double> report;
    ConvergenceTrace<double> trace; // empty for the baselines
    EveModel eve = EveModel::Matched;
    bool has_theta = true;
    double flops = 0.0;
};

SchemeRun run_scheme(const ScenarioConfig &cfg, Scheme scheme, const SchemeOptions &opt = {},
                     std::uint64_t seed = 1, const IterationObserver<double> &observe = {});

// theta_i = exp(j phi_i), phi_i uniform on [0, 2pi), from a 64-bit Mersenne Twister.
PhaseShiftVector<double> random_phase_psm(std::size_t m, std::uint64_t seed);

// Copy of ch with H_AI, H_IB and H_IE zeroed.
ChannelSet<double> no_irs_channels(const ChannelSet<double> &ch);

// Operation-count polynomials for D GAO iterations and L ZF iterations.
double flops_gao(double d, double m, double n_a, double n_b);
double flops_zf(double l, double m, double n_b);

// sigma2 giving the requested receive SNR on the direct Alice-Bob link.
double sigma2_for_snr(const ScenarioConfig &cfg, double snr_db);

// Scenario with one sweep variable set. Ps_dBm rescales Ps, M resizes the IRS,
// snr_dB sets sigma2 through sigma2_for_snr and theta_AE moves Eve's departure angle.
ScenarioConfig apply_variable(const ScenarioConfig &base, SweepVariable var, double value);

struct SweepSpec
{
    SweepVariable variable = SweepVariable::Ps_dBm;
    std::vector<double> values;
    std::vector<Scheme> schemes = all_schemes();
    int trials = 1;
    std::uint64_t seed = 1;
    std::string series; // free-form label copied to every row

    void validate() const;
};

struct SweepRow
{
    Scheme scheme = Scheme::GAO;
    std::string series;
    SweepVariable variable = SweepVariable::Ps_dBm;
    double value = 0.0;
    int trial = 0;
    EveModel eve = EveModel::Matched;
    double r_b = 0.0;
    double r_e = 0.0;
    double r_s = 0.0;
    double rps = 0.0;
    int iterations_used = 0;
    double flops = 0.0;
    double ratio_to_random = std::numeric_limits<double>::quiet_NaN(); // r_s / mean r_s(RandomPhase)
    bool ok = true;
    std::string error;
};

// Rows ordered by (scheme, value, trial) in the order given by the SweepSpec; failed runs
// are kept with ok = false. jobs = 0 uses every hardware thread.
std::vector<SweepRow> run_sweep(const ScenarioConfig &base, const SweepSpec &spec, const SchemeOptions &opt = {},
                                unsigned jobs = 0);

// Fills ratio_to_random where a RandomPhase row exists for the same series and value.
void annotate_ratios(std::vector<SweepRow> &rows);

// Convergence trace row for the fig2 preset.
struct TraceRow
{
    Scheme scheme = Scheme::GAO;
    std::size_t m = 0;
    int iteration = 0;
    double rps = 0.0;
    double r_s = 0.0;
    std::string choice;
};

enum class FigureId
{
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6
};

std::string to_string(FigureId f);
FigureId parse_figure(const std::string &name);

struct FigureResult
{
    FigureId id = FigureId::Fig3;
    std::vector<SweepRow> rows;    // fig3..fig6
    std::vector<TraceRow> traces;  // fig2
};

// Preset grids: fig2 traces at M in {20, 200}; fig3 Ps 20..40 dBm step 5; fig4 M 40..200 step 40;
// fig5 M 40..200 step 40 at SNR 0, 10, 20 dB; fig6 theta_AE = k pi/36, k = 0..71, with
// theta_t_AI = pi/12 and d_AB = d_AE = 100 m.
SweepSpec figure_sweep(FigureId id);
ScenarioConfig figure_base(FigureId id, const ScenarioConfig &base);
FigureResult run_figure(FigureId id, const ScenarioConfig &base, const SchemeOptions &opt = {},
                        std::uint64_t seed = 1, unsigned jobs = 0);

} // namespace irsdm

#endif // IRSDM_EXPERIMENTS_HPP
