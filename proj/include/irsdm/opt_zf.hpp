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
#ifndef IRSDM_OPT_ZF_HPP
#define IRSDM_OPT_ZF_HPP

// Max-RPS-ZF: Bob's stream-1 combiner nulls the direct path and his stream-2 combiner
// nulls the IRS path, so theta only has to phase-align the IRS path of stream 1.

#include <string>
#include <utility>

#include "irsdm/metrics.hpp"
#include "irsdm/opt_gao.hpp"

namespace irsdm
{

struct ZfSettings
{
    double epsilon = 1e-6; // relative RPS change
    int max_iter = 50;
    // Project each Rayleigh-Ritz subproblem into its zero-forcing null space. Off gives the
    // unconstrained rank-one maximizers, which generally violate the zero-forcing constraints.
    bool enforce_zf_in_subproblem = true;
    EveModel eve = EveModel::ZeroForcing;

    void validate() const
    {
        if (!(epsilon > 0.0))
            throw ContractError("ZfSettings: epsilon must be positive");
        if (max_iter < 1)
            throw ContractError("ZfSettings: max_iter must be >= 1");
    }
};

// u_B1: principal eigenvector of P_AB K1 P_AB, K1 = beta1 Ps g_AIB H_IB^H Theta H_AI v1 v1^H H_AI^H Theta^H H_IB.
// u_B2: principal eigenvector of P_IB K2 P_IB, K2 = beta2 Ps g_AB H_AB^H v2 v2^H H_AB.
// Both are phased so u^H (P x) > 0; the theta update inherits its global phase from u_B1.
template <typename Real>
std::pair<CVector<Real>, CVector<Real>> zf_update_rbf(const ChannelSet<Real> &ch, const PhaseShiftVector<Real> &theta,
                                                      const TransmitDesign<Real> &td, const ScenarioConfig &cfg,
                                                      const ZfSettings &settings = {})
{
    const auto pb = PowerBudget<Real>::from(cfg);
    if (theta.size() != ch.m())
        throw DimensionError("zf_update_rbf: theta has length " + std::to_string(theta.size()) + ", IRS has " +
                             std::to_string(ch.m()) + " elements");

    CVector<Real> x1 = std::sqrt(pb.beta1 * pb.ps * ch.g_aib) *
                       (ch.h_ib_h * (theta.values().asDiagonal() * (ch.h_ai * td.v1)));
    CVector<Real> x2 = std::sqrt(pb.beta2 * pb.ps * ch.g_ab) * (ch.h_ab_h * td.v2);
    if (settings.enforce_zf_in_subproblem)
    {
        x1 = null_space_projector(ch.h_ab_h) * x1;
        x2 = null_space_projector(ch.h_ib_h) * x2;
    }
    const auto solve = [](const CVector<Real> &x, const char *which) {
        if (!(x.norm() > Real(0)))
            throw DegenerateError(std::string("zf_update_rbf: projected channel of stream ") + which + " is zero");
        // P K P = (P x)(P x)^H
        CVector<Real> u = hermitian_principal_eigpair(CMatrix<Real>(x * x.adjoint())).vector;
        co_phase(u, x);
        return u;
    };
    return {solve(x1, "1"), solve(x2, "2")};
}

// theta_i = exp(j arg w_i): the exact maximizer of |w^H theta| over unit-modulus theta
// (every term of w^H theta becomes |w_i|). Entries with w_i = 0 keep the previous phase.
template <typename Real>
PhaseShiftVector<Real> phase_align(const CVector<Real> &w, const PhaseShiftVector<Real> &prev)
{
    if (w.size() != prev.size())
        throw DimensionError("phase_align: previous theta has the wrong length");
    if (w.squaredNorm() == Real(0))
        return prev;
    return PhaseShiftVector<Real>(unit_modulus_project(w, prev.values()));
}

// Phase-aligns the IRS path of stream 1; with zero-forcing combiners it is the only
// theta-dependent part of the RPS.
template <typename Real>
PhaseShiftVector<Real> zf_update_theta(const ChannelSet<Real> &ch, const CVector<Real> &u_b1,
                                       const TransmitDesign<Real> &td, const ScenarioConfig &cfg,
                                       const PhaseShiftVector<Real> &prev)
{
    return phase_align(gao_theta_terms(ch, u_b1, u_b1, td, cfg).w1, prev);
}

template <typename Real>
OptimizationResult<Real> run_zf(const ChannelSet<Real> &ch, const TransmitDesign<Real> &td,
                                const ScenarioConfig &cfg, const ZfSettings &settings = {},
                                const IterationObserver<Real> &observe = {})
{
    settings.validate();
    OptimizationResult<Real> out;
    auto &sol = out.solution;
    auto &trace = out.trace;

    // The starting combiners already satisfy the zero-forcing constraints, so the
    // trace starts inside the feasible set.
    sol.theta = PhaseShiftVector<Real>::ones(ch.m());
    std::tie(sol.u_b1, sol.u_b2) = zf_update_rbf(ch, sol.theta, td, cfg, settings);
    trace.records.push_back(make_record(ch, td, cfg, sol, settings.eve, 0, ThetaChoice::Previous));
    if (observe)
        observe(sol, trace.records.back());

    for (int p = 1; p <= settings.max_iter; ++p)
    {
        auto cand = sol;
        std::tie(cand.u_b1, cand.u_b2) = zf_update_rbf(ch, cand.theta, td, cfg, settings);
        cand.theta = zf_update_theta(ch, cand.u_b1, td, cfg, cand.theta);
        auto rec = make_record(ch, td, cfg, cand, settings.eve, p, ThetaChoice::Aligned);
        accept_if_not_worse(sol, std::move(cand), rec, trace.records.back());
        trace.records.push_back(rec);
        if (observe)
            observe(sol, trace.records.back());
        trace.iterations_used = p;

        const auto n = trace.records.size();
        if (rps_settled(trace.records[n - 1].rps, trace.records[n - 2].rps, settings.epsilon))
        {
            trace.converged = true;
            break;
        }
    }
    return out;
}

} // namespace irsdm

#endif // IRSDM_OPT_ZF_HPP
