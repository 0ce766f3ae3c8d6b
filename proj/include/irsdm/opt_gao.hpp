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
#ifndef IRSDM_OPT_GAO_HPP
#define IRSDM_OPT_GAO_HPP

// Max-RPS-GAO: alternate Rayleigh-Ritz receive beamformers with a pseudo-inverse
// phase-shift update until the receive power sum settles.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "irsdm/channel.hpp"
#include "irsdm/metrics.hpp"
#include "irsdm/numerics.hpp"
#include "irsdm/precoding.hpp"
#include "irsdm/scenario.hpp"

namespace irsdm
{

// Stationary point used by the theta update.
//  Derived: -Q^+ (w1 t1 + w2 t2), the stationary point of the RPS quadratic.
//  Printed: -Q^+ (w1 t1^* + w2 t2^*), conjugated t terms.
enum class StationaryForm
{
    Derived,
    Printed
};

// Which candidate a theta update kept.
enum class ThetaChoice
{
    Plus,     // projected stationary point
    Minus,    // projected sign-flipped stationary point
    Previous, // neither improved the objective
    Aligned   // zero-forcing phase alignment
};

inline const char *to_string(ThetaChoice c)
{
    switch (c)
    {
    case ThetaChoice::Plus:
        return "plus";
    case ThetaChoice::Minus:
        return "minus";
    case ThetaChoice::Previous:
        return "previous";
    case ThetaChoice::Aligned:
        return "aligned";
    }
    return "?";
}

struct GaoSettings
{
    double epsilon = 1e-6; // relative RPS change
    int max_iter = 50;
    bool safeguard = true;
    StationaryForm stationary = StationaryForm::Derived;
    EveModel eve = EveModel::Matched;

    void validate() const
    {
        if (!(epsilon > 0.0))
            throw ContractError("GaoSettings: epsilon must be positive");
        if (max_iter < 1)
            throw ContractError("GaoSettings: max_iter must be >= 1");
    }
};

template <typename Real>
struct IterationRecord
{
    int iteration = 0; // 0 is the starting point
    Real rps{};
    Real r_s{};
    ThetaChoice choice = ThetaChoice::Previous;
};

template <typename Real>
struct ConvergenceTrace
{
    std::vector<IterationRecord<Real>> records;
    bool converged = false;
    int iterations_used = 0;
};

// Called after every record is appended (including the starting point).
template <typename Real>
using IterationObserver = std::function<void(const BeamformingSolution<Real> &, const IterationRecord<Real> &)>;

template <typename Real>
struct OptimizationResult
{
    BeamformingSolution<Real> solution;
    ConvergenceTrace<Real> trace;
};

// RPS as a function of theta for fixed receive beamformers:
// |w1^H theta + t1|^2 + |w2^H theta + t2|^2.
template <typename Real>
struct ThetaTerms
{
    CVector<Real> w1;
    CVector<Real> w2;
    std::complex<Real> t1;
    std::complex<Real> t2;

    Real objective(const CVector<Real> &theta) const
    {
        return std::norm(w1.dot(theta) + t1) + std::norm(w2.dot(theta) + t2);
    }
};

template <typename Real>
struct ThetaUpdate
{
    PhaseShiftVector<Real> theta;
    ThetaChoice choice = ThetaChoice::Previous;
};

// u_Bi = principal eigenvector of beta_i Ps H_B v_i v_i^H H_B^H, phased so u_Bi^H H_B v_i > 0.
template <typename Real>
std::pair<CVector<Real>, CVector<Real>> gao_update_rbf(const ChannelSet<Real> &ch, const PhaseShiftVector<Real> &theta,
                                                       const TransmitDesign<Real> &td, const ScenarioConfig &cfg)
{
    const auto pb = PowerBudget<Real>::from(cfg);
    const CMatrix<Real> hb = effective_channel(ch, theta, Side::Bob);
    const auto solve = [&](const CVector<Real> &v, Real beta, const char *which) {
        const CVector<Real> x = hb * v;
        if (!(x.norm() > Real(0)) || !(beta > Real(0)))
            throw DegenerateError(std::string("gao_update_rbf: stream ") + which +
                                  " delivers no power to Bob; its beamformer is undefined");
        CVector<Real> u = hermitian_principal_eigpair(CMatrix<Real>((beta * pb.ps) * (x * x.adjoint()))).vector;
        co_phase(u, x);
        return u;
    };
    return {solve(td.v1, pb.beta1, "1"), solve(td.v2, pb.beta2, "2")};
}

// w_i^H = sqrt(beta_i Ps g_AIB) (u_Bi^H H_IB^H) diag(H_AI v_i), so w_i^H theta is the IRS-path gain;
// t_i = sqrt(beta_i Ps g_AB) u_Bi^H H_AB^H v_i is the direct-path gain.
template <typename Real>
ThetaTerms<Real> gao_theta_terms(const ChannelSet<Real> &ch, const CVector<Real> &u_b1, const CVector<Real> &u_b2,
                                 const TransmitDesign<Real> &td, const ScenarioConfig &cfg)
{
    const auto pb = PowerBudget<Real>::from(cfg);
    const auto w = [&](const CVector<Real> &u, const CVector<Real> &v, Real beta) {
        const CVector<Real> hb = ch.h_ib_h.adjoint() * u; // (u^H H_IB^H)^H
        const CVector<Real> ha = ch.h_ai * v;
        return CVector<Real>(std::sqrt(beta * pb.ps * ch.g_aib) * hb.cwiseProduct(ha.conjugate()));
    };
    const auto t = [&](const CVector<Real> &u, const CVector<Real> &v, Real beta) {
        return std::sqrt(beta * pb.ps * ch.g_ab) * u.dot(ch.h_ab_h * v);
    };
    return {w(u_b1, td.v1, pb.beta1), w(u_b2, td.v2, pb.beta2), t(u_b1, td.v1, pb.beta1), t(u_b2, td.v2, pb.beta2)};
}

// Stationary point -Q^+ b projected onto the unit circle. With the safeguard on, the
// sign-flipped candidate is also tried and the best of {+, -, previous} is kept, so
// the objective never decreases.
template <typename Real>
ThetaUpdate<Real> gao_update_theta(const ThetaTerms<Real> &terms, const PhaseShiftVector<Real> &prev, bool safeguard,
                                   StationaryForm form = StationaryForm::Derived)
{
    if (terms.w1.size() != prev.size() || terms.w2.size() != prev.size())
        throw DimensionError("gao_update_theta: w and theta lengths differ");
    if (terms.w1.squaredNorm() == Real(0) && terms.w2.squaredNorm() == Real(0))
        return {prev, ThetaChoice::Previous};

    const CMatrix<Real> q = terms.w1 * terms.w1.adjoint() + terms.w2 * terms.w2.adjoint();
    const bool printed = form == StationaryForm::Printed;
    const CVector<Real> b = terms.w1 * (printed ? std::conj(terms.t1) : terms.t1) +
                            terms.w2 * (printed ? std::conj(terms.t2) : terms.t2);
    const CVector<Real> raw = -(pseudo_inverse(q) * b);

    PhaseShiftVector<Real> plus(unit_modulus_project(raw, prev.values()));
    if (!safeguard)
        return {std::move(plus), ThetaChoice::Plus};

    PhaseShiftVector<Real> minus(unit_modulus_project(CVector<Real>(-raw), prev.values()));
    ThetaUpdate<Real> best{prev, ThetaChoice::Previous};
    Real best_val = terms.objective(prev.values());
    const Real plus_val = terms.objective(plus.values());
    if (plus_val > best_val)
    {
        best = {std::move(plus), ThetaChoice::Plus};
        best_val = plus_val;
    }
    if (terms.objective(minus.values()) > best_val)
        best = {std::move(minus), ThetaChoice::Minus};
    return best;
}

// Relative-change stopping rule shared by both optimizers.
template <typename Real>
bool rps_settled(Real now, Real before, double epsilon)
{
    return std::abs(now - before) <= Real(epsilon) * std::abs(before);
}

template <typename Real>
IterationRecord<Real> make_record(const ChannelSet<Real> &ch, const TransmitDesign<Real> &td,
                                  const ScenarioConfig &cfg, BeamformingSolution<Real> &sol, EveModel eve,
                                  int iteration, ThetaChoice choice)
{
    std::tie(sol.u_e1, sol.u_e2) = eve_beamformers(ch, sol.theta, td, eve);
    const auto rep = secrecy_rate(ch, sol, td, cfg);
    return {iteration, rep.rps, rep.r_s, choice};
}

// Accepts a candidate sweep unless it lowers the RPS. Both sub-steps are exact or
// safeguarded maximizers, so a rejection only happens on last-place rounding at a fixed point.
template <typename Real>
void accept_if_not_worse(BeamformingSolution<Real> &sol, BeamformingSolution<Real> &&cand,
                         IterationRecord<Real> &rec, const IterationRecord<Real> &last)
{
    if (rec.rps < last.rps)
    {
        rec = {rec.iteration, last.rps, last.r_s, ThetaChoice::Previous};
        return;
    }
    sol = std::move(cand);
}

template <typename Real>
OptimizationResult<Real> run_gao(const ChannelSet<Real> &ch, const TransmitDesign<Real> &td,
                                 const ScenarioConfig &cfg, const GaoSettings &settings = {},
                                 const IterationObserver<Real> &observe = {})
{
    settings.validate();
    OptimizationResult<Real> out;
    auto &sol = out.solution;
    auto &trace = out.trace;

    sol.theta = PhaseShiftVector<Real>::ones(ch.m());
    const auto init = initial_rbf(ch);
    sol.u_b1 = init.u_b1;
    sol.u_b2 = init.u_b2;
    trace.records.push_back(make_record(ch, td, cfg, sol, settings.eve, 0, ThetaChoice::Previous));
    if (observe)
        observe(sol, trace.records.back());

    for (int p = 1; p <= settings.max_iter; ++p)
    {
        auto cand = sol;
        std::tie(cand.u_b1, cand.u_b2) = gao_update_rbf(ch, cand.theta, td, cfg);
        auto upd = gao_update_theta(gao_theta_terms(ch, cand.u_b1, cand.u_b2, td, cfg), cand.theta,
                                    settings.safeguard, settings.stationary);
        cand.theta = std::move(upd.theta);
        auto rec = make_record(ch, td, cfg, cand, settings.eve, p, upd.choice);
        if (settings.safeguard)
            accept_if_not_worse(sol, std::move(cand), rec, trace.records.back());
        else
            sol = std::move(cand);
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

#endif // IRSDM_OPT_GAO_HPP
