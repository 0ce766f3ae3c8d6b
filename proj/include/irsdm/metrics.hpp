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
#ifndef IRSDM_METRICS_HPP
#define IRSDM_METRICS_HPP

// Effective channels, 2x2 stream gains, achievable rates at Bob and Eve,
// secrecy rate and the receive-power-sum (RPS) objective.

#include <algorithm>
#include <cmath>
#include <utility>

#include "irsdm/channel.hpp"
#include "irsdm/numerics.hpp"
#include "irsdm/precoding.hpp"
#include "irsdm/scenario.hpp"

namespace irsdm
{

enum class Side
{
    Bob,
    Eve
};

// Unit-modulus IRS reflection coefficients theta (Theta = diag(theta)).
template <typename Real>
class PhaseShiftVector
{
public:
    PhaseShiftVector() = default;

    explicit PhaseShiftVector(CVector<Real> theta) : theta_(std::move(theta))
    {
        if (!is_unit_modulus(theta_, Real(64) * std::numeric_limits<Real>::epsilon()))
            throw ContractError("PhaseShiftVector: entries must have unit modulus");
    }

    static PhaseShiftVector ones(Eigen::Index m)
    {
        return PhaseShiftVector(CVector<Real>::Ones(m));
    }

    static PhaseShiftVector from_phases(const RVector<Real> &phi)
    {
        CVector<Real> t(phi.size());
        for (Eigen::Index i = 0; i < phi.size(); ++i)
            t(i) = std::polar(Real(1), phi(i));
        return PhaseShiftVector(std::move(t));
    }

    const CVector<Real> &values() const { return theta_; }
    Eigen::Index size() const { return theta_.size(); }

    // arg(theta_i) mapped into [0, 2pi).
    RVector<Real> phases() const
    {
        RVector<Real> p(theta_.size());
        const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
        for (Eigen::Index i = 0; i < theta_.size(); ++i)
        {
            Real a = std::arg(theta_(i));
            if (a < Real(0))
                a += two_pi;
            p(i) = a >= two_pi ? Real(0) : a;
        }
        return p;
    }

private:
    CVector<Real> theta_;
};

template <typename Real>
struct BeamformingSolution
{
    CVector<Real> u_b1;
    CVector<Real> u_b2;
    CVector<Real> u_e1;
    CVector<Real> u_e2;
    PhaseShiftVector<Real> theta;
};

// (A B; C D) with rows indexed by receive beamformer and columns by stream.
template <typename Real>
struct Gain2x2
{
    std::complex<Real> a, b, c, d;

    Eigen::Matrix<std::complex<Real>, 2, 2> matrix() const
    {
        Eigen::Matrix<std::complex<Real>, 2, 2> g;
        g << a, b, c, d;
        return g;
    }
};

template <typename Real>
struct RateReport
{
    Real r_b{}; // bit/s/Hz
    Real r_e{};
    Real r_s{};
    Real rps{}; // W
};

// Power budget pulled out of a scenario in the working precision.
template <typename Real>
struct PowerBudget
{
    Real ps, beta1, beta2, beta3, sigma2;

    static PowerBudget from(const ScenarioConfig &cfg)
    {
        return {static_cast<Real>(cfg.ps), static_cast<Real>(cfg.beta1), static_cast<Real>(cfg.beta2),
                static_cast<Real>(cfg.beta3), static_cast<Real>(cfg.sigma2)};
    }
};

// H_B = sqrt(g_AIB) H_IB^H Theta H_AI + sqrt(g_AB) H_AB^H, or the Eve analogue.
template <typename Real>
CMatrix<Real> effective_channel(const ChannelSet<Real> &ch, const PhaseShiftVector<Real> &theta, Side side)
{
    if (theta.size() != ch.m())
        throw DimensionError("effective_channel: theta has length " + std::to_string(theta.size()) +
                             ", IRS has " + std::to_string(ch.m()) + " elements");
    const bool bob = side == Side::Bob;
    const CMatrix<Real> &h_irs = bob ? ch.h_ib_h : ch.h_ie_h;
    const CMatrix<Real> &h_dir = bob ? ch.h_ab_h : ch.h_ae_h;
    const Real g_irs = bob ? ch.g_aib : ch.g_aie;
    const Real g_dir = bob ? ch.g_ab : ch.g_ae;
    CMatrix<Real> h = std::sqrt(g_dir) * h_dir;
    h.noalias() += std::sqrt(g_irs) * (h_irs * theta.values().asDiagonal() * ch.h_ai);
    return h;
}

template <typename Real>
Gain2x2<Real> gain_2x2(const CMatrix<Real> &h, const CVector<Real> &u1, const CVector<Real> &u2,
                       const CVector<Real> &v1, const CVector<Real> &v2, Real beta1, Real beta2, Real ps)
{
    if (u1.size() != h.rows() || u2.size() != h.rows() || v1.size() != h.cols() || v2.size() != h.cols())
        throw DimensionError("gain_2x2: beamformer sizes do not conform to the channel");
    const Real s1 = std::sqrt(beta1 * ps);
    const Real s2 = std::sqrt(beta2 * ps);
    const CVector<Real> hv1 = h * v1;
    const CVector<Real> hv2 = h * v2;
    return {s1 * u1.dot(hv1), s2 * u1.dot(hv2), s1 * u2.dot(hv1), s2 * u2.dot(hv2)};
}

// log2 det(I + G G^H [U^H C U + sigma2 U^H U]^{-1}) for K streams seen through the
// N x K combiner U. C is the N x N interference covariance (empty for none).
//
// The value is invariant under U -> U T for invertible T, so it is evaluated in an
// orthonormal basis of span(U) (from the SVD of U) and the log-det is taken from a
// Cholesky factor. Forming the Gram inverse directly is badly conditioned when the
// columns of U are nearly parallel.
template <typename Real>
Real log_det_rate(const CMatrix<Real> &gains, const CMatrix<Real> &u, const CMatrix<Real> &interference,
                  Real sigma2, Real rank_tol = Real(kDefaultRankTol))
{
    const Eigen::Index k = u.cols();
    if (gains.rows() != k || gains.cols() != k)
        throw DimensionError("log_det_rate: gain matrix must be K x K for K combiners");
    if (interference.size() != 0 && (interference.rows() != u.rows() || interference.cols() != u.rows()))
        throw DimensionError("log_det_rate: interference covariance does not match the receive array");
    if (!(sigma2 > Real(0)))
        throw DomainError("log_det_rate: noise power must be positive");

    const auto d = svd(u);
    if (d.s.size() < k || d.rank(rank_tol) < k)
        throw DegenerateError("receive beamformers are linearly dependent; U^H U is singular");

    // U = Q T with Q = d.U, T = S Z^H, so the gains in the Q basis are T^{-H} G = S^{-1} Z^H G.
    const CMatrix<Real> q = d.U.leftCols(k);
    CMatrix<Real> gq = d.V.adjoint() * gains;
    for (Eigen::Index i = 0; i < k; ++i)
        gq.row(i) /= d.s(i);

    CMatrix<Real> cov = sigma2 * CMatrix<Real>::Identity(k, k);
    if (interference.size() != 0)
        cov.noalias() += q.adjoint() * interference * q;
    cov = (cov + cov.adjoint()).eval() * Real(0.5);

    Eigen::LLT<CMatrix<Real>> chol_cov(cov);
    if (chol_cov.info() != Eigen::Success)
        throw DegenerateError("interference-plus-noise covariance is singular");
    const CMatrix<Real> w = chol_cov.matrixL().solve(gq);
    CMatrix<Real> kmat = CMatrix<Real>::Identity(k, k);
    kmat.noalias() += w * w.adjoint();
    Eigen::LLT<CMatrix<Real>> chol_k(kmat);
    if (chol_k.info() != Eigen::Success)
        throw DegenerateError("log_det_rate: I + W W^H is not positive definite");
    Real r = 0;
    for (Eigen::Index i = 0; i < k; ++i)
        r += Real(2) * std::log2(std::real(chol_k.matrixLLT()(i, i)));
    return std::max(Real(0), r);
}

template <typename Real>
CMatrix<Real> stack_columns(const CVector<Real> &a, const CVector<Real> &b)
{
    if (a.size() != b.size())
        throw DimensionError("beamformers must have equal length");
    CMatrix<Real> u(a.size(), 2);
    u << a, b;
    return u;
}

// Achievable rate at Bob (noise only).
template <typename Real>
Real rate_bob(const Gain2x2<Real> &g, const CVector<Real> &u1, const CVector<Real> &u2, Real sigma2)
{
    const CMatrix<Real> gm = g.matrix();
    return log_det_rate<Real>(gm, stack_columns(u1, u2), CMatrix<Real>(), sigma2);
}

// Artificial-noise covariance at Eve's array: beta3 Ps g_AE H_AE^H P_AN P_AN^H H_AE.
template <typename Real>
CMatrix<Real> an_covariance_eve(const ChannelSet<Real> &ch, const CMatrix<Real> &p_an, Real beta3, Real ps)
{
    const CMatrix<Real> hp = ch.h_ae_h * p_an;
    return (beta3 * ps * ch.g_ae) * (hp * hp.adjoint());
}

// Achievable rate at Eve, including the artificial noise leaking through her direct path.
template <typename Real>
Real rate_eve(const Gain2x2<Real> &g, const CVector<Real> &u1, const CVector<Real> &u2, const ChannelSet<Real> &ch,
              const CMatrix<Real> &p_an, Real beta3, Real ps, Real sigma2)
{
    const CMatrix<Real> gm = g.matrix();
    return log_det_rate<Real>(gm, stack_columns(u1, u2), an_covariance_eve(ch, p_an, beta3, ps), sigma2);
}

// beta1 Ps |u_B1^H H_B v1|^2 + beta2 Ps |u_B2^H H_B v2|^2.
template <typename Real>
Real receive_power_sum(const ChannelSet<Real> &ch, const BeamformingSolution<Real> &sol,
                       const TransmitDesign<Real> &td, const ScenarioConfig &cfg)
{
    const auto pb = PowerBudget<Real>::from(cfg);
    const CMatrix<Real> hb = effective_channel(ch, sol.theta, Side::Bob);
    return pb.beta1 * pb.ps * std::norm(sol.u_b1.dot(hb * td.v1)) +
           pb.beta2 * pb.ps * std::norm(sol.u_b2.dot(hb * td.v2));
}

template <typename Real>
RateReport<Real> secrecy_rate(const ChannelSet<Real> &ch, const BeamformingSolution<Real> &sol,
                              const TransmitDesign<Real> &td, const ScenarioConfig &cfg)
{
    const auto pb = PowerBudget<Real>::from(cfg);
    const CMatrix<Real> hb = effective_channel(ch, sol.theta, Side::Bob);
    const CMatrix<Real> he = effective_channel(ch, sol.theta, Side::Eve);

    RateReport<Real> rep;
    rep.r_b = rate_bob(gain_2x2(hb, sol.u_b1, sol.u_b2, td.v1, td.v2, pb.beta1, pb.beta2, pb.ps), sol.u_b1,
                       sol.u_b2, pb.sigma2);
    rep.r_e = rate_eve(gain_2x2(he, sol.u_e1, sol.u_e2, td.v1, td.v2, pb.beta1, pb.beta2, pb.ps), sol.u_e1,
                       sol.u_e2, ch, td.p_an, pb.beta3, pb.ps, pb.sigma2);
    rep.r_s = std::max(Real(0), rep.r_b - rep.r_e);
    rep.rps = receive_power_sum(ch, sol, td, cfg);
    return rep;
}

// Worst-case Eve: u_Ei is the principal eigenvector of H_E v_i v_i^H H_E^H.
template <typename Real>
std::pair<CVector<Real>, CVector<Real>> matched_eve_beamformers(const ChannelSet<Real> &ch,
                                                                const PhaseShiftVector<Real> &theta,
                                                                const TransmitDesign<Real> &td)
{
    const CMatrix<Real> he = effective_channel(ch, theta, Side::Eve);
    const CVector<Real> x1 = he * td.v1;
    const CVector<Real> x2 = he * td.v2;
    if (x1.norm() == Real(0) || x2.norm() == Real(0))
        throw DegenerateError("matched Eve beamformer: a stream does not reach Eve");
    CVector<Real> u1 = hermitian_principal_eigpair(x1 * x1.adjoint()).vector;
    CVector<Real> u2 = hermitian_principal_eigpair(x2 * x2.adjoint()).vector;
    co_phase(u1, x1);
    co_phase(u2, x2);
    return {std::move(u1), std::move(u2)};
}

enum class EveModel
{
    Matched,    // Rayleigh-Ritz on her own effective channel
    ZeroForcing // u_E1^H H_AE^H = 0, u_E2^H H_IE^H = 0
};

inline const char *to_string(EveModel m)
{
    return m == EveModel::Matched ? "matched" : "zf";
}

// Zero-forcing Eve: her stream-1 combiner rejects the direct path and her stream-2
// combiner rejects the IRS path, each matched to the remaining projected channel.
template <typename Real>
std::pair<CVector<Real>, CVector<Real>> zf_eve_beamformers(const ChannelSet<Real> &ch,
                                                           const PhaseShiftVector<Real> &theta,
                                                           const TransmitDesign<Real> &td,
                                                           Real rank_tol = Real(kDefaultRankTol))
{
    const CMatrix<Real> p_ae = null_space_projector(ch.h_ae_h, rank_tol);
    const CMatrix<Real> p_ie = null_space_projector(ch.h_ie_h, rank_tol);
    const CVector<Real> x1 = p_ae * (ch.h_ie_h * (theta.values().asDiagonal() * (ch.h_ai * td.v1)));
    const CVector<Real> x2 = p_ie * (ch.h_ae_h * td.v2);
    if (!(x1.norm() > Real(0)) || !(x2.norm() > Real(0)))
        throw DegenerateError("zero-forcing Eve beamformer: projected channel is zero");
    return {CVector<Real>(x1 / x1.norm()), CVector<Real>(x2 / x2.norm())};
}

template <typename Real>
std::pair<CVector<Real>, CVector<Real>> eve_beamformers(const ChannelSet<Real> &ch,
                                                        const PhaseShiftVector<Real> &theta,
                                                        const TransmitDesign<Real> &td, EveModel model)
{
    return model == EveModel::Matched ? matched_eve_beamformers(ch, theta, td) : zf_eve_beamformers(ch, theta, td);
}

} // namespace irsdm

#endif // IRSDM_METRICS_HPP
