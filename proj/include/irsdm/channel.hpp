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
#ifndef IRSDM_CHANNEL_HPP
#define IRSDM_CHANNEL_HPP

#include <cmath>
#include <complex>

#include "irsdm/numerics.hpp"
#include "irsdm/scenario.hpp"
#include "irsdm/types.hpp"

namespace irsdm
{

/// Normalized ULA steering vector. Entry k (1-based) is
/// exp(j 2 pi Psi(k)) / sqrt(n) with Psi(k) = -(k - (n+1)/2) (d/lambda) cos(theta).
template <typename Real = double>
CVector<Real> steering_vector(Real theta, const ArraySpec &arr)
{
    if (arr.n < 1)
        throw DimensionError("steering_vector: array needs at least one element");
    const auto n = static_cast<Eigen::Index>(arr.n);
    const Real spacing = static_cast<Real>(arr.spacing_over_wavelength);
    const Real centre = Real(n + 1) / Real(2);
    const Real amp = Real(1) / std::sqrt(Real(n));
    const Real c = std::cos(theta);
    CVector<Real> h(n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const Real psi = -((Real(k + 1) - centre) * spacing * c);
        h(k) = std::polar(amp, Real(2) * std::numbers::pi_v<Real> * psi);
    }
    return h;
}

/// Rank-one line-of-sight channel h(rx_angle) h(tx_angle)^H, shape rx.n x tx.n.
template <typename Real = double>
CMatrix<Real> los_channel(Real rx_angle, const ArraySpec &rx, Real tx_angle, const ArraySpec &tx)
{
    return steering_vector<Real>(rx_angle, rx) * steering_vector<Real>(tx_angle, tx).adjoint();
}

/// Linear gain dist^(-alpha).
template <typename Real = double>
Real path_loss(Real dist_m, Real alpha)
{
    if (!(dist_m > Real(0)))
        throw DomainError("path_loss: distance must be positive");
    return std::pow(dist_m, -alpha);
}

// The five LOS matrices and linear path gains. Receive-side matrices are stored
// already conjugate-transposed (H_AB^H etc.), as they appear in the received signal.
template <typename Real>
struct ChannelSet
{
    CMatrix<Real> h_ai;   // M x N_A
    CMatrix<Real> h_ab_h; // N_B x N_A
    CMatrix<Real> h_ae_h; // N_E x N_A
    CMatrix<Real> h_ib_h; // N_B x M
    CMatrix<Real> h_ie_h; // N_E x M
    Real g_aib{};
    Real g_aie{};
    Real g_ab{};
    Real g_ae{};

    Eigen::Index n_a() const { return h_ai.cols(); }
    Eigen::Index m() const { return h_ai.rows(); }
    Eigen::Index n_b() const { return h_ab_h.rows(); }
    Eigen::Index n_e() const { return h_ae_h.rows(); }
};

template <typename Real = double>
ChannelSet<Real> build_channels(const ScenarioConfig &cfg)
{
    const auto A = cfg.alice();
    const auto B = cfg.bob();
    const auto E = cfg.eve();
    const auto I = cfg.irs();
    const auto r = [](double v) { return static_cast<Real>(v); };

    ChannelSet<Real> ch;
    ch.h_ai = los_channel<Real>(r(cfg.ai.arrival), I, r(cfg.ai.departure), A);
    ch.h_ab_h = los_channel<Real>(r(cfg.ab.arrival), B, r(cfg.ab.departure), A);
    ch.h_ae_h = los_channel<Real>(r(cfg.ae.arrival), E, r(cfg.ae.departure), A);
    ch.h_ib_h = los_channel<Real>(r(cfg.ib.arrival), B, r(cfg.ib.departure), I);
    ch.h_ie_h = los_channel<Real>(r(cfg.ie.arrival), E, r(cfg.ie.departure), I);

    const Real alpha = r(cfg.alpha);
    const Real g_ai = path_loss<Real>(r(cfg.d_ai), alpha);
    ch.g_aib = g_ai * path_loss<Real>(r(cfg.d_ib), alpha);
    ch.g_aie = g_ai * path_loss<Real>(r(cfg.d_ie), alpha);
    ch.g_ab = path_loss<Real>(r(cfg.d_ab), alpha);
    ch.g_ae = path_loss<Real>(r(cfg.d_ae), alpha);
    return ch;
}

} // namespace irsdm

#endif // IRSDM_CHANNEL_HPP
