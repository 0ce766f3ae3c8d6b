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
#ifndef IRSDM_PRECODING_HPP
#define IRSDM_PRECODING_HPP

#include <utility>

#include "irsdm/channel.hpp"
#include "irsdm/numerics.hpp"

namespace irsdm
{

// Confidential-message precoders and the artificial-noise projector.
template <typename Real>
struct TransmitDesign
{
    CVector<Real> v1;   // N_A, unit norm
    CVector<Real> v2;   // N_A, unit norm
    CMatrix<Real> p_an; // N_A x N_A, projector onto the null space of H_CM
};

template <typename Real>
struct InitialRbf
{
    CVector<Real> u_b1;
    CVector<Real> u_b2;
};

// [H_AI; H_AB^H], (M + N_B) x N_A.
template <typename Real>
CMatrix<Real> stack_cm_channel(const ChannelSet<Real> &ch)
{
    CMatrix<Real> h(ch.h_ai.rows() + ch.h_ab_h.rows(), ch.n_a());
    h << ch.h_ai, ch.h_ab_h;
    return h;
}

// P_AN = I - H_CM^H [H_CM H_CM^H]^+ H_CM.
template <typename Derived>
CMatrix<typename Derived::RealScalar> an_projection(const Eigen::MatrixBase<Derived> &h_cm,
                                                    typename Derived::RealScalar rank_tol = kDefaultRankTol)
{
    using Real = typename Derived::RealScalar;
    const CMatrix<Real> h = h_cm;
    const CMatrix<Real> gram = h * h.adjoint();
    CMatrix<Real> p = CMatrix<Real>::Identity(h.cols(), h.cols());
    p.noalias() -= h.adjoint() * pseudo_inverse(gram, rank_tol) * h;
    return p;
}

// First two right singular vectors of H_CM. Needs two usable singular directions.
template <typename Derived>
std::pair<CVector<typename Derived::RealScalar>, CVector<typename Derived::RealScalar>>
transmit_beamformers(const Eigen::MatrixBase<Derived> &h_cm,
                     typename Derived::RealScalar rank_tol = kDefaultRankTol)
{
    const auto d = svd(h_cm);
    if (d.V.cols() < 2 || d.rank(rank_tol) < 2)
        throw DegenerateError("transmit_beamformers: H_CM has rank " + std::to_string(d.rank(rank_tol)) +
                              " < 2; the geometry supports only one confidential stream");
    return {d.V.col(0), d.V.col(1)};
}

template <typename Real>
TransmitDesign<Real> make_transmit_design(const ChannelSet<Real> &ch, Real rank_tol = Real(kDefaultRankTol))
{
    const CMatrix<Real> h_cm = stack_cm_channel(ch);
    auto [v1, v2] = transmit_beamformers(h_cm, rank_tol);
    return {std::move(v1), std::move(v2), an_projection(h_cm, rank_tol)};
}

// Leading two left singular vectors of H_BR = [H_IB^H  H_AB^H].
template <typename Real>
InitialRbf<Real> initial_rbf(const ChannelSet<Real> &ch)
{
    CMatrix<Real> h_br(ch.n_b(), ch.h_ib_h.cols() + ch.h_ab_h.cols());
    h_br << ch.h_ib_h, ch.h_ab_h;
    const auto d = svd(h_br);
    if (d.U.cols() < 2)
        throw DimensionError("initial_rbf: Bob needs at least two antennas for two receive beamformers");
    return {d.U.col(0), d.U.col(1)};
}

} // namespace irsdm

#endif // IRSDM_PRECODING_HPP
