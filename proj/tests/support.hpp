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
#ifndef IRSDM_TESTS_SUPPORT_HPP
#define IRSDM_TESTS_SUPPORT_HPP

// Random instances and independent reference computations shared by the tests and
// the acceptance runner. Nothing here calls the library's rate or eigen routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "irsdm/experiments.hpp"

namespace irsdm::testing
{

using cld = std::complex<long double>;

inline double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline CVectord random_cvector(Eigen::Index n, std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CVectord v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = {g(rng), g(rng)};
    return v;
}

inline CVectord random_unit(Eigen::Index n, std::mt19937_64 &rng)
{
    CVectord v = random_cvector(n, rng);
    return v / v.norm();
}

inline CMatrixd random_cmatrix(Eigen::Index r, Eigen::Index c, std::mt19937_64 &rng)
{
    CMatrixd a(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        a.col(j) = random_cvector(r, rng);
    return a;
}

inline CMatrixd random_hermitian(Eigen::Index n, std::mt19937_64 &rng)
{
    const CMatrixd a = random_cmatrix(n, n, rng);
    return (a + a.adjoint()) * 0.5;
}

inline PhaseShiftVector<double> random_theta(Eigen::Index m, std::mt19937_64 &rng)
{
    RVectord phi(m);
    for (Eigen::Index i = 0; i < m; ++i)
        phi(i) = uniform(rng, 0.0, 2.0 * kPi);
    return PhaseShiftVector<double>::from_phases(phi);
}

// Random geometry, array sizes, distances and power split.
inline ScenarioConfig random_scenario(std::mt19937_64 &rng, std::size_t m_lo = 2, std::size_t m_hi = 40)
{
    const auto count = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const auto angle = [&] { return uniform(rng, 0.0, 2.0 * kPi); };
    ScenarioConfig c;
    c.n_a = count(4, 16);
    c.n_b = count(2, 4);
    c.n_e = count(2, 4);
    c.m = count(m_lo, m_hi);
    for (LinkAngles *l : {&c.ai, &c.ab, &c.ae, &c.ib, &c.ie})
        *l = {angle(), angle()};
    c.d_ai = uniform(rng, 5, 20);
    c.d_ab = uniform(rng, 30, 100);
    c.d_ae = uniform(rng, 30, 100);
    c.d_ib = uniform(rng, 20, 60);
    c.d_ie = uniform(rng, 20, 60);
    c.ps = uniform(rng, 0.1, 10);
    const double b1 = uniform(rng, 0.1, 1), b2 = uniform(rng, 0.1, 1), b3 = uniform(rng, 0.05, 1);
    c.beta1 = b1 / (b1 + b2 + b3);
    c.beta2 = b2 / (b1 + b2 + b3);
    c.beta3 = 1.0 - c.beta1 - c.beta2;
    c.sigma2 = std::pow(10.0, uniform(rng, -11, -8));
    c.validate();
    return c;
}

// Determinant of a 1x1 or 2x2 matrix in extended precision, by cofactor expansion.
inline cld det_small(const std::vector<std::vector<cld>> &a)
{
    if (a.size() == 1)
        return a[0][0];
    return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

// Rate seen through combiner U for streams with received channels F (columns) when the
// antenna-domain interference-plus-noise covariance is C + sigma2 I:
//   log2 det(S + N) - log2 det(N), S = U^H F F^H U, N = U^H (C + sigma2 I) U.
// Built entry by entry in long double; no factorizations, no Gram inverse.
inline double direct_rate(const CMatrixd &f, const CMatrixd &u, const CMatrixd &c, double sigma2)
{
    const auto k = static_cast<std::size_t>(u.cols());
    const auto n = static_cast<std::size_t>(u.rows());
    const auto at = [](const CMatrixd &m, std::size_t i, std::size_t j) {
        const auto z = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        return cld(z.real(), z.imag());
    };
    std::vector<std::vector<cld>> s(k, std::vector<cld>(k)), nn(k, std::vector<cld>(k));
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
        {
            cld sig = 0, noi = 0;
            for (std::size_t st = 0; st < static_cast<std::size_t>(f.cols()); ++st)
            {
                cld up = 0, uq = 0;
                for (std::size_t a = 0; a < n; ++a)
                {
                    up += std::conj(at(u, a, p)) * at(f, a, st);
                    uq += std::conj(at(u, a, q)) * at(f, a, st);
                }
                sig += up * std::conj(uq);
            }
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                {
                    cld cab = c.size() ? at(c, a, b) : cld(0);
                    if (a == b)
                        cab += static_cast<long double>(sigma2);
                    noi += std::conj(at(u, a, p)) * cab * at(u, b, q);
                }
            s[p][q] = sig;
            nn[p][q] = noi;
        }
    std::vector<std::vector<cld>> sn = s;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            sn[p][q] += nn[p][q];
    return static_cast<double>(std::log2(std::real(det_small(sn))) - std::log2(std::real(det_small(nn))));
}

// Bob and Eve rates from the received-signal covariances of the full model, built without
// the library's gain or rate code. The artificial noise goes through Eve's whole effective channel.
inline std::pair<double, double> reference_rates(const ScenarioConfig &c, const ChannelSet<double> &ch,
                                                 const TransmitDesign<double> &td,
                                                 const BeamformingSolution<double> &sol)
{
    const CMatrixd theta = sol.theta.values().asDiagonal();
    const CMatrixd hb = std::sqrt(ch.g_aib) * ch.h_ib_h * theta * ch.h_ai + std::sqrt(ch.g_ab) * ch.h_ab_h;
    const CMatrixd he = std::sqrt(ch.g_aie) * ch.h_ie_h * theta * ch.h_ai + std::sqrt(ch.g_ae) * ch.h_ae_h;
    const auto streams = [&](const CMatrixd &h) {
        CMatrixd f(h.rows(), 2);
        f << std::sqrt(c.beta1 * c.ps) * h * td.v1, std::sqrt(c.beta2 * c.ps) * h * td.v2;
        return f;
    };
    const CMatrixd an = std::sqrt(c.beta3 * c.ps) * he * td.p_an;
    CMatrixd ub(ch.n_b(), 2), ue(ch.n_e(), 2);
    ub << sol.u_b1, sol.u_b2;
    ue << sol.u_e1, sol.u_e2;
    return {direct_rate(streams(hb), ub, CMatrixd(), c.sigma2),
            direct_rate(streams(he), ue, CMatrixd(an * an.adjoint()), c.sigma2)};
}

// max over a uniform phase grid (points per element) of f(theta), for M <= 3.
template <typename F>
double grid_max(Eigen::Index m, int points, F &&f)
{
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    CVectord th(m);
    double best = -1.0;
    while (true)
    {
        for (Eigen::Index i = 0; i < m; ++i)
            th(i) = std::polar(1.0, 2.0 * kPi * idx[static_cast<std::size_t>(i)] / points);
        best = std::max(best, f(th));
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == points)
            idx[j++] = 0;
        if (j == idx.size())
            break;
    }
    return best;
}

// Small model instance at IRS size m with random receive beamformers, for theta-update oracles.
struct ThetaInstance
{
    ScenarioConfig cfg;
    ChannelSet<double> ch;
    TransmitDesign<double> td;
    CVectord u_b1, u_b2;
};

inline ThetaInstance random_theta_instance(std::mt19937_64 &rng, std::size_t m)
{
    while (true)
    {
        ThetaInstance t;
        t.cfg = random_scenario(rng, m, m);
        t.ch = build_channels<double>(t.cfg);
        try
        {
            t.td = make_transmit_design(t.ch);
        }
        catch (const DegenerateError &)
        {
            continue;
        }
        t.u_b1 = random_unit(t.ch.n_b(), rng);
        t.u_b2 = random_unit(t.ch.n_b(), rng);
        return t;
    }
}

} // namespace irsdm::testing

#endif // IRSDM_TESTS_SUPPORT_HPP
