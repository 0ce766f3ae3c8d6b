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
#ifndef IRSDM_SCENARIO_HPP
#define IRSDM_SCENARIO_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "irsdm/types.hpp"

namespace irsdm
{

inline constexpr double kPi = std::numbers::pi;

struct ArraySpec
{
    std::size_t n = 1;
    double spacing_over_wavelength = 0.5; // d / lambda
};

// Departure angle at the transmitting end, arrival angle at the receiving end (radians, [0, 2pi)).
struct LinkAngles
{
    double departure = 0.0;
    double arrival = 0.0;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// One experiment: geometry, array sizes, power split, noise and path-loss law.
// Defaults reproduce the reference setup (Ps = 30 dBm, beta = 0.4/0.4/0.2, N_A = 16,
// N_B = N_E = 4, M = 80, d_AI = 10 m, d_AB = d_AE = 50 m, AoDs 5pi/36, 11pi/36, pi/3);
// receive-side angles, IRS departure angles, d_IB, d_IE, sigma2 and alpha are local choices.
struct ScenarioConfig
{
    std::size_t n_a = 16;
    std::size_t n_b = 4;
    std::size_t n_e = 4;
    std::size_t m = 80;

    LinkAngles ai{5.0 * kPi / 36.0, kPi / 4.0};   // Alice -> IRS
    LinkAngles ab{11.0 * kPi / 36.0, kPi / 6.0};  // Alice -> Bob
    LinkAngles ae{kPi / 3.0, kPi / 5.0};          // Alice -> Eve
    LinkAngles ib{2.0 * kPi / 5.0, kPi / 4.0};    // IRS -> Bob
    LinkAngles ie{5.0 * kPi / 12.0, kPi / 3.0};   // IRS -> Eve

    double d_ai = 10.0;
    double d_ab = 50.0;
    double d_ae = 50.0;
    double d_ib = 40.0;
    double d_ie = 40.0;

    double ps = 1.0; // W
    double beta1 = 0.4;
    double beta2 = 0.4;
    double beta3 = 0.2;
    double sigma2 = 1e-9; // W, shared by Bob and Eve
    double alpha = 2.0;   // path-loss exponent
    double spacing_over_wavelength = 0.5;

    ArraySpec alice() const { return {n_a, spacing_over_wavelength}; }
    ArraySpec bob() const { return {n_b, spacing_over_wavelength}; }
    ArraySpec eve() const { return {n_e, spacing_over_wavelength}; }
    ArraySpec irs() const { return {m, spacing_over_wavelength}; }

    // Throws ValidationError naming the offending key (config-file spelling).
    void validate() const;
};

inline void validate_angle(double a, const char *key)
{
    if (!std::isfinite(a) || a < 0.0 || a >= 2.0 * kPi)
        throw ValidationError(key, "angle must lie in [0, 2pi)");
}

inline void ScenarioConfig::validate() const
{
    if (n_a < 1)
        throw ValidationError("N_A", "must be >= 1");
    if (n_b < 1)
        throw ValidationError("N_B", "must be >= 1");
    if (n_e < 1)
        throw ValidationError("N_E", "must be >= 1");
    if (m < 1)
        throw ValidationError("M", "must be >= 1");

    validate_angle(ai.departure, "theta_t_AI");
    validate_angle(ai.arrival, "theta_r_AI");
    validate_angle(ab.departure, "theta_t_AB");
    validate_angle(ab.arrival, "theta_r_AB");
    validate_angle(ae.departure, "theta_t_AE");
    validate_angle(ae.arrival, "theta_r_AE");
    validate_angle(ib.departure, "theta_t_IB");
    validate_angle(ib.arrival, "theta_r_IB");
    validate_angle(ie.departure, "theta_t_IE");
    validate_angle(ie.arrival, "theta_r_IE");

    const auto positive = [](double v, const char *key) {
        if (!std::isfinite(v) || !(v > 0.0))
            throw ValidationError(key, "must be positive");
    };
    positive(d_ai, "d_AI");
    positive(d_ab, "d_AB");
    positive(d_ae, "d_AE");
    positive(d_ib, "d_IB");
    positive(d_ie, "d_IE");
    positive(ps, "Ps");
    positive(sigma2, "sigma2");
    positive(spacing_over_wavelength, "spacing_over_wavelength");
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ValidationError("alpha", "must be non-negative");

    const auto share = [](double v, const char *key) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw ValidationError(key, "must lie in [0, 1]");
    };
    share(beta1, "beta1");
    share(beta2, "beta2");
    share(beta3, "beta3");
    if (std::abs(beta1 + beta2 + beta3 - 1.0) > 1e-9)
        throw ValidationError("beta3", "beta1 + beta2 + beta3 must equal 1 (got " +
                                           std::to_string(beta1 + beta2 + beta3) + ")");
}

} // namespace irsdm

#endif // IRSDM_SCENARIO_HPP
