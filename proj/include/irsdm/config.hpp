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
#ifndef IRSDM_CONFIG_HPP
#define IRSDM_CONFIG_HPP

// Flat `key = value` scenario files. See config/schema.conf for the key list.

#include <filesystem>
#include <string>
#include <vector>

#include "irsdm/scenario.hpp"

namespace irsdm
{

struct ParsedConfig
{
    ScenarioConfig scenario;
    std::vector<std::string> defaulted; // keys left at their default, in schema order
};

// Angles accept plain radians or pi fractions: "0.7", "pi/4", "11pi/36", "5*pi/12", "-pi/3".
double parse_angle(const std::string &text, const std::string &key);

// `#` starts a comment; blank lines are ignored. Ps (W) and Ps_dBm are alternatives, as
// are sigma2 (W) and snr_dB (receive SNR of the direct Alice-Bob link). Unknown or
// repeated keys, malformed numbers and out-of-range values raise ValidationError.
// Each applied default is logged at info level.
ParsedConfig parse_config_text(const std::string &text);
ParsedConfig parse_config(const std::filesystem::path &path);

// Every effective value as sorted `key=value` lines with 17 significant digits.
std::string canonical_config(const ScenarioConfig &cfg);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);

} // namespace irsdm

#endif // IRSDM_CONFIG_HPP
