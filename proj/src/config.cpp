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
#include "irsdm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "irsdm/channel.hpp"

namespace irsdm
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string &text, const std::string &key)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto *first = t.data();
    const auto *last = t.data() + t.size();
    if (!t.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last)
        throw ValidationError(key, "expected a number, got '" + text + "'");
    return v;
}

std::size_t parse_count(const std::string &text, const std::string &key)
{
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ValidationError(key, "expected an integer, got '" + text + "'");
    if (v < 1)
        throw ValidationError(key, "must be >= 1");
    return static_cast<std::size_t>(v);
}

struct Field
{
    std::string key;
    std::function<void(ScenarioConfig &, const std::string &)> set;
    std::function<double(const ScenarioConfig &)> get;
};

#define IRSDM_COUNT(name, member)                                                                                    \
    Field{name, [](ScenarioConfig &c, const std::string &v) { c.member = parse_count(v, name); },                    \
          [](const ScenarioConfig &c) { return static_cast<double>(c.member); }}
#define IRSDM_REAL(name, member)                                                                                     \
    Field{name, [](ScenarioConfig &c, const std::string &v) { c.member = parse_number(v, name); },                   \
          [](const ScenarioConfig &c) { return c.member; }}
#define IRSDM_ANGLE(name, member)                                                                                    \
    Field{name, [](ScenarioConfig &c, const std::string &v) { c.member = parse_angle(v, name); },                    \
          [](const ScenarioConfig &c) { return c.member; }}

// Scenario keys in schema order. Ps/Ps_dBm and sigma2/snr_dB are handled separately.
const std::vector<Field> &fields()
{
    static const std::vector<Field> f{
        IRSDM_COUNT("N_A", n_a),
        IRSDM_COUNT("N_B", n_b),
        IRSDM_COUNT("N_E", n_e),
        IRSDM_COUNT("M", m),
        IRSDM_ANGLE("theta_t_AI", ai.departure),
        IRSDM_ANGLE("theta_r_AI", ai.arrival),
        IRSDM_ANGLE("theta_t_AB", ab.departure),
        IRSDM_ANGLE("theta_r_AB", ab.arrival),
        IRSDM_ANGLE("theta_t_AE", ae.departure),
        IRSDM_ANGLE("theta_r_AE", ae.arrival),
        IRSDM_ANGLE("theta_t_IB", ib.departure),
        IRSDM_ANGLE("theta_r_IB", ib.arrival),
        IRSDM_ANGLE("theta_t_IE", ie.departure),
        IRSDM_ANGLE("theta_r_IE", ie.arrival),
        IRSDM_REAL("d_AI", d_ai),
        IRSDM_REAL("d_AB", d_ab),
        IRSDM_REAL("d_AE", d_ae),
        IRSDM_REAL("d_IB", d_ib),
        IRSDM_REAL("d_IE", d_ie),
        IRSDM_REAL("beta1", beta1),
        IRSDM_REAL("beta2", beta2),
        IRSDM_REAL("beta3", beta3),
        IRSDM_REAL("alpha", alpha),
        IRSDM_REAL("spacing_over_wavelength", spacing_over_wavelength),
    };
    return f;
}

#undef IRSDM_COUNT
#undef IRSDM_REAL
#undef IRSDM_ANGLE

} // namespace

double parse_angle(const std::string &text, const std::string &key)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    const auto p = t.find("pi");
    if (p == std::string::npos)
        return parse_number(t, key);

    // [coef][*]pi[/den]
    std::string coef = t.substr(0, p);
    if (!coef.empty() && coef.back() == '*')
        coef.pop_back();
    double c = 1.0;
    if (coef == "-")
        c = -1.0;
    else if (!coef.empty() && coef != "+")
        c = parse_number(coef, key);
    double den = 1.0;
    const std::string rest = t.substr(p + 2);
    if (!rest.empty())
    {
        if (rest.front() != '/')
            throw ValidationError(key, "malformed angle '" + text + "' (expected e.g. 11pi/36)");
        den = parse_number(rest.substr(1), key);
        if (den == 0.0)
            throw ValidationError(key, "angle denominator is zero");
    }
    return c * kPi / den;
}

ParsedConfig parse_config_text(const std::string &text)
{
    std::map<std::string, std::pair<std::string, int>> entries; // key -> (value, line)
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("line " + std::to_string(lineno), "missing key");
        if (value.empty())
            throw ValidationError(key, "missing value");
        if (!entries.emplace(key, std::make_pair(value, lineno)).second)
            throw ValidationError(key, "given more than once (lines " + std::to_string(entries[key].second) +
                                           " and " + std::to_string(lineno) + ")");
    }

    ParsedConfig out;
    ScenarioConfig &cfg = out.scenario;
    std::set<std::string> used;
    const auto take = [&](const std::string &key) -> const std::string * {
        const auto it = entries.find(key);
        if (it == entries.end())
            return nullptr;
        used.insert(key);
        return &it->second.first;
    };

    for (const auto &f : fields())
    {
        if (const auto *v = take(f.key))
            f.set(cfg, *v);
        else
            out.defaulted.push_back(f.key);
    }

    const auto *ps_w = take("Ps");
    const auto *ps_dbm = take("Ps_dBm");
    if (ps_w && ps_dbm)
        throw ValidationError("Ps_dBm", "give either Ps (W) or Ps_dBm, not both");
    if (ps_w)
        cfg.ps = parse_number(*ps_w, "Ps");
    else if (ps_dbm)
        cfg.ps = dbm_to_watts(parse_number(*ps_dbm, "Ps_dBm"));
    else
        out.defaulted.push_back("Ps");

    const auto *s2 = take("sigma2");
    const auto *snr = take("snr_dB");
    if (s2 && snr)
        throw ValidationError("snr_dB", "give either sigma2 (W) or snr_dB, not both");
    if (s2)
        cfg.sigma2 = parse_number(*s2, "sigma2");
    else if (snr)
    {
        const double snr_db = parse_number(*snr, "snr_dB");
        if (!(cfg.ps > 0.0) || !(cfg.d_ab > 0.0))
            throw ValidationError("snr_dB", "needs positive Ps and d_AB");
        cfg.sigma2 = cfg.ps * path_loss<double>(cfg.d_ab, cfg.alpha) / std::pow(10.0, snr_db / 10.0);
    }
    else
        out.defaulted.push_back("sigma2");

    for (const auto &[key, entry] : entries)
        if (!used.count(key))
            throw ValidationError(key, "unknown key (line " + std::to_string(entry.second) + ")");

    cfg.validate();

    for (const auto &key : out.defaulted)
    {
        double shown = key == "Ps" ? cfg.ps : cfg.sigma2;
        for (const auto &f : fields())
            if (f.key == key)
                shown = f.get(cfg);
        spdlog::info("config: {} not set, using default {:.12g}", key, shown);
    }
    return out;
}

ParsedConfig parse_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("config", "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string canonical_config(const ScenarioConfig &cfg)
{
    std::vector<std::pair<std::string, double>> kv;
    for (const auto &f : fields())
        kv.emplace_back(f.key, f.get(cfg));
    kv.emplace_back("Ps", cfg.ps);
    kv.emplace_back("sigma2", cfg.sigma2);
    std::sort(kv.begin(), kv.end());
    std::string out;
    for (const auto &[k, v] : kv)
        out += fmt::format("{}={:.17g}\n", k, v);
    return out;
}

std::string sha256_hex(const std::string &data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256_hex: digest failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i)
        hex += fmt::format("{:02x}", md[i]);
    return hex;
}

} // namespace irsdm
