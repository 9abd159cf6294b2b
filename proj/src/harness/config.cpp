// Copyright 2026 The sawbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawbath/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sawbath/error.hpp"

namespace sawbath::harness {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

enum class Quantity { Plain, Frequency, Rate, Length, Time, Speed, Attenuation };

const std::map<std::string_view, double>& units_of(Quantity q) {
    static const std::map<std::string_view, double> plain{};
    static const std::map<std::string_view, double> frequency{
        {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
    static const std::map<std::string_view, double> rate{
        {"1/s", 1.0}, {"1/ms", 1e3}, {"1/us", 1e6}, {"1/\xC2\xB5s", 1e6}, {"1/ns", 1e9}};
    static const std::map<std::string_view, double> length{
        {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"\xC2\xB5m", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string_view, double> time{
        {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"\xC2\xB5s", 1e-6}, {"ns", 1e-9}};
    static const std::map<std::string_view, double> speed{{"m/s", 1.0}};
    static const std::map<std::string_view, double> attenuation{{"Np/m", 1.0}};
    switch (q) {
        case Quantity::Frequency: return frequency;
        case Quantity::Rate: return rate;
        case Quantity::Length: return length;
        case Quantity::Time: return time;
        case Quantity::Speed: return speed;
        case Quantity::Attenuation: return attenuation;
        case Quantity::Plain: break;
    }
    return plain;
}

double parse_quantity(std::string_view text, Quantity q) {
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || !std::isfinite(value))
        config_error("malformed number '" + std::string(text) + "'");
    const std::string_view unit = trim(std::string_view(res.ptr, s.data() + s.size() - res.ptr));
    if (unit.empty()) return value;
    const auto& table = units_of(q);
    const auto it = table.find(unit);
    if (it == table.end()) config_error("unknown unit '" + std::string(unit) + "'");
    return value * it->second;
}

int parse_int(std::string_view text) {
    const std::string_view s = trim(text);
    int value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        config_error("malformed integer '" + std::string(text) + "'");
    return value;
}

double parse_real_part(std::string_view s, std::string_view original) {
    if (s == "" || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        config_error("malformed complex number '" + std::string(original) + "'");
    return v;
}

// Accepts "a", "bi", "a+bi", "a-bi" (whitespace ignored).
com::cplx parse_complex(std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    if (compact.empty()) config_error("empty complex number");
    if (compact.back() != 'i' && compact.back() != 'j')
        return {parse_real_part(compact, text), 0.0};
    const std::string_view body(compact.data(), compact.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_real_part(body, text)};
    return {parse_real_part(body.substr(0, split), text),
            parse_real_part(body.substr(split), text)};
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

Setter quantity(double RunConfig::*field, Quantity q) {
    return [field, q](RunConfig& c, std::string_view v) { c.*field = parse_quantity(v, q); };
}

template <typename Member>
Setter nested(Member member, double std::remove_reference_t<decltype(RunConfig{}.*member)>::*field,
              Quantity q) {
    return [member, field, q](RunConfig& c, std::string_view v) {
        (c.*member).*field = parse_quantity(v, q);
    };
}

template <typename Member>
Setter nested_int(Member member, int std::remove_reference_t<decltype(RunConfig{}.*member)>::*field) {
    return [member, field](RunConfig& c, std::string_view v) { (c.*member).*field = parse_int(v); };
}

const std::map<std::string, Setter, std::less<>>& registry() {
    using Q = Quantity;
    using com::SawGeometry;
    using com::LossModel;
    static const std::map<std::string, Setter, std::less<>> keys{
        {"geometry.lambda_idt", nested(&RunConfig::geometry, &SawGeometry::lambda_idt, Q::Length)},
        {"geometry.lambda_mirror", nested(&RunConfig::geometry, &SawGeometry::lambda_mirror, Q::Length)},
        {"geometry.n_pairs", nested_int(&RunConfig::geometry, &SawGeometry::n_pairs)},
        {"geometry.overlap_w", nested(&RunConfig::geometry, &SawGeometry::overlap_w, Q::Length)},
        {"geometry.l_mirror", nested(&RunConfig::geometry, &SawGeometry::l_mirror, Q::Length)},
        {"geometry.l_idt", nested(&RunConfig::geometry, &SawGeometry::l_idt, Q::Length)},
        {"geometry.v_sound", nested(&RunConfig::geometry, &SawGeometry::v_sound, Q::Speed)},
        {"geometry.eta", nested(&RunConfig::geometry, &SawGeometry::eta, Q::Attenuation)},
        {"geometry.gap", nested(&RunConfig::geometry, &SawGeometry::gap, Q::Length)},
        {"geometry.r_idt", [](RunConfig& c, std::string_view v) { c.geometry.r_idt = parse_complex(v); }},
        {"geometry.r_mirror",
         [](RunConfig& c, std::string_view v) { c.geometry.r_mirror = parse_complex(v); }},

        {"loss.q_internal", nested(&RunConfig::loss, &LossModel::q_internal, Q::Plain)},
        {"loss.gamma0", nested(&RunConfig::loss, &LossModel::gamma0, Q::Rate)},
        {"loss.n_pairs", nested_int(&RunConfig::loss, &LossModel::n_pairs)},
        {"loss.f_s", nested(&RunConfig::loss, &LossModel::f_s, Q::Frequency)},

        {"qubit_freq", quantity(&RunConfig::qubit_freq, Q::Frequency)},
        {"drive.omega", quantity(&RunConfig::omega_rabi, Q::Frequency)},
        {"drive.delta", quantity(&RunConfig::detuning, Q::Frequency)},

        {"rates.gamma1", nested(&RunConfig::rates, &RateOverrides::gamma_1, Q::Rate)},
        {"rates.gamma_phi", nested(&RunConfig::rates, &RateOverrides::gamma_phi, Q::Rate)},
        {"rates.gamma0_policy",
         [](RunConfig& c, std::string_view v) {
             const std::string_view s = trim(v);
             if (s == "carrier")
                 c.rates.gamma_0.policy = lindblad::Gamma0Policy::Carrier;
             else if (s == "zero")
                 c.rates.gamma_0.policy = lindblad::Gamma0Policy::Zero;
             else if (s == "explicit")
                 c.rates.gamma_0.policy = lindblad::Gamma0Policy::Explicit;
             else
                 config_error("rates.gamma0_policy must be carrier, zero or explicit");
         }},
        {"rates.gamma0",
         [](RunConfig& c, std::string_view v) {
             c.rates.gamma_0.value = parse_quantity(v, Q::Rate);
             c.rates.gamma_0.policy = lindblad::Gamma0Policy::Explicit;
         }},
        {"rates.gamma_plus",
         [](RunConfig& c, std::string_view v) { c.rates.gamma_plus = parse_quantity(v, Q::Rate); }},
        {"rates.gamma_minus",
         [](RunConfig& c, std::string_view v) { c.rates.gamma_minus = parse_quantity(v, Q::Rate); }},

        {"grid.omega_min", nested(&RunConfig::grid, &GridSpec::omega_min, Q::Frequency)},
        {"grid.omega_max", nested(&RunConfig::grid, &GridSpec::omega_max, Q::Frequency)},
        {"grid.delta_min", nested(&RunConfig::grid, &GridSpec::delta_min, Q::Frequency)},
        {"grid.delta_max", nested(&RunConfig::grid, &GridSpec::delta_max, Q::Frequency)},
        {"grid.n_omega", nested_int(&RunConfig::grid, &GridSpec::n_omega)},
        {"grid.n_delta", nested_int(&RunConfig::grid, &GridSpec::n_delta)},

        {"trace.t_max", nested(&RunConfig::trace, &TraceSpec::t_max, Q::Time)},
        {"trace.n_steps", nested_int(&RunConfig::trace, &TraceSpec::n_steps)},

        {"com.f_min", nested(&RunConfig::com, &SpectrumSpec::f_min, Q::Frequency)},
        {"com.f_max", nested(&RunConfig::com, &SpectrumSpec::f_max, Q::Frequency)},
        {"com.n_points", nested_int(&RunConfig::com, &SpectrumSpec::n_points)},
        {"com.normalization",
         [](RunConfig& c, std::string_view v) {
             const std::string_view s = trim(v);
             if (s == "peak")
                 c.com_normalization = com::Normalization::PeakUnity;
             else if (s == "raw")
                 c.com_normalization = com::Normalization::Raw;
             else
                 config_error("com.normalization must be peak or raw");
         }},
        {"com.raw_scale", quantity(&RunConfig::com_raw_scale, Q::Plain)},

        {"loss_scan.f_min", nested(&RunConfig::loss_scan, &SpectrumSpec::f_min, Q::Frequency)},
        {"loss_scan.f_max", nested(&RunConfig::loss_scan, &SpectrumSpec::f_max, Q::Frequency)},
        {"loss_scan.n_points", nested_int(&RunConfig::loss_scan, &SpectrumSpec::n_points)},

        {"coherence.t1", nested(&RunConfig::coherence, &analysis::CoherenceTimes::t1, Q::Time)},
        {"coherence.t2_star",
         nested(&RunConfig::coherence, &analysis::CoherenceTimes::t2_star, Q::Time)},

        {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); }},
        {"threads", [](RunConfig& c, std::string_view v) { c.threads = parse_int(v); }},
    };
    return keys;
}

void check_axis(double lo, double hi, int n, const char* name) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) config_error(std::string(name) + ": non-finite bound");
    if (n == 1 && lo == hi) return;  // single-point axis
    if (n < 2) config_error(std::string(name) + ": need at least 2 points (or 1 with min == max)");
    if (!(hi > lo)) config_error(std::string(name) + ": max must exceed min");
}

void check_spectrum(const SpectrumSpec& s, const char* name) {
    if (!(s.f_min > 0.0)) config_error(std::string(name) + ".f_min must be positive");
    if (!(s.f_max > s.f_min)) config_error(std::string(name) + ".f_max must exceed f_min");
    if (s.n_points < 2) config_error(std::string(name) + ".n_points must be >= 2");
}

}  // namespace

void RunConfig::validate() const {
    try {
        geometry.validate();
        loss.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    if (!(qubit_freq > 0.0)) config_error("qubit_freq must be positive");
    if (!(omega_rabi >= 0.0)) config_error("drive.omega must be >= 0");
    if (!std::isfinite(detuning)) config_error("drive.delta must be finite");
    for (double r : {rates.gamma_1, rates.gamma_phi, rates.gamma_0.value})
        if (!(r >= 0.0)) config_error("rates must be >= 0");
    if ((rates.gamma_plus && !(*rates.gamma_plus >= 0.0)) ||
        (rates.gamma_minus && !(*rates.gamma_minus >= 0.0)))
        config_error("rates must be >= 0");
    check_axis(grid.omega_min, grid.omega_max, grid.n_omega, "grid.omega");
    check_axis(grid.delta_min, grid.delta_max, grid.n_delta, "grid.delta");
    if (!(grid.omega_min >= 0.0)) config_error("grid.omega_min must be >= 0");
    if (!(trace.t_max > 0.0)) config_error("trace.t_max must be positive");
    if (trace.n_steps < 2) config_error("trace.n_steps must be >= 2");
    check_spectrum(com, "com");
    check_spectrum(loss_scan, "loss_scan");
    if (!(com_raw_scale > 0.0)) config_error("com.raw_scale must be positive");
    if (!(coherence.t1 > 0.0) || !(coherence.t2_star > 0.0))
        config_error("coherence times must be positive");
    if (threads < 0) config_error("threads must be >= 0");
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    const auto& keys = registry();
    const auto it = keys.find(trim(key));
    if (it == keys.end()) config_error("unknown key '" + std::string(trim(key)) + "'");
    try {
        it->second(cfg, value);
    } catch (const Error& e) {
        config_error(std::string(trim(key)) + ": " + e.what());
    }
}

void apply_assignment(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        config_error("expected key=value, got '" + std::string(assignment) + "'");
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

RunConfig parse_config(std::string_view text, std::string_view source) {
    RunConfig cfg;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_assignment(cfg, line);
        } catch (const Error& e) {
            std::ostringstream os;
            os << source << ":" << lineno << ": " << e.what();
            config_error(os.str());
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& [key, setter] : registry()) out.push_back(key);
    return out;
}

}  // namespace sawbath::harness
