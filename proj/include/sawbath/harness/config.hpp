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

#pragma once

// Run configuration: a flat `key = value` text file with dotted keys.
//
//   # operating point
//   qubit_freq   = 4.001 GHz
//   drive.omega  = 8.47 MHz
//   drive.delta  = -10 MHz
//   rates.gamma1 = 2.46 1/us
//
// Frequencies accept Hz|kHz|MHz|GHz, rates 1/s|1/ms|1/us|1/ns, lengths
// m|mm|um|nm, times s|ms|us|ns. A bare number is SI. Unknown keys, unknown
// units and malformed values throw Error(ErrorKind::Config).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sawbath/analysis.hpp"
#include "sawbath/com.hpp"
#include "sawbath/lindblad.hpp"
#include "sawbath/loss_model.hpp"

namespace sawbath::harness {

struct GridSpec {
    double omega_min = 1e6;
    double omega_max = 15e6;
    double delta_min = -25e6;
    double delta_max = 25e6;
    int n_omega = 41;
    int n_delta = 51;
};

struct TraceSpec {
    double t_max = 3e-6;
    int n_steps = 301;
};

struct SpectrumSpec {
    double f_min;
    double f_max;
    int n_points;
};

struct RateOverrides {
    double gamma_1 = 2.46e6;
    double gamma_phi = 1.48e6;
    lindblad::Gamma0Choice gamma_0{};
    std::optional<double> gamma_plus;
    std::optional<double> gamma_minus;
};

struct RunConfig {
    com::SawGeometry geometry{};
    com::LossModel loss{};
    double qubit_freq = 4.001e9;
    double omega_rabi = 8.47e6;
    double detuning = -10e6;
    RateOverrides rates{};
    GridSpec grid{};
    TraceSpec trace{};
    SpectrumSpec com{4.40e9, 4.52e9, 20001};
    com::Normalization com_normalization = com::Normalization::PeakUnity;
    double com_raw_scale = 1.0;
    SpectrumSpec loss_scan{3.8e9, 4.6e9, 801};
    analysis::CoherenceTimes coherence{0.5e-6, 0.52e-6};
    std::string output_dir = ".";
    int threads = 0;  // 0: hardware concurrency

    /// Throws Config on out-of-range values.
    void validate() const;
};

/// Applies a single setting; `key` is a dotted name.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
/// Parses and applies `key=value`.
void apply_assignment(RunConfig& cfg, std::string_view assignment);

RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every recognised key, for help output and tests.
std::vector<std::string> config_keys();

}  // namespace sawbath::harness
