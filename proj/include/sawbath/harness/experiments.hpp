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

// Experiment drivers behind the CLI subcommands. Each returns a Table whose
// CSV rendering is deterministic for a fixed RunConfig.

#include <span>
#include <string>

#include "sawbath/harness/config.hpp"
#include "sawbath/harness/table.hpp"
#include "sawbath/spectrum_fit.hpp"

namespace sawbath::harness {

/// Drive at the configured operating point, f_drive = qubit_freq + detuning.
lindblad::Drive operating_drive(const RunConfig& cfg, double omega_rabi, double detuning);
/// Dressed rates from the loss model with the configured overrides applied.
lindblad::RateSet operating_rates(const RunConfig& cfg, const lindblad::Drive& drive);

/// Columns f, conductance, idt_conductance, mirror_reflection.
Table run_com_spectrum(const RunConfig& cfg);

struct ComSummary {
    double peak_frequency = 0.0;
    com::FrequencyBand stopband{};
    double bragg_reflection = 0.0;  // |Gamma(f_B)| of the lossless grating
    com::LorentzianFit fit{};
};

/// Peak, stopband and Lorentzian fit over the stopband for a com-spectrum table.
ComSummary summarize_com_spectrum(const RunConfig& cfg, const Table& spectrum);
Table com_summary_table(const ComSummary& summary);

/// Columns f, gamma_total, gamma_phonon.
Table run_loss_spectrum(const RunConfig& cfg);

/// Columns t, sx, sy, sz, purity; trace.n_steps rows starting from |g>.
Table run_time_trace(const RunConfig& cfg);

/// Columns omega, delta, sx, sy, sz, purity, t_eff, status. Row order is
/// delta-major, omega-minor for any thread count. Failed points keep NaN
/// observables and a status text; other points are unaffected.
Table run_steady_map(const RunConfig& cfg);

/// Single-row tables for the fitting subcommands.
Table fit_loss_table(std::span<const std::pair<double, double>> samples, int n_pairs);
Table rabi_fit_table(std::span<const std::pair<double, double>> points);
Table dephasing_table(const analysis::CoherenceTimes& times);

/// Status column values. t_eff is written as inf for an infinite temperature
/// and negative for an inverted population.
inline constexpr const char* status_ok = "ok";
inline constexpr const char* status_infinite = "infinite_temperature";
inline constexpr const char* status_inverted = "inverted";
// Failed points carry "error: <message>".

}  // namespace sawbath::harness
