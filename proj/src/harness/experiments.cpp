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

#include "sawbath/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "sawbath/error.hpp"
#include "sawbath/spectrum_fit.hpp"

namespace sawbath::harness {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> axis(double lo, double hi, int n) {
    if (n == 1) return {lo};
    return com::linear_grid(lo, hi, static_cast<std::size_t>(n));
}

std::string point_context(double omega, double delta, double t) {
    std::ostringstream os;
    os << "at Omega=" << omega << " Hz, Delta=" << delta << " Hz, t=" << t << " s: ";
    return os.str();
}

unsigned worker_count(int requested, std::size_t jobs) {
    unsigned n = requested > 0 ? static_cast<unsigned>(requested) : std::thread::hardware_concurrency();
    n = std::max(1u, n);
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

lindblad::Drive operating_drive(const RunConfig& cfg, double omega_rabi, double detuning) {
    lindblad::Drive d;
    d.omega_rabi = omega_rabi;
    d.detuning = detuning;
    d.f_drive = cfg.qubit_freq + detuning;
    return d;
}

lindblad::RateSet operating_rates(const RunConfig& cfg, const lindblad::Drive& drive) {
    lindblad::RateSet r = lindblad::sample_dressed_rates(cfg.loss, drive, cfg.rates.gamma_0);
    r.gamma_1 = cfg.rates.gamma_1;
    r.gamma_phi = cfg.rates.gamma_phi;
    if (cfg.rates.gamma_plus) r.gamma_plus = *cfg.rates.gamma_plus;
    if (cfg.rates.gamma_minus) r.gamma_minus = *cfg.rates.gamma_minus;
    r.validate();
    return r;
}

Table run_com_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = com::linear_grid(cfg.com.f_min, cfg.com.f_max,
                                       static_cast<std::size_t>(cfg.com.n_points));
    const auto cascade =
        com::cascaded_conductance(cfg.geometry, grid, cfg.com_normalization, cfg.com_raw_scale);
    const auto idt = com::idt_spectrum(cfg.geometry, grid);
    Table t;
    t.header = {"f", "conductance", "idt_conductance", "mirror_reflection"};
    t.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({grid[i], cascade.values[i], idt.values[i],
                          std::abs(com::mirror_reflection(cfg.geometry, grid[i]))});
    return t;
}

ComSummary summarize_com_spectrum(const RunConfig& cfg, const Table& spectrum) {
    const std::size_t fc = spectrum.column("f");
    const std::size_t gc = spectrum.column("conductance");
    com::ConductanceSpectrum s;
    s.normalization = cfg.com_normalization;
    for (std::size_t i = 0; i < spectrum.rows.size(); ++i) {
        s.frequencies.push_back(spectrum.number(i, fc));
        s.values.push_back(spectrum.number(i, gc));
    }
    s.validate();
    if (s.size() == 0) throw_invalid("summarize_com_spectrum: empty spectrum");

    ComSummary out;
    const auto peak = std::max_element(s.values.begin(), s.values.end());
    out.peak_frequency = s.frequencies[static_cast<std::size_t>(peak - s.values.begin())];
    out.stopband = com::mirror_stopband(cfg.geometry);
    com::SawGeometry lossless = cfg.geometry;
    lossless.eta = 0.0;
    out.bragg_reflection = std::abs(com::mirror_reflection(lossless, lossless.bragg_frequency()));
    out.fit = com::fit_lorentzian(s, {out.stopband.lower, out.stopband.upper});
    return out;
}

Table com_summary_table(const ComSummary& s) {
    Table t;
    t.header = {"peak_frequency", "stopband_lower", "stopband_upper", "bragg_reflection",
                "fit_center",     "fit_fwhm",       "fit_amplitude",  "fit_offset",
                "fit_residual",   "fit_converged"};
    t.add_row({s.peak_frequency, s.stopband.lower, s.stopband.upper, s.bragg_reflection,
               s.fit.center, s.fit.fwhm, s.fit.amplitude, s.fit.offset, s.fit.residual_norm,
               std::string(s.fit.converged ? "true" : "false")});
    return t;
}

Table run_loss_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = com::linear_grid(cfg.loss_scan.f_min, cfg.loss_scan.f_max,
                                       static_cast<std::size_t>(cfg.loss_scan.n_points));
    Table t;
    t.header = {"f", "gamma_total", "gamma_phonon"};
    t.rows.reserve(grid.size());
    for (double f : grid)
        t.rows.push_back({f, com::qubit_loss(cfg.loss, f, com::LossPart::Total),
                          com::qubit_loss(cfg.loss, f, com::LossPart::PhononOnly)});
    return t;
}

Table run_time_trace(const RunConfig& cfg) {
    cfg.validate();
    const lindblad::Drive drive = operating_drive(cfg, cfg.omega_rabi, cfg.detuning);
    Table t;
    t.header = {"t", "sx", "sy", "sz", "purity"};
    double now = 0.0;
    try {
        const lindblad::RateSet rates = operating_rates(cfg, drive);
        const lindblad::Propagator prop(lindblad::build_liouvillian(drive, rates));
        const lindblad::DensityMatrix rho0 = lindblad::DensityMatrix::ground();
        const double dt = cfg.trace.t_max / (cfg.trace.n_steps - 1);
        t.rows.reserve(static_cast<std::size_t>(cfg.trace.n_steps));
        for (int k = 0; k < cfg.trace.n_steps; ++k) {
            now = k == cfg.trace.n_steps - 1 ? cfg.trace.t_max : k * dt;
            const lindblad::DensityMatrix rho = lindblad::evolve(rho0, prop, now);
            const lindblad::BlochVector b = lindblad::bloch_vector(rho);
            t.rows.push_back({now, b.x, b.y, b.z, rho.purity()});
        }
    } catch (const Error& e) {
        throw Error(e.kind(), point_context(drive.omega_rabi, drive.detuning, now) + e.what());
    }
    return t;
}

namespace {

std::vector<Cell> steady_point(const RunConfig& cfg, double omega, double delta) {
    std::vector<Cell> row{omega, delta, nan, nan, nan, nan, nan, std::string(status_ok)};
    lindblad::Drive drive = operating_drive(cfg, omega, delta);
    lindblad::DressedFrame frame;
    try {
        frame = lindblad::dressed_frame(drive);
        const lindblad::RateSet rates = operating_rates(cfg, drive);
        const lindblad::DensityMatrix rho =
            lindblad::steady_state(lindblad::build_liouvillian(drive, rates));
        const lindblad::Observables obs = lindblad::observables(rho, frame);
        row[2] = obs.bloch.x;
        row[3] = obs.bloch.y;
        row[4] = obs.bloch.z;
        row[5] = obs.purity;
        const auto temp = lindblad::effective_temperature(obs.sigma_z_dressed, frame.omega_r);
        row[6] = temp.kelvin;
        if (temp.status == lindblad::TemperatureStatus::Infinite) row[7] = std::string(status_infinite);
        if (temp.status == lindblad::TemperatureStatus::Inverted) row[7] = std::string(status_inverted);
    } catch (const std::exception& e) {
        row[7] = std::string("error: ") + e.what();
    }
    return row;
}

}  // namespace

Table run_steady_map(const RunConfig& cfg) {
    cfg.validate();
    const auto omegas = axis(cfg.grid.omega_min, cfg.grid.omega_max, cfg.grid.n_omega);
    const auto deltas = axis(cfg.grid.delta_min, cfg.grid.delta_max, cfg.grid.n_delta);
    const std::size_t n = omegas.size() * deltas.size();

    Table t;
    t.header = {"omega", "delta", "sx", "sy", "sz", "purity", "t_eff", "status"};
    t.rows.resize(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            const std::size_t id = i / omegas.size();
            const std::size_t io = i % omegas.size();
            t.rows[i] = steady_point(cfg, omegas[io], deltas[id]);
        }
    };
    const unsigned workers = worker_count(cfg.threads, n);
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    return t;
}

Table fit_loss_table(std::span<const std::pair<double, double>> samples, int n_pairs) {
    std::vector<com::LossSample> data;
    data.reserve(samples.size());
    for (const auto& [f, g] : samples) data.push_back({f, g});
    const com::LossFit fit = com::fit_loss_model(data, n_pairs);
    Table t;
    t.header = {"q_internal", "gamma0", "n_pairs", "f_s", "residual_norm"};
    t.add_row({fit.model.q_internal, fit.model.gamma0, static_cast<double>(fit.model.n_pairs),
               fit.model.f_s, fit.residual_norm});
    return t;
}

Table rabi_fit_table(std::span<const std::pair<double, double>> points) {
    std::vector<analysis::RabiPoint> data;
    data.reserve(points.size());
    for (const auto& [a, f] : points) data.push_back({a, f});
    const analysis::RabiCalibration cal = analysis::fit_rabi_calibration(data);
    Table t;
    t.header = {"slope", "intercept", "residual_norm"};
    t.add_row({cal.slope, cal.intercept, cal.residual_norm});
    return t;
}

Table dephasing_table(const analysis::CoherenceTimes& times) {
    Table t;
    t.header = {"t1", "t2_star", "gamma_phi"};
    t.add_row({times.t1, times.t2_star, analysis::pure_dephasing(times)});
    return t;
}

}  // namespace sawbath::harness
