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

#include "sawbath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "sawbath/constants.hpp"
#include "sawbath/error.hpp"

namespace sawbath::analysis {

using lindblad::DensityMatrix;
using lindblad::Matrix2c;

DensityMatrix density_from_bloch(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw_invalid("density_from_bloch: non-finite component");
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1.0) {
        x /= r;
        y /= r;
        z /= r;
    }
    const Matrix2c m = 0.5 * (Matrix2c::Identity() + x * lindblad::pauli::x() +
                              y * lindblad::pauli::y() + z * lindblad::pauli::z());
    return DensityMatrix::from_matrix(m);
}

double tomography_phase(double detuning, double t_drive) {
    if (!(t_drive >= 0.0)) throw_invalid("tomography_phase: t_drive must be >= 0");
    const double turns = detuning * t_drive;
    double frac = turns - std::floor(turns);
    // Integer turn counts come out as 1 - eps after rounding.
    if (frac > 1.0 - 1e-12 || frac < 1e-12) frac = 0.0;
    return constants::two_pi * frac;
}

RabiCalibration fit_rabi_calibration(std::span<const RabiPoint> points) {
    if (points.size() < 2) throw_invalid("fit_rabi_calibration: need at least 2 points");
    double mean_a = 0.0;
    double mean_f = 0.0;
    for (const RabiPoint& p : points) {
        mean_a += p.amplitude;
        mean_f += p.rabi_freq;
    }
    const double n = static_cast<double>(points.size());
    mean_a /= n;
    mean_f /= n;
    double saa = 0.0;
    double saf = 0.0;
    for (const RabiPoint& p : points) {
        saa += (p.amplitude - mean_a) * (p.amplitude - mean_a);
        saf += (p.amplitude - mean_a) * (p.rabi_freq - mean_f);
    }
    if (!(saa > 1e-300) || saa <= 1e-24 * n * mean_a * mean_a)
        throw_invalid("fit_rabi_calibration: under-determined, amplitudes are identical");

    RabiCalibration cal;
    cal.slope = saf / saa;
    cal.intercept = mean_f - cal.slope * mean_a;
    double ss = 0.0;
    for (const RabiPoint& p : points) {
        const double r = p.rabi_freq - cal.rabi_at(p.amplitude);
        ss += r * r;
    }
    cal.residual_norm = std::sqrt(ss);
    if (!(cal.slope > 0.0)) throw_numerical("fit_rabi_calibration: fitted slope is not positive");
    return cal;
}

double extract_rabi_frequency(std::span<const TraceSample> trace) {
    const std::size_t n = trace.size();
    if (n < 8) throw_invalid("extract_rabi_frequency: need at least 8 samples");
    const double dt = (trace[n - 1].t - trace[0].t) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) throw_invalid("extract_rabi_frequency: times must increase");
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(trace[i].t - trace[i - 1].t - dt) > 1e-6 * dt)
            throw_invalid("extract_rabi_frequency: samples must be uniformly spaced");

    double mean = 0.0;
    for (const TraceSample& s : trace) mean += s.p_excited;
    mean /= static_cast<double>(n);

    // Hann-windowed, zero-padded DFT evaluated on the positive half.
    std::size_t m = 1;
    while (m < 16 * n) m <<= 1;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(constants::two_pi * i / static_cast<double>(n - 1));
        x[i] = (trace[i].p_excited - mean) * w;
    }
    const std::size_t half = m / 2;
    std::vector<double> mag(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        std::complex<double> acc = 0.0;
        const double w = -constants::two_pi * static_cast<double>(k) / static_cast<double>(m);
        const std::complex<double> step = std::polar(1.0, w);
        std::complex<double> phase = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * phase;
            phase *= step;
        }
        mag[k] = std::abs(acc);
    }

    // Skip the DC lobe: the window's main lobe spans 2 bins of the unpadded
    // length.
    const std::size_t skip = std::max<std::size_t>(1, 2 * m / n);
    std::size_t peak = skip;
    for (std::size_t k = skip; k <= half; ++k)
        if (mag[k] > mag[peak]) peak = k;

    std::vector<double> sorted(mag.begin() + static_cast<std::ptrdiff_t>(skip), mag.end());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    // Rounding residue of a constant trace is not an oscillation.
    double level = 0.0;
    for (const TraceSample& s : trace) level = std::max(level, std::abs(s.p_excited));
    const double floor = 1e-9 * level * static_cast<double>(n);
    if (!(mag[peak] > floor) || mag[peak] < 3.0 * median || peak == skip || peak == half)
        throw_numerical("extract_rabi_frequency: no oscillation detected");

    const double a = mag[peak - 1];
    const double b = mag[peak];
    const double c = mag[peak + 1];
    const double denom = a - 2.0 * b + c;
    const double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    return (static_cast<double>(peak) + shift) / (static_cast<double>(m) * dt);
}

double pure_dephasing(const CoherenceTimes& times) {
    if (!(times.t1 > 0.0) || !(times.t2_star > 0.0))
        throw_invalid("pure_dephasing: T1 and T2* must be positive");
    if (times.t2_star > 2.0 * times.t1 + 1e-12)
        throw_invalid("pure_dephasing: unphysical inputs, T2* exceeds 2 T1");
    return std::max(0.0, 1.0 / times.t2_star - 1.0 / (2.0 * times.t1));
}

}  // namespace sawbath::analysis
