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

// Reductions applied to measured (or simulated) qubit data: tomography,
// Rabi calibration, and dephasing from coherence times.

#include <span>

#include "sawbath/lindblad.hpp"

namespace sawbath::analysis {

/// rho = (1 + x sigma_x + y sigma_y + z sigma_z) / 2, after rescaling an
/// over-length vector to unit length.
lindblad::DensityMatrix density_from_bloch(double x, double y, double z);

/// 2 pi detuning t_drive reduced to [0, 2 pi).
double tomography_phase(double detuning, double t_drive);

struct RabiPoint {
    double amplitude;  // V
    double rabi_freq;  // Hz
};

struct RabiCalibration {
    double slope = 0.0;      // Hz / V
    double intercept = 0.0;  // Hz
    double residual_norm = 0.0;

    double rabi_at(double amplitude) const { return slope * amplitude + intercept; }
};

RabiCalibration fit_rabi_calibration(std::span<const RabiPoint> points);

struct TraceSample {
    double t;          // s
    double p_excited;
};

/// Dominant oscillation frequency of a uniformly sampled trace (Hz).
double extract_rabi_frequency(std::span<const TraceSample> trace);

struct CoherenceTimes {
    double t1;       // s
    double t2_star;  // s
};

/// 1/T2* - 1/(2 T1), in 1/s.
double pure_dephasing(const CoherenceTimes& times);

}  // namespace sawbath::analysis
