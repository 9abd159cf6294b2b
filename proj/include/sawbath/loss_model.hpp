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

// Frequency-dependent qubit energy decay imposed by the SAW bath:
//
//   Gamma_q(f) = f / Q_i + Gamma_0 sinc^2(pi N_p (f - f_s) / f_s)
//
// The first term is the bare-qubit loss, the second conversion into phonons.

#include <span>

namespace sawbath::com {

struct LossModel {
    double q_internal = 1.67e3;
    double gamma0 = 0.252e9;  // 1/s
    int n_pairs = 16;
    double f_s = 4.504e9;     // Hz

    void validate() const;
};

enum class LossPart { Total, PhononOnly };

double qubit_loss(const LossModel& model, double f_q, LossPart part = LossPart::Total);

struct LossSample {
    double frequency;  // Hz
    double rate;       // 1/s
};

struct LossFit {
    LossModel model;
    double residual_norm = 0.0;  // relative residuals when all rates are positive
    int evaluations = 0;
};

/// Fits (Q_i, Gamma_0, f_s) with N_p held fixed.
///
/// Throws InvalidArgument for fewer than four samples, data spanning less
/// than one sinc lobe, or flat data, and Numerical if the refinement does
/// not converge to physical parameters.
LossFit fit_loss_model(std::span<const LossSample> samples, int n_pairs);

}  // namespace sawbath::com
