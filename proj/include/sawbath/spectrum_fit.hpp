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

#include "sawbath/com.hpp"

namespace sawbath::com {

struct FrequencyWindow {
    double lo;
    double hi;
};

/// offset + amplitude (fwhm/2)^2 / ((f - center)^2 + (fwhm/2)^2)
struct LorentzianFit {
    double center = 0.0;
    double fwhm = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double residual_norm = 0.0;
    bool converged = false;

    double operator()(double f) const;
};

/// Least-squares Lorentzian over the samples inside `window`.
///
/// Requires at least 5 samples in the window and a global maximum that is not
/// on the window edge. A fit that runs out of iterations is returned with
/// `converged == false` rather than thrown.
LorentzianFit fit_lorentzian(const ConductanceSpectrum& spectrum, FrequencyWindow window);

}  // namespace sawbath::com
