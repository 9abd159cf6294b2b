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

#include "sawbath/spectrum_fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "least_squares.hpp"
#include "sawbath/error.hpp"

namespace sawbath::com {

double LorentzianFit::operator()(double f) const {
    const double hw = 0.5 * fwhm;
    const double d = f - center;
    return offset + amplitude * hw * hw / (d * d + hw * hw);
}

LorentzianFit fit_lorentzian(const ConductanceSpectrum& spectrum, FrequencyWindow window) {
    spectrum.validate();
    std::vector<double> fs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double f = spectrum.frequencies[i];
        if (f >= window.lo && f <= window.hi) {
            fs.push_back(f);
            ys.push_back(spectrum.values[i]);
        }
    }
    if (fs.size() < 5) throw_invalid("fit_lorentzian: window holds fewer than 5 samples");

    const auto peak_it = std::max_element(ys.begin(), ys.end());
    const std::size_t peak = static_cast<std::size_t>(peak_it - ys.begin());
    if (peak == 0 || peak + 1 == ys.size())
        throw_invalid("fit_lorentzian: no interior maximum in window");

    const double y_max = *peak_it;
    const double y_min = *std::min_element(ys.begin(), ys.end());
    const double y_scale = y_max - y_min;
    if (!(y_scale > 0.0)) throw_invalid("fit_lorentzian: flat data in window");

    // Initial width from the half-maximum crossings.
    const double half = 0.5 * (y_max + y_min);
    std::size_t left = peak;
    while (left > 0 && ys[left] > half) --left;
    std::size_t right = peak;
    while (right + 1 < ys.size() && ys[right] > half) ++right;
    double w0 = fs[right] - fs[left];
    if (!(w0 > 0.0)) w0 = 0.5 * (fs.back() - fs.front());
    const double f_ref = fs[peak];

    const int n = static_cast<int>(fs.size());
    auto unpack = [&](const Eigen::VectorXd& u) {
        LorentzianFit fit;
        fit.center = f_ref + u[0] * w0;
        fit.fwhm = w0 * std::exp(u[1]);
        fit.amplitude = y_scale * std::exp(u[2]);
        fit.offset = y_scale * u[3];
        return fit;
    };
    detail::ResidualFn residual = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r) {
        const LorentzianFit fit = unpack(u);
        for (int i = 0; i < n; ++i) r[i] = (fit(fs[i]) - ys[i]) / y_scale;
    };

    Eigen::VectorXd u0(4);
    u0 << 0.0, 0.0, std::log((y_max - y_min) / y_scale), y_min / y_scale;
    const detail::LsqResult res = detail::levenberg_marquardt(residual, u0, n);

    LorentzianFit fit = unpack(res.x);
    fit.residual_norm = res.residual_norm;
    fit.converged = res.converged && std::isfinite(fit.center) && fit.fwhm > 0.0;
    return fit;
}

}  // namespace sawbath::com
