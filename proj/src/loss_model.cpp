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

#include "sawbath/loss_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "least_squares.hpp"
#include "sawbath/com.hpp"
#include "sawbath/constants.hpp"
#include "sawbath/error.hpp"

namespace sawbath::com {

void LossModel::validate() const {
    if (!(q_internal > 0.0) || !std::isfinite(q_internal))
        throw_invalid("LossModel: q_internal must be positive");
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0))
        throw_invalid("LossModel: gamma0 must be >= 0");
    if (!(f_s > 0.0) || !std::isfinite(f_s)) throw_invalid("LossModel: f_s must be positive");
    if (n_pairs <= 0) throw_invalid("LossModel: n_pairs must be positive");
}

namespace {

double phonon_shape(double f, double f_s, int n_pairs) {
    const double sc = sinc(constants::pi * n_pairs * (f - f_s) / f_s);
    return sc * sc;
}

struct LinearSolution {
    double inv_q = 0.0;
    double gamma0 = 0.0;
    double cost = std::numeric_limits<double>::infinity();
};

// For fixed f_s the model is linear in (1/Q_i, Gamma_0); solve the weighted
// normal equations, dropping to a single column when a coefficient goes
// negative.
LinearSolution solve_linear(std::span<const LossSample> s, std::span<const double> w, double f_s,
                            int n_pairs) {
    double aa = 0, ab = 0, bb = 0, ay = 0, by = 0, yy = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = s[i].frequency * w[i];
        const double b = phonon_shape(s[i].frequency, f_s, n_pairs) * w[i];
        const double y = s[i].rate * w[i];
        aa += a * a;
        ab += a * b;
        bb += b * b;
        ay += a * y;
        by += b * y;
        yy += y * y;
    }
    auto cost_of = [&](double x, double g) {
        return yy - 2 * (x * ay + g * by) + x * x * aa + 2 * x * g * ab + g * g * bb;
    };
    LinearSolution best;
    const double det = aa * bb - ab * ab;
    if (det > 1e-12 * aa * bb) {
        const double x = (ay * bb - by * ab) / det;
        const double g = (by * aa - ay * ab) / det;
        if (x >= 0 && g >= 0) return {x, g, cost_of(x, g)};
    }
    if (aa > 0) {
        const double x = std::max(0.0, ay / aa);
        const double c = cost_of(x, 0.0);
        if (c < best.cost) best = {x, 0.0, c};
    }
    if (bb > 0) {
        const double g = std::max(0.0, by / bb);
        const double c = cost_of(0.0, g);
        if (c < best.cost) best = {0.0, g, c};
    }
    return best;
}

}  // namespace

double qubit_loss(const LossModel& model, double f_q, LossPart part) {
    if (!(f_q > 0.0) || !std::isfinite(f_q)) {
        std::ostringstream os;
        os << "qubit_loss: frequency must be positive, got " << f_q;
        throw_invalid(os.str());
    }
    const double phonon = model.gamma0 * phonon_shape(f_q, model.f_s, model.n_pairs);
    if (part == LossPart::PhononOnly) return phonon;
    return f_q / model.q_internal + phonon;
}

LossFit fit_loss_model(std::span<const LossSample> samples, int n_pairs) {
    if (n_pairs <= 0) throw_invalid("fit_loss_model: n_pairs must be positive");
    if (samples.size() < 4) throw_invalid("fit_loss_model: need at least 4 samples");

    double f_min = std::numeric_limits<double>::infinity();
    double f_max = -f_min;
    double r_min = f_min;
    double r_max = -f_min;
    bool all_positive = true;
    for (const LossSample& s : samples) {
        if (!(s.frequency > 0.0) || !std::isfinite(s.frequency) || !std::isfinite(s.rate) ||
            s.rate < 0.0)
            throw_invalid("fit_loss_model: samples need positive frequency and rate >= 0");
        f_min = std::min(f_min, s.frequency);
        f_max = std::max(f_max, s.frequency);
        r_min = std::min(r_min, s.rate);
        r_max = std::max(r_max, s.rate);
        all_positive = all_positive && s.rate > 0.0;
    }
    if (!(r_max - r_min > 1e-12 * r_max))
        throw_invalid("fit_loss_model: under-determined, all rates equal");
    const double f_mid = 0.5 * (f_min + f_max);
    const double lobe = f_mid / n_pairs;
    if (f_max - f_min < lobe)
        throw_invalid("fit_loss_model: under-determined, samples span less than one sinc lobe");

    // Relative residuals suit multiplicative scatter; fall back to a global
    // scale when a zero rate is present.
    double mean_rate = 0.0;
    for (const LossSample& s : samples) mean_rate += s.rate;
    mean_rate /= static_cast<double>(samples.size());
    std::vector<double> weights(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        weights[i] = all_positive ? 1.0 / samples[i].rate : 1.0 / mean_rate;

    // Coarse scan over f_s with the linear parameters eliminated.
    const auto peak_sample = std::max_element(
        samples.begin(), samples.end(),
        [](const LossSample& a, const LossSample& b) { return a.rate < b.rate; });
    std::vector<double> candidates{peak_sample->frequency};
    const double scan_lo = std::max(0.5 * f_min, f_min - 4.0 * lobe);
    const double scan_hi = f_max + 4.0 * lobe;
    const double step = lobe / 200.0;
    for (double f = scan_lo; f <= scan_hi; f += step) candidates.push_back(f);

    double best_fs = candidates.front();
    LinearSolution best;
    for (double f : candidates) {
        const LinearSolution sol = solve_linear(samples, weights, f, n_pairs);
        if (sol.cost < best.cost) {
            best = sol;
            best_fs = f;
        }
    }

    // Joint refinement in scaled coordinates.
    const int n = static_cast<int>(samples.size());
    auto model_of = [&](const Eigen::VectorXd& u) {
        LossModel m;
        m.n_pairs = n_pairs;
        const double inv_q = u[0] * mean_rate / f_mid;
        m.q_internal = inv_q > 0 ? 1.0 / inv_q : std::numeric_limits<double>::infinity();
        m.gamma0 = u[1] * mean_rate;
        m.f_s = best_fs + u[2] * lobe;
        return m;
    };
    detail::ResidualFn residual = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r) {
        const double inv_q = u[0] * mean_rate / f_mid;
        const double g0 = u[1] * mean_rate;
        const double fs = best_fs + u[2] * lobe;
        for (int i = 0; i < n; ++i) {
            const double f = samples[i].frequency;
            const double model = f * inv_q + g0 * phonon_shape(f, fs, n_pairs);
            r[i] = (model - samples[i].rate) * weights[i];
        }
    };
    Eigen::VectorXd u0(3);
    u0 << best.inv_q * f_mid / mean_rate, best.gamma0 / mean_rate, 0.0;
    const detail::LsqResult res = detail::levenberg_marquardt(residual, u0, n);

    LossFit fit;
    fit.model = model_of(res.x);
    fit.residual_norm = res.residual_norm;
    fit.evaluations = res.evaluations;
    if (!res.converged) throw_numerical("fit_loss_model: refinement did not converge");
    if (!(fit.model.q_internal > 0.0) || !std::isfinite(fit.model.q_internal) ||
        !(fit.model.gamma0 >= 0.0) || !(fit.model.f_s > 0.0))
        throw_numerical("fit_loss_model: refinement left the physical parameter range");
    return fit;
}

}  // namespace sawbath::com
