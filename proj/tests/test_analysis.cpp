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

#include <doctest.h>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <cmath>
#include <random>
#include <vector>

#include "sawbath/analysis.hpp"
#include "sawbath/com.hpp"
#include "sawbath/constants.hpp"
#include "support.hpp"

using namespace sawbath;
using namespace sawbath::analysis;
using sawbath::test::error_kind;
using constants::pi;
using constants::two_pi;

namespace {

std::vector<TraceSample> tone(double f, double t_max, int n, double tau = 0.0) {
    std::vector<TraceSample> out;
    for (int k = 0; k < n; ++k) {
        const double t = t_max * k / (n - 1);
        const double env = tau > 0.0 ? std::exp(-t / tau) : 1.0;
        out.push_back({t, 0.5 * (1.0 - env * std::cos(two_pi * f * t))});
    }
    return out;
}

// Independent damped-cosine least-squares fit used as the reference frequency.
struct DampedCosine {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    const std::vector<TraceSample>* data;
    int inputs() const { return 4; }
    int values() const { return static_cast<int>(data->size()); }
    // p = (frequency MHz, decay 1/us, amplitude, offset)
    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
        for (int i = 0; i < values(); ++i) {
            const double t = (*data)[i].t * 1e6;
            r(i) = p(3) - p(2) * std::exp(-p(1) * t) * std::cos(two_pi * p(0) * t) - (*data)[i].p_excited;
        }
        return 0;
    }
};

double damped_fit_frequency(const std::vector<TraceSample>& data, double guess) {
    DampedCosine f{&data};
    Eigen::NumericalDiff<DampedCosine> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<DampedCosine>> lm(nd);
    Eigen::VectorXd p(4);
    p << guess * 1e-6, 0.5, 0.5, 0.5;
    lm.minimize(p);
    return p(0) * 1e6;
}

}  // namespace

TEST_CASE("density from bloch") {
    CHECK(density_from_bloch(0, 0, 0).purity() == doctest::Approx(0.5));
    CHECK(trace_distance(density_from_bloch(0, 0, -1), lindblad::DensityMatrix::ground()) < 1e-15);
    const auto rho = density_from_bloch(0.8, 0, 0.8);
    CHECK(std::abs(rho.purity() - 1.0) <= 1e-12);
    const auto b = lindblad::bloch_vector(rho);
    CHECK(b.x == doctest::Approx(0.8 / std::sqrt(1.28)).epsilon(1e-12));
    CHECK(b.z == doctest::Approx(0.8 / std::sqrt(1.28)).epsilon(1e-12));
    CHECK(error_kind([] { density_from_bloch(std::nan(""), 0, 0); }) == ErrorKind::InvalidArgument);
    CHECK(error_kind([] { density_from_bloch(0, INFINITY, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("density from bloch: positivity and round trip") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 2000; ++k) {
        const double scale = k % 2 ? 1.0 : 0.1;
        const double x = scale * u(rng), y = scale * u(rng), z = scale * u(rng);
        const auto rho = density_from_bloch(x, y, z);
        CHECK(rho.min_eigenvalue() >= -1e-12);
        const auto b = lindblad::bloch_vector(rho);
        const double n = std::sqrt(x * x + y * y + z * z);
        const double s = n > 1.0 ? 1.0 / n : 1.0;
        CHECK(std::abs(b.x - s * x) <= 1e-12);
        CHECK(std::abs(b.y - s * y) <= 1e-12);
        CHECK(std::abs(b.z - s * z) <= 1e-12);
    }
}

TEST_CASE("tomography phase") {
    CHECK(tomography_phase(0.0, 3e-6) == 0.0);
    CHECK(tomography_phase(-10e6, 3e-6) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(tomography_phase(-10e6, 3.025e-6) == doctest::Approx(1.5 * pi).epsilon(1e-9));
    CHECK(error_kind([] { tomography_phase(1e6, -1.0); }) == ErrorKind::InvalidArgument);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> d(-30e6, 30e6), t(0.0, 5e-6);
    for (int k = 0; k < 500; ++k) {
        const double delta = d(rng), td = t(rng);
        const double a = tomography_phase(delta, td), b = tomography_phase(-delta, td);
        CHECK(a >= 0.0);
        CHECK(a < two_pi);
        const double sum = std::fmod(a + b, two_pi);
        CHECK(std::min(sum, two_pi - sum) <= 1e-9);
    }
}

TEST_CASE("rabi calibration") {
    std::vector<RabiPoint> exact;
    for (double a : com::linear_grid(0.1, 1.0, 10)) exact.push_back({a, 10e6 * a});
    const RabiCalibration cal = fit_rabi_calibration(exact);
    CHECK(std::abs(cal.slope - 10e6) <= 1e-12 * 10e6);
    CHECK(std::abs(cal.intercept) <= 1e-12 * 10e6);
    CHECK(cal.rabi_at(0.847) == doctest::Approx(8.47e6).epsilon(1e-12));

    double mean = 0.0;
    for (const auto& p : exact) mean += p.rabi_freq / exact.size();
    int within = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, 0.01 * mean);
        auto noisy = exact;
        for (auto& p : noisy) p.rabi_freq += noise(rng);
        if (std::abs(fit_rabi_calibration(noisy).slope - 10e6) <= 0.02 * 10e6) ++within;
    }
    CHECK(within == 100);

    const std::vector<RabiPoint> same{{0.5, 5e6}, {0.5, 5.1e6}, {0.5, 4.9e6}};
    CHECK(error_kind([&] { fit_rabi_calibration(same); }) == ErrorKind::InvalidArgument);
    const std::vector<RabiPoint> one{{0.5, 5e6}};
    CHECK(error_kind([&] { fit_rabi_calibration(one); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("rabi frequency extraction") {
    const auto clean = tone(5e6, 2e-6, 201);
    CHECK(std::abs(extract_rabi_frequency(clean) - 5e6) <= 0.005 * 5e6);

    const auto damped = tone(5e6, 2e-6, 201, 1e-6);
    const double reference = damped_fit_frequency(damped, 4.8e6);
    CHECK(reference == doctest::Approx(5e6).epsilon(1e-6));
    CHECK(std::abs(extract_rabi_frequency(damped) - reference) <= 0.02 * reference);

    std::vector<TraceSample> flat;
    for (int k = 0; k < 50; ++k) flat.push_back({k * 1e-8, 0.3});
    CHECK(error_kind([&] { extract_rabi_frequency(flat); }) == ErrorKind::Numerical);
    const auto tiny = tone(5e6, 1e-6, 5);
    CHECK(error_kind([&] { extract_rabi_frequency(tiny); }) == ErrorKind::InvalidArgument);
    auto uneven = clean;
    uneven[10].t += 3e-9;
    CHECK(error_kind([&] { extract_rabi_frequency(uneven); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("pure dephasing") {
    CHECK(pure_dephasing({1e-6, 2e-6}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(pure_dephasing({1e-6, 2e-6})) < 1e-6);
    CHECK(pure_dephasing({0.5e-6, 0.52e-6}) == doctest::Approx(1.0 / 0.52e-6 - 1.0 / 1.0e-6).epsilon(1e-14));
    CHECK(pure_dephasing({0.5e-6, 0.52e-6}) == doctest::Approx(0.923e6).epsilon(1e-3));
    CHECK(pure_dephasing({1e-6, 1e-6}) == doctest::Approx(0.5e6).epsilon(1e-14));
    CHECK(error_kind([] { pure_dephasing({1e-6, 2.1e-6}); }) == ErrorKind::InvalidArgument);
    CHECK(error_kind([] { pure_dephasing({0.0, 1e-6}); }) == ErrorKind::InvalidArgument);

    for (double t2 = 0.1e-6; t2 < 0.9e-6; t2 += 0.05e-6)
        CHECK(pure_dephasing({0.5e-6, t2 + 0.05e-6}) < pure_dephasing({0.5e-6, t2}));
    for (double t1 = 0.5e-6; t1 < 5e-6; t1 += 0.25e-6)
        CHECK(pure_dephasing({t1 + 0.25e-6, 0.5e-6}) > pure_dephasing({t1, 0.5e-6}));
}
