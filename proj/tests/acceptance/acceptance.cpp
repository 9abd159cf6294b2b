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

// Acceptance checks: one PASS/FAIL line per criterion, with measured values
// and wall time. Exit status is the number of failing criteria.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sawbath/analysis.hpp"
#include "sawbath/com.hpp"
#include "sawbath/constants.hpp"
#include "sawbath/lindblad.hpp"
#include "sawbath/loss_model.hpp"
#include "sawbath/spectrum_fit.hpp"

using namespace sawbath;
using namespace sawbath::lindblad;
using constants::two_pi;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_s) {
        o.pass = false;
        o.detail << " [over time budget " << budget_s << " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s  %s:%s  (%.3f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(), elapsed);
    std::fflush(stdout);
}

Drive operating_drive() {
    Drive d;
    d.omega_rabi = 8.47e6;
    d.detuning = -10e6;
    d.f_drive = 4.001e9 - 10e6;
    return d;
}

RateSet operating_rates(double gamma_1, double gamma_phi) {
    RateSet r = sample_dressed_rates(com::LossModel{}, operating_drive());
    r.gamma_1 = gamma_1;
    r.gamma_phi = gamma_phi;
    return r;
}

double steady_temperature(double gamma_1, double gamma_phi) {
    const DressedFrame f = dressed_frame(operating_drive());
    const Liouvillian l = build_liouvillian(operating_drive(), operating_rates(gamma_1, gamma_phi));
    const Observables o = observables(steady_state(l), f);
    return effective_temperature(o.sigma_z_dressed, f.omega_r).kelvin;
}

// --- property-suite oracles, written independently of the library ------------

Matrix2c ket_bra(int i, int j) {
    Matrix2c m = Matrix2c::Zero();
    m(i, j) = 1.0;
    return m;
}

Matrix2c unvec(const Vector4c& v) {
    Matrix2c m;
    m << v(0), v(1), v(2), v(3);
    return m;
}

Matrix2c direct_d(const Matrix2c& a, const Matrix2c& rho) {
    const Matrix2c ad = a.adjoint();
    return a * rho * ad - 0.5 * (ad * a * rho + rho * ad * a);
}

Matrix2c direct_term(Term term, const Drive& d, const RateSet& r, const Matrix2c& rho) {
    const double th = dressed_frame(d).theta, c = std::cos(th), s = std::sin(th);
    Vector2c g(c, -s), e(s, c);
    const Matrix2c lower = g * e.adjoint(), raise = e * g.adjoint();
    const Matrix2c szd = e * e.adjoint() - g * g.adjoint();
    Matrix2c sx, sz, sm;
    sx << 0, 1, 1, 0;
    sz << -1, 0, 0, 1;
    sm << 0, 1, 0, 0;
    const cplx i(0, 1);
    switch (term) {
        case Term::Hamiltonian: {
            const Matrix2c h = two_pi * (-d.detuning / 2 * sz + d.omega_rabi / 2 * sx);
            return i * (rho * h - h * rho);
        }
        case Term::DressedDephasing: return r.gamma_0 * c * c * s * s * direct_d(szd, rho);
        case Term::DressedExcitation: return r.gamma_minus * std::pow(s, 4) * direct_d(raise, rho);
        case Term::DressedRelaxation: return r.gamma_plus * std::pow(c, 4) * direct_d(lower, rho);
        case Term::Depolarization: return r.gamma_1 * direct_d(sm, rho);
        case Term::Dephasing: return r.gamma_phi / 2 * direct_d(sz, rho);
    }
    return Matrix2c::Zero();
}

struct Random {
    std::mt19937_64 rng;
    explicit Random(unsigned s) : rng(s) {}
    double u(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    Drive drive() {
        Drive d;
        d.omega_rabi = u(0.0, 20e6);
        d.detuning = u(-30e6, 30e6);
        d.f_drive = 4e9 + d.detuning;
        return d;
    }
    RateSet rates() {
        RateSet r;
        r.gamma_plus = u(0, 5e6);
        r.gamma_minus = u(0, 5e6);
        r.gamma_0 = u(0, 5e6);
        r.gamma_1 = u(0, 5e6);
        r.gamma_phi = u(0, 5e6);
        return r;
    }
    DensityMatrix state() {
        double x, y, z;
        do {
            x = u(-1, 1);
            y = u(-1, 1);
            z = u(-1, 1);
        } while (x * x + y * y + z * z > 1.0);
        return analysis::density_from_bloch(x, y, z);
    }
};

}  // namespace

int main() {
    criterion("loss-spectrum ratio over [3.961, 4.041] GHz = 3.7 +/- 0.2", 1.0, [](Outcome& o) {
        const com::LossModel m;
        double lo = 1e300, hi = 0.0;
        for (double f : com::linear_grid(3.961e9, 4.041e9, 8001)) {
            lo = std::min(lo, com::qubit_loss(m, f));
            hi = std::max(hi, com::qubit_loss(m, f));
        }
        o.detail << " ratio " << hi / lo;
        o.require(std::abs(hi / lo - 3.7) <= 0.2, "ratio in 3.7 +/- 0.2");
    });

    criterion("dressed rates gamma+ = 3.4 +/- 10%, gamma- = 1.3 +/- 10% (1/us)", 1.0, [](Outcome& o) {
        const RateSet r = sample_dressed_rates(com::LossModel{}, operating_drive());
        o.detail << " gamma+ " << r.gamma_plus * 1e-6 << ", gamma- " << r.gamma_minus * 1e-6;
        o.require(std::abs(r.gamma_plus - 3.4e6) <= 0.34e6, "gamma+");
        o.require(std::abs(r.gamma_minus - 1.3e6) <= 0.13e6, "gamma-");
    });

    criterion("steady purity 0.85 +/- 0.05, trace purity at 1 us within 0.01", 1.0, [](Outcome& o) {
        const Liouvillian l = build_liouvillian(operating_drive(), operating_rates(2.46e6, 1.48e6));
        const double ss = steady_state(l).purity();
        const double t1us = evolve(DensityMatrix::ground(), l, 1e-6).purity();
        o.detail << " steady " << ss << ", t=1us " << t1us;
        o.require(std::abs(ss - 0.85) <= 0.05, "steady purity");
        o.require(std::abs(t1us - ss) <= 0.01, "trace purity matches steady");
    });

    criterion("effective temperature in [190, 310] uK; 85 uK +/- 15% at gamma1 = gamma_phi = 0.1/us", 1.0,
              [](Outcome& o) {
                  const double t = steady_temperature(2.46e6, 1.48e6);
                  const DressedFrame f = dressed_frame(operating_drive());
                  const double ten_percent = effective_temperature(-0.8, f.omega_r).kelvin;
                  const double low = steady_temperature(0.1e6, 0.1e6);
                  o.detail << " T " << t * 1e6 << " uK, 10%-population " << ten_percent * 1e6
                           << " uK, low-noise " << low * 1e6 << " uK";
                  o.require(t >= 190e-6 && t <= 310e-6, "T_eff band");
                  o.require(ten_percent >= 190e-6 && ten_percent <= 310e-6, "10% population band");
                  o.require(std::abs(low - 85e-6) <= 0.15 * 85e-6, "85 uK +/- 15%");
              });

    criterion("COM spectrum: one peak at 4.46 GHz, stopband 4.459 GHz, |Gamma| = tanh(2.95), FWHM ~0.6 MHz",
              10.0, [](Outcome& o) {
                  const com::SawGeometry g;
                  const auto grid = com::linear_grid(4.40e9, 4.52e9, 20001);
                  const com::ConductanceSpectrum s = com::cascaded_conductance(g, grid);
                  const auto peak = std::max_element(s.values.begin(), s.values.end());
                  const double f_peak = grid[static_cast<std::size_t>(peak - s.values.begin())];
                  int dominant = 0;
                  for (std::size_t i = 1; i + 1 < s.size(); ++i)
                      if (s.values[i] > s.values[i - 1] && s.values[i] >= s.values[i + 1] && s.values[i] > 0.5)
                          ++dominant;
                  const com::FrequencyBand band = com::mirror_stopband(g);
                  com::SawGeometry lossless = g;
                  lossless.eta = 0.0;
                  const double refl = std::abs(com::mirror_reflection(lossless, lossless.bragg_frequency()));
                  const com::LorentzianFit fit = com::fit_lorentzian(s, {band.lower, band.upper});
                  o.detail << " peak " << f_peak * 1e-9 << " GHz, peaks>0.5: " << dominant << ", stopband centre "
                           << band.center() * 1e-9 << " GHz, |Gamma| " << refl << ", FWHM " << fit.fwhm * 1e-6
                           << " MHz";
                  o.require(dominant == 1, "exactly one dominant peak");
                  o.require(std::abs(f_peak - 4.46e9) <= 10e6, "peak at 4.46 GHz +/- 10 MHz");
                  o.require(f_peak > band.lower && f_peak < band.upper, "peak inside stopband");
                  o.require(std::abs(band.center() - 4.459e9) <= 1e6, "stopband centre");
                  o.require(std::abs(refl - std::tanh(2.95)) <= 0.01, "Bragg reflection");
                  o.require(fit.converged && fit.fwhm >= 0.3e6 && fit.fwhm <= 1.2e6, "FWHM within x2 of 0.6 MHz");
              });

    criterion("IDT consistency: v / lambda_IDT within 1% of f_s = 4.504 GHz", 1.0, [](Outcome& o) {
        const double f0 = com::SawGeometry{}.idt_center_frequency();
        const double rel = std::abs(f0 - com::LossModel{}.f_s) / com::LossModel{}.f_s;
        o.detail << " f0 " << f0 * 1e-9 << " GHz, difference " << rel * 100 << "%";
        o.require(rel < 0.01, "< 1%");
    });

    criterion("property suites", 60.0, [](Outcome& o) {
        constexpr Term terms[] = {Term::Hamiltonian,       Term::DressedDephasing, Term::DressedExcitation,
                                  Term::DressedRelaxation, Term::Depolarization,   Term::Dephasing};
        Random rnd(2026);

        double oracle = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Drive d = rnd.drive();
            const RateSet r = rnd.rates();
            for (Term t : terms) {
                const Matrix4c l = term_superoperator(t, d, r);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const Matrix2c rho = ket_bra(i, j);
                        const Matrix2c want = direct_term(t, d, r, rho);
                        Vector4c v(rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1));
                        const double err = (unvec(l * v) - want).cwiseAbs().maxCoeff();
                        oracle = std::max(oracle, err / (1.0 + want.cwiseAbs().maxCoeff()));
                    }
            }
        }
        o.require(oracle <= 1e-12, "superoperator oracle <= 1e-12");

        double drift = 0.0, herm = 0.0, min_eig = 1.0;
        for (int k = 0; k < 1000; ++k) {
            const RateSet r = rnd.rates();
            const Liouvillian l = build_liouvillian(rnd.drive(), r);
            EvolveReport rep;
            const DensityMatrix rho = evolve(rnd.state(), l, rnd.u(0.0, 10.0 / r.max_rate()), &rep);
            drift = std::max(drift, rep.trace_drift);
            herm = std::max(herm, rep.hermiticity_error);
            min_eig = std::min(min_eig, rho.min_eigenvalue());
        }
        o.require(drift <= 1e-10 && herm <= 1e-10 && min_eig >= -1e-9, "1000 random evolutions");

        double semigroup = 0.0;
        for (int k = 0; k < 200; ++k) {
            const Propagator p(build_liouvillian(rnd.drive(), rnd.rates()));
            const DensityMatrix rho0 = rnd.state();
            const double a = rnd.u(0, 1e-6), b = rnd.u(0, 1e-6);
            semigroup = std::max(semigroup, trace_distance(evolve(evolve(rho0, p, a), p, b), evolve(rho0, p, a + b)));
        }
        o.require(semigroup <= 1e-10, "semigroup <= 1e-10");

        double balance = 0.0;
        for (int k = 0; k < 200; ++k) {
            Drive d = rnd.drive();
            d.omega_rabi = rnd.u(0.5e6, 20e6);
            RateSet r;
            r.gamma_plus = rnd.u(0.1e6, 5e6);
            r.gamma_minus = rnd.u(0.1e6, 5e6);
            const DressedFrame f = dressed_frame(d);
            const DensityMatrix ss = steady_state(build_liouvillian(d, r));
            const double pe = (f.excited().adjoint() * ss.matrix() * f.excited())(0).real();
            const double pg = (f.ground().adjoint() * ss.matrix() * f.ground())(0).real();
            const double want =
                r.gamma_minus * std::pow(std::sin(f.theta), 4) / (r.gamma_plus * std::pow(std::cos(f.theta), 4));
            balance = std::max(balance, std::abs(pe / pg - want) / std::max(1.0, want));
        }
        o.require(balance <= 1e-8, "detailed balance <= 1e-8");

        double rabi = 0.0;
        Drive resonant;
        resonant.omega_rabi = 3e6;
        const Propagator pr(build_liouvillian(resonant, RateSet{}));
        for (double t : com::linear_grid(0.0, 10.0 / 3e6, 1001))
            rabi = std::max(rabi, std::abs(bloch_vector(evolve(DensityMatrix::ground(), pr, t)).z +
                                           std::cos(two_pi * 3e6 * t)));
        o.require(rabi <= 1e-9, "resonant Rabi <= 1e-9");

        const com::LossModel truth;
        std::vector<com::LossSample> samples;
        for (double f : com::linear_grid(3.9e9, 4.3e9, 50)) samples.push_back({f, com::qubit_loss(truth, f)});
        const com::LossModel fitted = com::fit_loss_model(samples, 16).model;
        const double loss_rt = std::max({std::abs(fitted.q_internal / truth.q_internal - 1),
                                         std::abs(fitted.gamma0 / truth.gamma0 - 1), std::abs(fitted.f_s / truth.f_s - 1)});
        com::ConductanceSpectrum lz;
        lz.frequencies = com::linear_grid(4.455e9, 4.465e9, 2001);
        for (double f : lz.frequencies) lz.values.push_back(0.3e6 * 0.3e6 / ((f - 4.46e9) * (f - 4.46e9) + 0.3e6 * 0.3e6));
        const com::LorentzianFit lf = com::fit_lorentzian(lz, {4.455e9, 4.465e9});
        const double lor_rt = std::max({std::abs(lf.center / 4.46e9 - 1), std::abs(lf.fwhm / 0.6e6 - 1),
                                        std::abs(lf.amplitude - 1)});
        std::vector<analysis::RabiPoint> pts;
        for (double a : com::linear_grid(0.1, 1.0, 10)) pts.push_back({a, 10e6 * a});
        const double rabi_rt = std::abs(analysis::fit_rabi_calibration(pts).slope / 10e6 - 1);
        o.require(std::max({loss_rt, lor_rt, rabi_rt}) <= 5e-5, "fitter round trips to 4 significant digits");

        o.detail << " oracle " << oracle << ", drift " << drift << ", min eig " << min_eig << ", semigroup "
                 << semigroup << ", balance " << balance << ", rabi " << rabi << ", fits " << loss_rt << "/"
                 << lor_rt << "/" << rabi_rt;
    });

    return failures;
}
