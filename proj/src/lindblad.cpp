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

#include "sawbath/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "sawbath/constants.hpp"
#include "sawbath/error.hpp"

namespace sawbath::lindblad {

using constants::two_pi;

// Eigenbasis round-off grows as ~1e-16 * cond; keeps the eigen path within 1e-9.
constexpr double kSeriesFallbackCond = 1e7;

namespace pauli {

Matrix2c identity() { return Matrix2c::Identity(); }

Matrix2c x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2c y() {
    Matrix2c m;
    m << 0, cplx(0, 1), cplx(0, -1), 0;
    return m;
}

Matrix2c z() {
    Matrix2c m;
    m << -1, 0, 0, 1;
    return m;
}

Matrix2c lowering() {
    Matrix2c m;
    m << 0, 1, 0, 0;
    return m;
}

Matrix2c raising() { return lowering().adjoint(); }

}  // namespace pauli

// --- dressed frame --------------------------------------------------------

double DressedFrame::sin2theta() const { return std::sin(2.0 * theta); }
double DressedFrame::cos2theta() const { return std::cos(2.0 * theta); }

Vector2c DressedFrame::ground() const {
    return Vector2c(std::cos(theta), -std::sin(theta));
}

Vector2c DressedFrame::excited() const {
    return Vector2c(std::sin(theta), std::cos(theta));
}

Matrix2c DressedFrame::sigma_z() const {
    return sin2theta() * pauli::x() + cos2theta() * pauli::z();
}

Matrix2c DressedFrame::lowering() const { return ground() * excited().adjoint(); }
Matrix2c DressedFrame::raising() const { return excited() * ground().adjoint(); }

DressedFrame dressed_frame(const Drive& drive) {
    if (!(drive.omega_rabi >= 0.0)) throw_invalid("dressed_frame: omega_rabi must be >= 0");
    DressedFrame frame;
    frame.omega_r = std::hypot(drive.omega_rabi, drive.detuning);
    if (frame.omega_r == 0.0) return frame;
    // +0.0 keeps atan2 on the [0, pi] branch.
    frame.theta = 0.5 * std::atan2(drive.omega_rabi + 0.0, -drive.detuning);
    return frame;
}

// --- rates ----------------------------------------------------------------

void RateSet::validate() const {
    for (double r : {gamma_plus, gamma_minus, gamma_0, gamma_1, gamma_phi})
        if (!(r >= 0.0) || !std::isfinite(r)) throw_invalid("RateSet: rates must be finite and >= 0");
}

double RateSet::max_rate() const {
    return std::max({gamma_plus, gamma_minus, gamma_0, gamma_1, gamma_phi});
}

RateSet sample_dressed_rates(const com::LossModel& model, const Drive& drive, Gamma0Choice choice) {
    model.validate();
    const DressedFrame frame = dressed_frame(drive);
    const double lower = drive.f_drive - frame.omega_r;
    if (!(lower > 0.0)) {
        std::ostringstream os;
        os << "sample_dressed_rates: sideband at non-positive frequency " << lower << " Hz";
        throw_invalid(os.str());
    }
    RateSet r;
    r.gamma_plus = com::qubit_loss(model, drive.f_drive + frame.omega_r, com::LossPart::PhononOnly);
    r.gamma_minus = com::qubit_loss(model, lower, com::LossPart::PhononOnly);
    switch (choice.policy) {
        case Gamma0Policy::Carrier:
            r.gamma_0 = com::qubit_loss(model, drive.f_drive, com::LossPart::PhononOnly);
            break;
        case Gamma0Policy::Zero:
            r.gamma_0 = 0.0;
            break;
        case Gamma0Policy::Explicit:
            if (!(choice.value >= 0.0)) throw_invalid("sample_dressed_rates: explicit gamma_0 < 0");
            r.gamma_0 = choice.value;
            break;
    }
    return r;
}

// --- density matrix -------------------------------------------------------

DensityMatrix::DensityMatrix() : m_(Matrix2c::Zero()) { m_(0, 0) = 1.0; }

DensityMatrix DensityMatrix::from_matrix(const Matrix2c& m) {
    if (!m.allFinite()) throw_invalid("DensityMatrix: non-finite entries");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw_invalid("DensityMatrix: not Hermitian");
    if (std::abs(m.trace() - 1.0) > 1e-12) throw_invalid("DensityMatrix: trace differs from 1");
    DensityMatrix rho(m);
    if (rho.min_eigenvalue() < -1e-10) throw_invalid("DensityMatrix: negative eigenvalue");
    return rho;
}

DensityMatrix DensityMatrix::from_vectorized(const Vector4c& v) {
    Matrix2c m;
    m << v[0], v[1], v[2], v[3];
    return from_matrix(m);
}

DensityMatrix DensityMatrix::ground() { return DensityMatrix(); }

DensityMatrix DensityMatrix::excited() {
    Matrix2c m = Matrix2c::Zero();
    m(1, 1) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.5 * Matrix2c::Identity()); }

DensityMatrix DensityMatrix::pure(const Vector2c& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw_invalid("DensityMatrix::pure: zero vector");
    const Vector2c u = psi / n;
    Matrix2c m = u * u.adjoint();
    m = (0.5 * (m + m.adjoint())).eval();
    return DensityMatrix(m);
}

Vector4c DensityMatrix::vectorized() const {
    return Vector4c(m_(0, 0), m_(0, 1), m_(1, 0), m_(1, 1));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
    // Closed form for a 2x2 Hermitian matrix.
    const double a = m_(0, 0).real();
    const double d = m_(1, 1).real();
    const double off = std::abs(m_(0, 1));
    return 0.5 * (a + d) - std::hypot(0.5 * (a - d), off);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Matrix2c diff = a.matrix() - b.matrix();
    const Eigen::SelfAdjointEigenSolver<Matrix2c> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// --- superoperators -------------------------------------------------------

Matrix4c sandwich(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) s(2 * i + j, 2 * k + l) = a(i, k) * b(l, j);
    return s;
}

Matrix4c dissipator(const Matrix2c& a) {
    const Matrix2c ad = a.adjoint();
    const Matrix2c ada = ad * a;
    const Matrix2c id = Matrix2c::Identity();
    return sandwich(a, ad) - 0.5 * (sandwich(ada, id) + sandwich(id, ada));
}

double Liouvillian::spectral_radius() const {
    const Eigen::ComplexEigenSolver<Matrix4c> es(g_, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix4c term_superoperator(Term term, const Drive& drive, const RateSet& rates) {
    const DressedFrame frame = dressed_frame(drive);
    const double c = std::cos(frame.theta);
    const double s = std::sin(frame.theta);
    switch (term) {
        case Term::Hamiltonian: {
            const Matrix2c h =
                two_pi * (-0.5 * drive.detuning * pauli::z() + 0.5 * drive.omega_rabi * pauli::x());
            const Matrix2c id = Matrix2c::Identity();
            const cplx i(0.0, 1.0);
            return i * sandwich(id, h) - i * sandwich(h, id);
        }
        case Term::DressedDephasing:
            return rates.gamma_0 * c * c * s * s * dissipator(frame.sigma_z());
        case Term::DressedExcitation:
            return rates.gamma_minus * std::pow(s, 4) * dissipator(frame.raising());
        case Term::DressedRelaxation:
            return rates.gamma_plus * std::pow(c, 4) * dissipator(frame.lowering());
        case Term::Depolarization:
            return rates.gamma_1 * dissipator(pauli::lowering());
        case Term::Dephasing:
            return 0.5 * rates.gamma_phi * dissipator(pauli::z());
    }
    return Matrix4c::Zero();
}

Liouvillian build_liouvillian(const Drive& drive, const RateSet& rates) {
    rates.validate();
    Matrix4c l = Matrix4c::Zero();
    for (Term t : {Term::Hamiltonian, Term::DressedDephasing, Term::DressedExcitation,
                   Term::DressedRelaxation, Term::Depolarization, Term::Dephasing})
        l += term_superoperator(t, drive, rates);
    return Liouvillian(l);
}

// --- propagation ----------------------------------------------------------

Matrix4c expm_series(const Matrix4c& a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Matrix4c b = a / std::ldexp(1.0, squarings);
    Matrix4c sum = Matrix4c::Identity();
    Matrix4c term = Matrix4c::Identity();
    for (int k = 1; k <= 30; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

Propagator::Propagator(const Liouvillian& l, Method method) : generator_(l.generator()) {
    if (method == Method::Series) {
        series_ = true;
        return;
    }
    const Eigen::ComplexEigenSolver<Matrix4c> es(generator_);
    v_ = es.eigenvectors();
    eigenvalues_ = es.eigenvalues();
    const Eigen::JacobiSVD<Matrix4c> svd(v_);
    const auto sv = svd.singularValues();
    cond_ = sv[3] > 0.0 ? sv[0] / sv[3] : std::numeric_limits<double>::infinity();
    if (method == Method::Auto && cond_ > kSeriesFallbackCond) {
        series_ = true;
        return;
    }
    v_inv_ = v_.inverse();
}

Matrix4c Propagator::at(double t) const {
    if (series_) return expm_series(generator_ * t);
    Vector4c d;
    for (int i = 0; i < 4; ++i) d[i] = std::exp(eigenvalues_[i] * t);
    return v_ * d.asDiagonal() * v_inv_;
}

DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& p, double t, EvolveReport* report) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw_invalid("evolve: time must be >= 0");
    if (t == 0.0) {
        if (report) *report = EvolveReport{0.0, 0.0, p.uses_series()};
        return rho0;
    }
    const Vector4c v = p.at(t) * rho0.vectorized();
    Matrix2c m;
    m << v[0], v[1], v[2], v[3];
    EvolveReport rep;
    rep.used_series = p.uses_series();
    rep.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    m = (0.5 * (m + m.adjoint())).eval();
    const double tr = m.trace().real();
    rep.trace_drift = std::abs(tr - 1.0);
    m /= tr;
    if (rep.trace_drift > 1e-8 || rep.hermiticity_error > 1e-8) {
        std::clog << "sawbath: evolve adjusted state at t = " << t << " s (trace drift "
                  << rep.trace_drift << ", hermiticity " << rep.hermiticity_error << ")\n";
    }
    if (report) *report = rep;
    try {
        return DensityMatrix::from_matrix(m);
    } catch (const Error& e) {
        std::ostringstream os;
        os << "evolve: invalid state at t = " << t << " s: " << e.what();
        throw_numerical(os.str());
    }
}

DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t, EvolveReport* report) {
    return evolve(rho0, Propagator(l), t, report);
}

DensityMatrix steady_state(const Liouvillian& l) {
    const Eigen::ComplexEigenSolver<Matrix4c> es(l.generator());
    const auto& lambda = es.eigenvalues();
    const double radius = lambda.cwiseAbs().maxCoeff();
    if (!(radius > 0.0)) throw_numerical("steady_state: no unique steady state (zero generator)");

    int kernel = -1;
    int count = 0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(lambda[i]) < 1e-6 * radius) {
            ++count;
            kernel = i;
        }
    }
    if (count != 1) throw_numerical("steady_state: no unique steady state (degenerate kernel)");

    const Vector4c v = es.eigenvectors().col(kernel);
    Matrix2c m;
    m << v[0], v[1], v[2], v[3];
    const cplx tr = m.trace();
    if (std::abs(tr) < 1e-12 * v.norm())
        throw_numerical("steady_state: kernel vector is traceless");
    m /= tr;
    m = (0.5 * (m + m.adjoint())).eval();
    m /= m.trace().real();

    const Vector4c vec(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    if ((l.generator() * vec).norm() > 1e-9 * radius)
        throw_numerical("steady_state: kernel residual too large");
    try {
        return DensityMatrix::from_matrix(m);
    } catch (const Error& e) {
        throw_numerical(std::string("steady_state: ") + e.what());
    }
}

// --- observables ----------------------------------------------------------

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const DensityMatrix& rho) {
    const Matrix2c& m = rho.matrix();
    return {(pauli::x() * m).trace().real(), (pauli::y() * m).trace().real(),
            (pauli::z() * m).trace().real()};
}

Observables observables(const DensityMatrix& rho, const DressedFrame& frame) {
    Observables o;
    o.bloch = bloch_vector(rho);
    o.purity = rho.purity();
    o.sigma_z_dressed = frame.sin2theta() * o.bloch.x + frame.cos2theta() * o.bloch.z;
    return o;
}

EffectiveTemperature effective_temperature(double sigma_z_dressed, double omega_r) {
    if (!(omega_r > 0.0) || !std::isfinite(omega_r))
        throw_invalid("effective_temperature: omega_R must be positive");
    if (!(std::abs(sigma_z_dressed) < 1.0))
        throw_invalid("effective_temperature: |<sigma~_z>| must be < 1");
    EffectiveTemperature t;
    if (sigma_z_dressed == 0.0) {
        t.kelvin = std::numeric_limits<double>::infinity();
        t.status = TemperatureStatus::Infinite;
        return t;
    }
    t.kelvin = -constants::planck * omega_r /
               (2.0 * constants::boltzmann * std::atanh(sigma_z_dressed));
    t.status = sigma_z_dressed < 0.0 ? TemperatureStatus::Finite : TemperatureStatus::Inverted;
    return t;
}

}  // namespace sawbath::lindblad
