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

// Driven-dissipative two-level system in the frame rotating at the drive.
//
// Basis order is (|g>, |e>) with <sigma_z> = +1 on |e>. Density matrices are
// vectorized row-major: (rho_gg, rho_ge, rho_eg, rho_ee). Rates are in 1/s,
// frequencies in Hz (ordinary), times in s.
//
// Hamiltonian (angular units):  H = 2 pi (-Delta/2 sigma_z + Omega/2 sigma_x)
// with Delta = f_drive - f_qubit. In the dressed basis H = 2 pi (Omega_R/2)
// sigma~_z, where sigma~_z = sin(2 theta) sigma_x + cos(2 theta) sigma_z and
//
//   |g~> = cos(theta)|g> - sin(theta)|e>,   |e~> = sin(theta)|g> + cos(theta)|e>.

#include <Eigen/Core>
#include <complex>

#include "sawbath/loss_model.hpp"

namespace sawbath::lindblad {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
Matrix2c lowering();  // |g><e|
Matrix2c raising();   // |e><g|
}  // namespace pauli

struct Drive {
    double omega_rabi = 0.0;  // Omega / 2 pi, Hz
    double detuning = 0.0;    // Delta / 2 pi = f_drive - f_qubit, Hz
    double f_drive = 0.0;     // Hz
    double t_drive = 0.0;     // s
};

struct DressedFrame {
    double theta = 0.0;    // rad, in [0, pi/2]
    double omega_r = 0.0;  // Omega_R / 2 pi, Hz

    double sin2theta() const;
    double cos2theta() const;
    Vector2c ground() const;
    Vector2c excited() const;
    /// sin(2 theta) sigma_x + cos(2 theta) sigma_z
    Matrix2c sigma_z() const;
    Matrix2c lowering() const;  // |g~><e~|
    Matrix2c raising() const;   // |e~><g~|
};

DressedFrame dressed_frame(const Drive& drive);

enum class Gamma0Policy { Carrier, Zero, Explicit };

struct Gamma0Choice {
    Gamma0Policy policy = Gamma0Policy::Carrier;
    double value = 0.0;  // used by Explicit
};

struct RateSet {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_0 = 0.0;
    double gamma_1 = 0.0;
    double gamma_phi = 0.0;

    void validate() const;
    double max_rate() const;
};

/// gamma_+/- from the phonon part of the loss at f_drive +/- Omega_R, gamma_0
/// per `choice`. gamma_1 and gamma_phi are left at zero.
RateSet sample_dressed_rates(const com::LossModel& model, const Drive& drive,
                             Gamma0Choice choice = {});

class DensityMatrix {
public:
    DensityMatrix();  // |g><g|

    /// Validates Hermiticity, unit trace and positivity; throws InvalidArgument.
    static DensityMatrix from_matrix(const Matrix2c& m);
    static DensityMatrix from_vectorized(const Vector4c& v);
    static DensityMatrix ground();
    static DensityMatrix excited();
    static DensityMatrix maximally_mixed();
    static DensityMatrix pure(const Vector2c& psi);

    const Matrix2c& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }
    Vector4c vectorized() const;
    double purity() const;
    double min_eigenvalue() const;

private:
    explicit DensityMatrix(const Matrix2c& m) : m_(m) {}
    Matrix2c m_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// The six contributions of the master equation, individually addressable so
/// each can be checked on its own.
enum class Term {
    Hamiltonian,
    DressedDephasing,     // gamma_0 cos^2 sin^2 D[sigma~_z]
    DressedExcitation,    // gamma_- sin^4 D[sigma~_+]
    DressedRelaxation,    // gamma_+ cos^4 D[sigma~_-]
    Depolarization,       // gamma_1 D[sigma_-]
    Dephasing,            // gamma_phi / 2 D[sigma_z]
};

class Liouvillian {
public:
    explicit Liouvillian(const Matrix4c& generator) : g_(generator) {}

    const Matrix4c& generator() const { return g_; }
    Vector4c apply(const Vector4c& v) const { return g_ * v; }
    double spectral_radius() const;

private:
    Matrix4c g_;
};

/// Superoperator of rho -> A rho B in the row-major vectorization.
Matrix4c sandwich(const Matrix2c& a, const Matrix2c& b);
/// D[A] rho = A rho A^+ - (A^+ A rho + rho A^+ A) / 2
Matrix4c dissipator(const Matrix2c& a);

Matrix4c term_superoperator(Term term, const Drive& drive, const RateSet& rates);
Liouvillian build_liouvillian(const Drive& drive, const RateSet& rates);

/// e^{L t}, eigendecomposition when the eigenbasis is well conditioned,
/// scaled Taylor series with squaring otherwise. Precomputes once for
/// repeated evaluation along a time grid.
class Propagator {
public:
    enum class Method { Auto, Eigen, Series };

    explicit Propagator(const Liouvillian& l, Method method = Method::Auto);

    Matrix4c at(double t) const;
    bool uses_series() const { return series_; }
    double condition_number() const { return cond_; }

private:
    Matrix4c generator_;
    Eigen::Matrix4cd v_;
    Eigen::Matrix4cd v_inv_;
    Eigen::Vector4cd eigenvalues_;
    double cond_ = 1.0;
    bool series_ = false;
};

/// Series exponential of an arbitrary 4x4 matrix (scaling and squaring).
Matrix4c expm_series(const Matrix4c& a);

struct EvolveReport {
    double trace_drift = 0.0;         // |Tr rho - 1| before renormalization
    double hermiticity_error = 0.0;   // max |rho - rho^+| before Hermitizing
    bool used_series = false;
};

DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t,
                     EvolveReport* report = nullptr);
DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& p, double t,
                     EvolveReport* report = nullptr);

/// Unique kernel of L; throws Numerical when the kernel is not one-dimensional.
DensityMatrix steady_state(const Liouvillian& l);

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double norm() const;
};

struct Observables {
    BlochVector bloch;
    double purity = 0.0;
    double sigma_z_dressed = 0.0;
};

Observables observables(const DensityMatrix& rho, const DressedFrame& frame);
BlochVector bloch_vector(const DensityMatrix& rho);

enum class TemperatureStatus { Finite, Infinite, Inverted };

struct EffectiveTemperature {
    double kelvin = 0.0;
    TemperatureStatus status = TemperatureStatus::Finite;
};

/// T = -h Omega_R / (2 k_B atanh(<sigma~_z>)). Non-negative <sigma~_z> gives
/// an infinite or inverted (negative) temperature; |<sigma~_z>| >= 1 or
/// omega_r <= 0 throws InvalidArgument.
EffectiveTemperature effective_temperature(double sigma_z_dressed, double omega_r);

}  // namespace sawbath::lindblad
