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

// Coupling-of-modes description of a SAW Fabry-Perot resonator: Bragg
// mirrors, an interdigitated transducer (IDT), and their P-matrix cascade.
//
// All frequencies are ordinary (Hz). Angular factors appear only inside the
// formulas. Admittances are in units of the bare IDT's peak conductance.

#include <complex>
#include <span>
#include <vector>

namespace sawbath::com {

using cplx = std::complex<double>;

/// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
double sinc(double x);

struct SawGeometry {
    double lambda_idt = 800e-9;       // m
    double lambda_mirror = 816e-9;    // m
    int n_pairs = 16;
    double overlap_w = 35e-6;         // m
    double l_mirror = 240.72e-6;      // m
    double l_idt = 12e-6;             // m
    double v_sound = 3638.0;          // m/s
    double eta = 500.0;               // Np/m
    cplx r_idt{0.0, -0.005};          // per period; stored, not used by the sinc IDT model
    cplx r_mirror{0.0, -0.005};       // per strip
    double gap = 400e-9;              // mirror-IDT spacing on each side, m

    /// Throws InvalidArgument when a field violates its range.
    void validate() const;

    double bragg_frequency() const { return v_sound / lambda_mirror; }
    double idt_center_frequency() const { return v_sound / lambda_idt; }
    /// Reflective coupling per unit length, |r_mirror| / (lambda_mirror / 2).
    double mirror_coupling() const;
    /// Strips at half-wavelength pitch, 2 l_mirror / lambda_mirror.
    double mirror_strips() const { return 2.0 * l_mirror / lambda_mirror; }
};

/// Three-port element: acoustic ports 1 (left) and 2 (right), electrical port 3.
///
///   b1 = p11 a1 + p12 a2 + p13 V
///   b2 = p21 a1 + p22 a2 + p23 V
///   I  = p31 a1 + p32 a2 + p33 V
///
/// with incoming/outgoing wave amplitudes a/b. In this normalization a
/// reciprocal element has p31 = 2 p13 and p32 = 2 p23.
struct PMatrix {
    cplx p11{}, p12{}, p21{}, p22{};
    cplx p13{}, p23{};
    cplx p31{}, p32{};
    cplx p33{};
};

/// Joins port 2 of `left` to port 1 of `right`; electrical ports in parallel.
/// Throws Numerical if the internal multiple-reflection loop is singular.
PMatrix cascade(const PMatrix& left, const PMatrix& right);

/// Lossy acoustic delay line of the given length.
PMatrix delay_line(double length, double f, double v_sound, double eta);

/// Uniform reflective grating (no electrical port).
PMatrix mirror_pmatrix(const SawGeometry& geom, double f);

/// Bidirectional IDT with sinc-shaped transduction, internal reflection
/// neglected. Re(p33) equals idt_conductance().
PMatrix idt_pmatrix(const SawGeometry& geom, double f);

/// Full resonator: mirror, gap, IDT, gap, mirror.
PMatrix resonator_pmatrix(const SawGeometry& geom, double f);

/// Grating reflection seen from outside the mirror at its left end.
cplx mirror_reflection(const SawGeometry& geom, double f);

struct FrequencyBand {
    double lower;
    double upper;
    double center() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

/// Frequencies where |delta| < kappa for the lossless grating.
FrequencyBand mirror_stopband(const SawGeometry& geom);

/// sinc^2(pi N_p (f - f0) / f0), unity at f0 = v / lambda_idt.
double idt_conductance(const SawGeometry& geom, double f);

enum class Normalization { PeakUnity, Raw };

struct ConductanceSpectrum {
    std::vector<double> frequencies;  // Hz, strictly ascending
    std::vector<double> values;       // >= 0
    Normalization normalization = Normalization::PeakUnity;

    void validate() const;
    std::size_t size() const { return frequencies.size(); }
};

/// Real part of the resonator admittance over the grid. PeakUnity divides by
/// the largest sample; Raw multiplies the normalized-unit conductance by
/// `raw_scale`. Throws Numerical with the offending frequency on a singular
/// cascade.
ConductanceSpectrum cascaded_conductance(const SawGeometry& geom,
                                         std::span<const double> f_grid,
                                         Normalization normalization = Normalization::PeakUnity,
                                         double raw_scale = 1.0);

/// Bare IDT conductance sampled on a grid, same container as the cascade.
ConductanceSpectrum idt_spectrum(const SawGeometry& geom, std::span<const double> f_grid);

/// Uniformly spaced grid of n points over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace sawbath::com
