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

#include "sawbath/com.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sawbath/constants.hpp"
#include "sawbath/error.hpp"

namespace sawbath::com {

using constants::two_pi;

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_positive_frequency(double f, const char* op) {
    if (!(f > 0.0) || !std::isfinite(f)) {
        std::ostringstream os;
        os << op << ": frequency must be positive and finite, got " << f;
        throw_invalid(os.str());
    }
}

// cosh(sL) and sinh(sL)/s as entire functions of z = (sL)^2, so the
// s -> 0 branch point needs no special casing.
struct EvenHyperbolic {
    cplx cosh_sl;
    cplx sinh_sl_over_s;
};

EvenHyperbolic even_hyperbolic(cplx s_squared, double length) {
    const cplx z = s_squared * length * length;
    if (std::abs(z) < 1e-3) {
        const cplx c = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0 * (1.0 + z / 56.0)));
        const cplx sh = length * (1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0 * (1.0 + z / 72.0))));
        return {c, sh};
    }
    const cplx s = std::sqrt(s_squared);
    return {std::cosh(s * length), std::sinh(s * length) / s};
}

}  // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

void SawGeometry::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw_invalid(std::string("SawGeometry: ") + name + " must be positive");
    };
    positive(lambda_idt, "lambda_idt");
    positive(lambda_mirror, "lambda_mirror");
    positive(overlap_w, "overlap_w");
    positive(l_mirror, "l_mirror");
    positive(l_idt, "l_idt");
    positive(v_sound, "v_sound");
    if (n_pairs <= 0) throw_invalid("SawGeometry: n_pairs must be a positive integer");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw_invalid("SawGeometry: eta must be >= 0");
    if (!(gap >= 0.0) || !std::isfinite(gap)) throw_invalid("SawGeometry: gap must be >= 0");
    if (!(std::abs(r_idt) < 1.0)) throw_invalid("SawGeometry: |r_idt| must be < 1");
    if (!(std::abs(r_mirror) < 1.0)) throw_invalid("SawGeometry: |r_mirror| must be < 1");
}

double SawGeometry::mirror_coupling() const {
    return std::abs(r_mirror) / (0.5 * lambda_mirror);
}

PMatrix cascade(const PMatrix& a, const PMatrix& b) {
    // Waves bouncing between a's port 2 and b's port 1.
    const cplx loop = a.p22 * b.p11;
    const cplx det = 1.0 - loop;
    if (std::abs(det) < 1e-14 * (1.0 + std::abs(loop)))
        throw_numerical("cascade: singular inter-element reflection loop");

    // x: wave travelling right across the junction, y: travelling left.
    const cplx xa = a.p21 / det;
    const cplx xb = a.p22 * b.p12 / det;
    const cplx xv = (a.p23 + a.p22 * b.p13) / det;
    const cplx ya = b.p11 * xa;
    const cplx yb = b.p11 * xb + b.p12;
    const cplx yv = b.p11 * xv + b.p13;

    PMatrix c;
    c.p11 = a.p11 + a.p12 * ya;
    c.p12 = a.p12 * yb;
    c.p13 = a.p13 + a.p12 * yv;
    c.p21 = b.p21 * xa;
    c.p22 = b.p21 * xb + b.p22;
    c.p23 = b.p23 + b.p21 * xv;
    c.p31 = a.p31 + a.p32 * ya + b.p31 * xa;
    c.p32 = a.p32 * yb + b.p31 * xb + b.p32;
    c.p33 = a.p33 + b.p33 + a.p32 * yv + b.p31 * xv;
    return c;
}

PMatrix delay_line(double length, double f, double v_sound, double eta) {
    const cplx t = std::exp(cplx(-eta * length, -two_pi * f * length / v_sound));
    PMatrix p;
    p.p12 = t;
    p.p21 = t;
    return p;
}

namespace {

struct GratingResponse {
    cplx reflection;    // referenced at the incident end
    cplx transmission;  // envelope only, carrier phase excluded
};

GratingResponse grating_response(const SawGeometry& geom, double f) {
    const double kappa = geom.mirror_coupling();
    const double length = geom.l_mirror;
    const cplx delta(two_pi * (f - geom.bragg_frequency()) / geom.v_sound, -geom.eta);
    const EvenHyperbolic h = even_hyperbolic(kappa * kappa - delta * delta, length);
    const cplx denom = h.cosh_sl + cplx(0.0, 1.0) * delta * h.sinh_sl_over_s;
    const double mag = std::abs(geom.r_mirror);
    const cplx phase = mag > 0.0 ? geom.r_mirror / mag : cplx(1.0, 0.0);
    GratingResponse out{phase * kappa * h.sinh_sl_over_s / denom, 1.0 / denom};
    if (!finite(out.reflection) || !finite(out.transmission)) {
        std::ostringstream os;
        os << "mirror_reflection: non-finite result at f = " << f << " Hz";
        throw_numerical(os.str());
    }
    return out;
}

}  // namespace

cplx mirror_reflection(const SawGeometry& geom, double f) {
    require_positive_frequency(f, "mirror_reflection");
    return grating_response(geom, f).reflection;
}

PMatrix mirror_pmatrix(const SawGeometry& geom, double f) {
    require_positive_frequency(f, "mirror_pmatrix");
    const GratingResponse g = grating_response(geom, f);
    const double kb = two_pi * geom.bragg_frequency() / geom.v_sound;
    const cplx carrier = std::exp(cplx(0.0, -kb * geom.l_mirror));
    PMatrix p;
    p.p11 = g.reflection;
    // Seen from the far end the strip lattice is shifted by the carrier phase.
    p.p22 = g.reflection * carrier * carrier;
    p.p12 = g.transmission * carrier;
    p.p21 = p.p12;
    return p;
}

PMatrix idt_pmatrix(const SawGeometry& geom, double f) {
    require_positive_frequency(f, "idt_pmatrix");
    const double f0 = geom.idt_center_frequency();
    const double sc = sinc(constants::pi * geom.n_pairs * (f - f0) / f0);
    const double k = two_pi * f / geom.v_sound;

    PMatrix p;
    const cplx through = std::exp(cplx(-geom.eta * geom.l_idt, -k * geom.l_idt));
    p.p12 = through;
    p.p21 = through;
    // Transduction referenced to the transducer centre, half the length to each port.
    const cplx coupling = sc / std::sqrt(2.0) * std::exp(cplx(0.0, -0.5 * k * geom.l_idt));
    p.p13 = coupling;
    p.p23 = coupling;
    p.p31 = 2.0 * coupling;
    p.p32 = 2.0 * coupling;
    p.p33 = cplx(sc * sc, 0.0);
    return p;
}

PMatrix resonator_pmatrix(const SawGeometry& geom, double f) {
    const PMatrix mirror = mirror_pmatrix(geom, f);
    const PMatrix gap = delay_line(geom.gap, f, geom.v_sound, geom.eta);
    const PMatrix idt = idt_pmatrix(geom, f);
    try {
        return cascade(cascade(cascade(cascade(mirror, gap), idt), gap), mirror);
    } catch (const Error& e) {
        std::ostringstream os;
        os << "degenerate geometry at f = " << f << " Hz: " << e.what();
        throw_numerical(os.str());
    }
}

FrequencyBand mirror_stopband(const SawGeometry& geom) {
    const double half = geom.mirror_coupling() * geom.v_sound / two_pi;
    const double fb = geom.bragg_frequency();
    return {fb - half, fb + half};
}

double idt_conductance(const SawGeometry& geom, double f) {
    require_positive_frequency(f, "idt_conductance");
    const double f0 = geom.idt_center_frequency();
    const double sc = sinc(constants::pi * geom.n_pairs * (f - f0) / f0);
    return sc * sc;
}

void ConductanceSpectrum::validate() const {
    if (frequencies.size() != values.size())
        throw_invalid("ConductanceSpectrum: frequencies and values differ in length");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
        if (!(frequencies[i] > frequencies[i - 1]))
            throw_invalid("ConductanceSpectrum: frequencies must be strictly increasing");
    for (double v : values)
        if (!(v >= 0.0)) throw_invalid("ConductanceSpectrum: values must be non-negative");
}

namespace {

void require_grid(std::span<const double> f_grid, const char* op) {
    if (f_grid.empty()) throw_invalid(std::string(op) + ": empty frequency grid");
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        require_positive_frequency(f_grid[i], op);
        if (i > 0 && !(f_grid[i] > f_grid[i - 1]))
            throw_invalid(std::string(op) + ": frequency grid must be ascending");
    }
}

}  // namespace

ConductanceSpectrum cascaded_conductance(const SawGeometry& geom, std::span<const double> f_grid,
                                         Normalization normalization, double raw_scale) {
    geom.validate();
    require_grid(f_grid, "cascaded_conductance");
    ConductanceSpectrum out;
    out.normalization = normalization;
    out.frequencies.assign(f_grid.begin(), f_grid.end());
    out.values.resize(f_grid.size());
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        // Tiny negative values are rounding noise on a passive device.
        out.values[i] = std::max(0.0, resonator_pmatrix(geom, f_grid[i]).p33.real());
    }
    if (normalization == Normalization::PeakUnity) {
        const double peak = *std::max_element(out.values.begin(), out.values.end());
        if (peak > 0.0)
            for (double& v : out.values) v /= peak;
    } else {
        for (double& v : out.values) v *= raw_scale;
    }
    return out;
}

ConductanceSpectrum idt_spectrum(const SawGeometry& geom, std::span<const double> f_grid) {
    geom.validate();
    require_grid(f_grid, "idt_spectrum");
    ConductanceSpectrum out;
    out.normalization = Normalization::Raw;
    out.frequencies.assign(f_grid.begin(), f_grid.end());
    out.values.reserve(f_grid.size());
    for (double f : f_grid) out.values.push_back(idt_conductance(geom, f));
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> grid(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

}  // namespace sawbath::com
