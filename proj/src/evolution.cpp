// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsense/evolution.hpp"

#include <cmath>

namespace qsense {

RotationAngles RotationAngles::uniform_readout() {
    return {std::acos(1.0 / std::sqrt(3.0)), M_PI / 4.0, 2.0 / 3.0};
}

Operator ideal_hamiltonian(const VectorField& f) {
    const double nx = std::sin(f.alpha) * std::cos(f.beta);
    const double ny = std::sin(f.alpha) * std::sin(f.beta);
    const double nz = std::cos(f.alpha);
    return (sigma_x() * cdouble(nx, 0) + sigma_y() * cdouble(ny, 0) +
            sigma_z() * cdouble(nz, 0)) *
           cdouble(f.b, 0);
}

Operator drive_hamiltonian(const DriveParams& p) {
    return sigma_z() * cdouble(0.5 * p.delta, 0) +
           sigma_x() * cdouble(0.5 * p.omega * std::cos(p.phi), 0) -
           sigma_y() * cdouble(0.5 * p.omega * std::sin(p.phi), 0);
}

Operator hyperfine_hamiltonian(double a) {
    const Operator sze = kron(sigma_z(), identity2());
    const Operator szn = kron(identity2(), sigma_z());
    return (szn - sze - sze * szn) * cdouble(a / 4.0, 0);
}

Operator target_unitary(const DriveParams& p, double hyperfine, double t,
                        bool frame_change) {
    const Operator h = kron(drive_hamiltonian(p), identity2()) + hyperfine_hamiltonian(hyperfine);
    Operator u = expm(h, cdouble(0, -t));
    if (frame_change) {
        const Operator frame = kron(expm(sigma_z(), cdouble(0, 0.5 * p.delta * t)), identity2());
        u = frame * u;
    }
    return u;
}

Operator pi_pulse(double phase, const PulseModel& model, double hyperfine) {
    if (model.kind == PulseModel::Kind::Instantaneous) {
        const Operator gen =
            sigma_x() * cdouble(std::cos(phase), 0) + sigma_y() * cdouble(std::sin(phase), 0);
        return kron(expm(gen, cdouble(0, -M_PI / 2.0)), identity2());
    }
    if (!(model.rabi > 0.0)) throw NonpositiveRabi("finite-duration pi pulse");
    const DriveParams drive{model.rabi, 0.0, -phase};
    const Operator h = kron(drive_hamiltonian(drive), identity2()) +
                       hyperfine_hamiltonian(hyperfine);
    return expm(h, cdouble(0, -M_PI / model.rabi));
}

DriveParams derive_control(const DriveParams& target) {
    return {target.omega, target.delta, M_PI - target.phi};
}

double compensating_pulse_phase(double delta, double dwell) { return -0.5 * delta * dwell; }

Operator sensing_loop_unitary(const DriveParams& target, const SequenceSpec& spec) {
    Operator u = Operator::identity(4);
    if (spec.n_loops <= 0) return u;

    const double t = spec.dwell;
    const Operator u_t = target_unitary(target, spec.hyperfine, t, spec.frame_change);
    const Operator h_c = kron(drive_hamiltonian(spec.control), identity2()) +
                         hyperfine_hamiltonian(spec.hyperfine);
    const Operator u_c = expm(h_c, cdouble(0, -t));
    const Operator p1 = pi_pulse(spec.pi_pulse_phases[0], spec.pulses, spec.hyperfine);
    const Operator p2 = pi_pulse(spec.pi_pulse_phases[1], spec.pulses, spec.hyperfine);

    const Operator loop = p2 * u_c * p1 * u_t;
    for (int i = 0; i < spec.n_loops; ++i) u = loop * u;

    if (spec.nuclear_compensation && spec.hyperfine != 0.0) {
        // The pi pulses invert every electron term of H_int but leave its
        // sigma_z^n part running; undo the accumulated nuclear z rotation.
        double pulse_time = 0.0;
        if (spec.pulses.kind == PulseModel::Kind::FiniteDuration)
            pulse_time = M_PI / spec.pulses.rabi;
        const double tau = spec.n_loops * (2.0 * t + 2.0 * pulse_time);
        const Operator fix =
            kron(identity2(), expm(sigma_z(), cdouble(0, 0.25 * spec.hyperfine * tau)));
        u = fix * u;
    }
    return u;
}

Operator rotation_gate(const RotationAngles& r) {
    const Operator gen = sigma_z() * cdouble(std::cos(r.a), 0) +
                         sigma_x() * cdouble(std::sin(r.a) * std::cos(r.b), 0) +
                         sigma_y() * cdouble(std::sin(r.a) * std::sin(r.b), 0);
    return kron(expm(gen, cdouble(0, -M_PI * r.c / 2.0)), identity2());
}

std::array<double, 4> ideal_bell_probabilities(const VectorField& f, double t_total) {
    const double c = std::cos(f.b * t_total), s = std::sin(f.b * t_total);
    const double sa = std::sin(f.alpha), ca = std::cos(f.alpha);
    const double sb = std::sin(f.beta), cb = std::cos(f.beta);
    return {c * c, s * s * ca * ca, s * s * sa * sa * cb * cb, s * s * sa * sa * sb * sb};
}

std::array<double, 4> rotated_bell_probabilities(const VectorField& f, double t_total,
                                                 const RotationAngles& r) {
    // SU(2) quaternion components of (basis rotation)^H * evolution; the four
    // outcome probabilities are their squares, ordered so that c = 0 reduces
    // to the unrotated case.
    const double u0 = std::cos(f.b * t_total);
    const double su = std::sin(f.b * t_total);
    const double ux = su * std::sin(f.alpha) * std::cos(f.beta);
    const double uy = su * std::sin(f.alpha) * std::sin(f.beta);
    const double uz = su * std::cos(f.alpha);

    const double r0 = std::cos(M_PI * r.c / 2.0);
    const double sr = -std::sin(M_PI * r.c / 2.0);
    const double rx = sr * std::sin(r.a) * std::cos(r.b);
    const double ry = sr * std::sin(r.a) * std::sin(r.b);
    const double rz = sr * std::cos(r.a);

    const double w0 = r0 * u0 - (rx * ux + ry * uy + rz * uz);
    const double wx = r0 * ux + u0 * rx + (ry * uz - rz * uy);
    const double wy = r0 * uy + u0 * ry + (rz * ux - rx * uz);
    const double wz = r0 * uz + u0 * rz + (rx * uy - ry * ux);

    return {w0 * w0, wz * wz, wx * wx, wy * wy};
}

PulseCalibration pulse_calibration(double hyperfine_splitting, double hyperfine, double tau) {
    if (!(hyperfine_splitting > 0.0))
        throw DegenerateSplitting("hyperfine splitting must be positive");
    if (hyperfine == 0.0) throw DegenerateSplitting("zero hyperfine coupling");
    PulseCalibration cal;
    cal.selective_rabi = hyperfine_splitting / std::sqrt(3.0);
    cal.selective_pi_duration = M_PI / cal.selective_rabi;
    cal.rf_halfpi_duration_unit = 2.0 * M_PI / std::abs(hyperfine);
    cal.nuclear_phase_correction = hyperfine * tau / 2.0;
    return cal;
}

}  // namespace qsense
