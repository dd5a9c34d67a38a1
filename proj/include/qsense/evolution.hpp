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
#pragma once

#include <array>

#include "qsense/numerics.hpp"

// Hamiltonian models and sequence construction. All frequencies are angular
// (rad/us), all times are in us; unit conversion happens only at the config
// boundary.

namespace qsense {

/// Static vector field in spherical coordinates: magnitude (rad/us), polar
/// angle alpha in [0, pi], azimuth beta in [-pi, pi].
struct VectorField {
    double b = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Microwave drive parameters: Rabi frequency, detuning (both rad/us) and
/// phase (rad).
struct DriveParams {
    double omega = 0.0;
    double delta = 0.0;
    double phi = 0.0;
};

/// Measurement-basis rotation in axis-angle form: a = axis polar angle,
/// b = axis azimuth, c = rotation fraction (total angle pi*c).
struct RotationAngles {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// The uniform-readout rotation: axis (1,1,1)/sqrt(3), angle 2*pi/3.
    static RotationAngles uniform_readout();
};

struct PulseModel {
    enum class Kind { Instantaneous, FiniteDuration };
    Kind kind = Kind::Instantaneous;
    double rabi = 0.0;  // rad/us, FiniteDuration only

    static PulseModel instantaneous() { return {}; }
    static PulseModel finite(double rabi) { return {Kind::FiniteDuration, rabi}; }
};

/// Sequential-control configuration for the sensing loop.
struct SequenceSpec {
    int n_loops = 1;
    double dwell = 0.03;      // per-loop target evolution time, us
    double hyperfine = 0.0;   // coupling constant A, rad/us
    DriveParams control;      // typically derive_control(target)
    std::array<double, 2> pi_pulse_phases{0.0, 0.0};
    RotationAngles rotation;
    PulseModel pulses;
    // The drive model carries a frame-change factor exp(+i delta sigma_z^e t/2)
    // on each target segment; the plain vector-field model does not.
    bool frame_change = true;
    // Cancel the nuclear z-phase the pi pulses cannot touch (the RF-phase
    // correction of the pulse calibration), applied once after the N loops.
    bool nuclear_compensation = true;
};

/// B [sin(a)cos(b) sx + sin(a)sin(b) sy + cos(a) sz]; 2x2, traceless,
/// eigenvalues +-B.
Operator ideal_hamiltonian(const VectorField& f);

/// (delta/2) sz + (omega/2)(cos(phi) sx - sin(phi) sy); 2x2.
Operator drive_hamiltonian(const DriveParams& p);

/// A(-sz^e + sz^n - sz^e sz^n)/4; 4x4 diagonal in the computational basis.
Operator hyperfine_hamiltonian(double a);

/// exp(+i delta sz^e t/2) * exp(-i (H(drive) + H_int) t); 4x4 unitary with the
/// drive acting on the electron factor. `frame_change=false` drops the
/// leading frame factor (vector-field variant).
Operator target_unitary(const DriveParams& p, double hyperfine, double t,
                        bool frame_change = true);

/// Electron-spin pi pulse. Instantaneous: exp(-i(pi/2)(cos phi sx + sin phi
/// sy)) (x) I. FiniteDuration: evolution under drive(rabi, 0, -phi) + H_int
/// for pi/rabi. Throws NonpositiveRabi.
Operator pi_pulse(double phase, const PulseModel& model, double hyperfine = 0.0);

/// (omega_t, delta_t, pi - phi_t): the control settings that invert the
/// target segment between the two pi pulses.
DriveParams derive_control(const DriveParams& target);

/// Pi-pulse phase that cancels the frame-change factor at nonzero detuning.
/// Frozen from a numerical scan over the phase (see tests): -delta*dwell/2.
double compensating_pulse_phase(double delta, double dwell);

/// [U_pi(phi2) U_c(t) U_pi(phi1) U_t(t)]^N, plus the nuclear z-phase
/// compensation when enabled. N = 0 gives the identity.
Operator sensing_loop_unitary(const DriveParams& target, const SequenceSpec& spec);

/// exp(-i(pi c/2)[cos(a) sz + sin(a)cos(b) sx + sin(a)sin(b) sy]) (x) I.
Operator rotation_gate(const RotationAngles& r);

/// Bell-measurement outcome probabilities of the ideal vector-field model:
/// (cos^2(BT), sin^2(BT)cos^2 a, sin^2(BT)sin^2 a cos^2 b,
///  sin^2(BT)sin^2 a sin^2 b).
std::array<double, 4> ideal_bell_probabilities(const VectorField& f, double t_total);

/// Same model with the measurement basis rotated by rotation_gate(r).
/// Ordering is consistent with ideal_bell_probabilities (c = 0 reduces to it).
std::array<double, 4> rotated_bell_probabilities(const VectorField& f, double t_total,
                                                 const RotationAngles& r);

struct PulseCalibration {
    double selective_rabi;            // rad/us
    double selective_pi_duration;     // us
    double rf_halfpi_duration_unit;   // us; RF pi/2 lengths are multiples of it
    double nuclear_phase_correction;  // rad
};

/// Scalar calibration formulas for the selective/conditional pulses:
/// the selective Rabi rate splitting/sqrt(3) makes the off-resonant
/// transition complete a 2*pi rotation during the resonant pi pulse.
PulseCalibration pulse_calibration(double hyperfine_splitting, double hyperfine,
                                   double tau);

}  // namespace qsense
