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

// Two-qubit sensor-ancilla states.
//
// Computational labeling, fixed once for the whole library:
//   index 0 = |0,+1>   (electron m_S = 0,  nuclear m_I = +1)
//   index 1 = |0, 0>
//   index 2 = |-1,+1>
//   index 3 = |-1, 0>
// i.e. the full space is electron (x) nuclear with electron basis {|0>,|-1>}
// and nuclear basis {|+1>,|0>}. sigma_z has eigenvalue +1 on the first state
// of each factor. The Bell pair used throughout is
//   |Phi+-> = (|0,0> +- |-1,+1>)/sqrt(2) = (e1 +- e2)/sqrt(2).
//
// Population ordering follows the readout labeling:
//   p1 = Pr|-1,+1>, p2 = Pr|-1,0>, p3 = Pr|0,0>, p4 = Pr|0,+1>.

namespace qsense {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

/// Two-qubit density matrix. Valid states are Hermitian, unit trace and
/// positive semidefinite within tolerance.
struct QuantumState {
    Operator rho{4};

    /// Validates all invariants (throws InvalidState).
    static QuantumState from_density(const Operator& rho);
    /// |psi><psi| from an unnormalized ket.
    static QuantumState from_ket(const std::array<cdouble, 4>& psi);
};

/// Probe preparation parameters. `polarization_population` is the nuclear
/// polarization P in the population convention (mixture weights P, 1-P).
struct ProbeSpec {
    double polarization_population = 1.0;
};

/// Bloch-vector polarization 2P - 1 from the population convention.
inline double bloch_from_population(double p) { return 2.0 * p - 1.0; }
inline double population_from_bloch(double pb) { return 0.5 * (pb + 1.0); }

/// P |Phi+><Phi+| + (1-P) |Phi-><Phi-|.
QuantumState prepare_probe(const ProbeSpec& spec);

/// Probe produced by a Hadamard + CNOT circuit from a pure sensor and a
/// partially polarized ancilla (I + P sigma_z)/2: the mixture of
/// (|00>+|11>)/sqrt(2) and (|01>+|10>)/sqrt(2) with weights (1 +- P)/2.
/// This is the family the zero-field mixed-probe QFI closed forms describe;
/// it differs from prepare_probe by which ancilla axis separates the two
/// mixture components.
QuantumState prepare_mixed_ancilla_probe(double p_bloch);

/// Wootters concurrence, in [0, 1]. For the prepared probe this equals
/// |2P - 1|.
double concurrence(const QuantumState& state);

/// U rho U^H. Throws NotUnitary if u fails the unitarity check at `tol`.
QuantumState apply_unitary(const QuantumState& state, const Operator& u, double tol = 1e-9);

/// Diagonal of rho in the fixed labeling, ordered (p1, p2, p3, p4).
std::array<double, 4> populations(const QuantumState& state);

/// Bell-pair preparation circuit: nuclear pi/2 rotation exp(+i pi sigma_y/4)
/// followed by a selective electron pi pulse conditioned on nuclear |+1>.
/// Maps |0,+1> to |Phi+> and |0,0> to |Phi-> (up to global phase).
Operator entangler();

/// Exact inverse of entangler(); maps |Phi+> onto p4 and |Phi-> onto p3.
Operator disentangler();

std::array<cdouble, 4> phi_plus_ket();
std::array<cdouble, 4> phi_minus_ket();

}  // namespace qsense
