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

#include "qsense/quantum_state.hpp"

#include <algorithm>
#include <cmath>

namespace qsense {

QuantumState QuantumState::from_density(const Operator& rho) {
    if (rho.dim != 4) throw InvalidState("density matrix must be 4x4");
    if (!rho.all_finite()) throw InvalidState("density matrix has non-finite entries");
    if (std::abs(rho.trace() - 1.0) > kTraceTol)
        throw InvalidState("trace deviates from 1 by " +
                           std::to_string(std::abs(rho.trace() - 1.0)));
    if (!rho.is_hermitian(kHermitianTol)) throw InvalidState("density matrix not Hermitian");
    EigResult e = eig_hermitian(rho);
    if (e.values[0] < -kPsdTol)
        throw InvalidState("negative eigenvalue " + std::to_string(e.values[0]));
    return QuantumState{rho};
}

QuantumState QuantumState::from_ket(const std::array<cdouble, 4>& psi) {
    double n2 = 0.0;
    for (const auto& c : psi) n2 += std::norm(c);
    Operator rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho.at(i, j) = psi[i] * std::conj(psi[j]) / n2;
    return QuantumState{rho};
}

std::array<cdouble, 4> phi_plus_ket() {
    const double s = 1.0 / std::sqrt(2.0);
    return {0.0, s, s, 0.0};
}

std::array<cdouble, 4> phi_minus_ket() {
    const double s = 1.0 / std::sqrt(2.0);
    return {0.0, s, -s, 0.0};
}

QuantumState prepare_probe(const ProbeSpec& spec) {
    const double p = spec.polarization_population;
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidState("polarization population outside [0, 1]");
    const auto plus = phi_plus_ket();
    const auto minus = phi_minus_ket();
    Operator rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho.at(i, j) = p * plus[i] * std::conj(plus[j]) +
                           (1.0 - p) * minus[i] * std::conj(minus[j]);
    return QuantumState{rho};
}

QuantumState prepare_mixed_ancilla_probe(double p_bloch) {
    if (!(p_bloch >= -1.0 && p_bloch <= 1.0)) throw InvalidState("|P_bloch| exceeds 1");
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<cdouble, 4> even{s, 0.0, 0.0, s};  // (|00> + |11>)/sqrt(2)
    const std::array<cdouble, 4> odd{0.0, s, s, 0.0};   // (|01> + |10>)/sqrt(2)
    const double w_even = 0.5 * (1.0 + p_bloch);
    const double w_odd = 0.5 * (1.0 - p_bloch);
    Operator rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho.at(i, j) = w_even * even[i] * std::conj(even[j]) +
                           w_odd * odd[i] * std::conj(odd[j]);
    return QuantumState{rho};
}

Operator entangler() {
    // Nuclear pi/2: exp(+i pi sigma_y / 4) acting on the nuclear factor.
    const Operator rn = expm(sigma_y(), cdouble(0.0, M_PI / 4.0));
    const Operator nuclear_halfpi = kron(identity2(), rn);

    // Selective electron pi about -y, conditioned on nuclear |+1>. The -y
    // pulse phase is what makes |0,+1> land exactly on |Phi+> rather than a
    // relative-phase variant.
    Operator flip(2);  // i sigma_y = [[0, 1], [-1, 0]]
    flip.at(0, 1) = 1.0;
    flip.at(1, 0) = -1.0;
    Operator pn0(2), pn1(2);
    pn0.at(0, 0) = 1.0;
    pn1.at(1, 1) = 1.0;
    const Operator conditional = kron(flip, pn0) + kron(identity2(), pn1);

    return conditional * nuclear_halfpi;
}

Operator disentangler() { return entangler().adjoint(); }

double concurrence(const QuantumState& state) {
    const Operator& rho = state.rho;
    const Operator yy = kron(sigma_y(), sigma_y());

    Operator rho_conj(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho_conj.at(i, j) = std::conj(rho.at(i, j));
    const Operator rho_tilde = yy * rho_conj * yy;

    // sqrt(rho) through the spectral decomposition, clamping the tiny
    // negative eigenvalues a valid state may carry.
    EigResult e = eig_hermitian(rho);
    Operator w(4);
    for (int j = 0; j < 4; ++j) {
        const double f = std::sqrt(std::max(0.0, e.values[j]));
        for (int i = 0; i < 4; ++i) w.at(i, j) = e.vectors.at(i, j) * f;
    }
    const Operator sqrt_rho = w.mul_adjoint(e.vectors);

    Operator msym = sqrt_rho * rho_tilde * sqrt_rho;
    // Symmetrize against roundoff before the Hermitian eigensolver.
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const cdouble v = 0.5 * (msym.at(i, j) + std::conj(msym.at(j, i)));
            msym.at(i, j) = v;
            msym.at(j, i) = std::conj(v);
        }
    EigResult em = eig_hermitian(msym);
    std::array<double, 4> s;
    for (int i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(0.0, em.values[i]));
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

QuantumState apply_unitary(const QuantumState& state, const Operator& u, double tol) {
    if (u.dim != state.rho.dim) throw InvalidState("operator dimension mismatch");
    if (!u.is_unitary(tol))
        throw NotUnitary("apply_unitary, deviation " +
                         std::to_string(max_abs_diff(u.mul_adjoint(u), Operator::identity(u.dim))));
    return QuantumState{(u * state.rho).mul_adjoint(u)};
}

std::array<double, 4> populations(const QuantumState& state) {
    const Operator& rho = state.rho;
    // (p1, p2, p3, p4) = Pr(|-1,+1>), Pr(|-1,0>), Pr(|0,0>), Pr(|0,+1>)
    return {rho.at(2, 2).real(), rho.at(3, 3).real(), rho.at(1, 1).real(), rho.at(0, 0).real()};
}

}  // namespace qsense
