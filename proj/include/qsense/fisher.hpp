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
#include <functional>
#include <vector>

#include "qsense/evolution.hpp"
#include "qsense/quantum_state.hpp"

// Quantum and classical Fisher information, finite-difference Jacobians,
// noise covariance models and error propagation. Estimation always runs on
// three parameters; the fourth outcome is eliminated by normalization, so
// every matrix here is a real 3x3.

namespace qsense {

/// Default relative finite-difference step; per-component steps are
/// step * max(1, |theta_j|).
inline constexpr double kDefaultFdStep = 1e-5;

/// Eigenvalue-pair / outcome threshold for the support-restricted Fisher
/// information sums.
inline constexpr double kSupportTol = 1e-12;

/// Condition-number bound past which a Jacobian is reported singular.
inline constexpr double kConditionBound = 1e12;

/// Real 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double& at(int i, int j) { return m[i * 3 + j]; }
    const double& at(int i, int j) const { return m[i * 3 + j]; }

    static Mat3 identity();
    static Mat3 diag(double a, double b, double c);

    Mat3 transpose() const;
    Mat3 operator*(const Mat3& o) const;
    Mat3 operator+(const Mat3& o) const;
    Mat3 operator*(double s) const;
    double trace() const;

    /// Exact adjugate inverse; no conditioning check (see propagate_errors).
    Mat3 inverse() const;

    /// 2-norm condition number via the singular values.
    double condition_number() const;

    /// Eigenvalues of the symmetric part, ascending.
    std::array<double, 3> symmetric_eigenvalues() const;

    double max_abs_diff(const Mat3& o) const;
};

struct NoiseSpec {
    enum class Kind { QuantumProjection, SingleShot, Averaged };
    Kind kind = Kind::Averaged;
    int n = 1;             // shots (QuantumProjection / SingleShot / exact Averaged)
    double epsilon = 0.0;  // misclassification rate (SingleShot)
    double sigma = 0.0;    // per-signal readout deviation (Averaged)
    // Averaged normally keeps only sigma^2 I; this adds the projection term.
    bool include_projection_term = false;

    static NoiseSpec quantum_projection(int n);
    static NoiseSpec single_shot(int n, double epsilon);
    static NoiseSpec averaged(double sigma);
};

enum class WeightKind { Identity, Adapted };

using StateFn = std::function<QuantumState(const std::array<double, 3>&)>;
using ProbsFn = std::function<std::vector<double>(const std::array<double, 3>&)>;
using SignalsFn = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

/// Quantum Fisher information matrix of the state map at theta:
///   QFI_ij = 2 sum_{h,k} Re[<k|d_i rho|h><h|d_j rho|k>] / (l_k + l_h)
/// over eigenpairs with l_k + l_h above the support threshold; derivatives
/// by central differences. Throws DegenerateState if no pair contributes.
Mat3 qfim_numeric(const StateFn& state_fn, const std::array<double, 3>& theta, double step);

struct CfimResult {
    Mat3 fim;
    int skipped_outcomes = 0;
};

/// Classical Fisher information of a parametrized outcome distribution:
///   FIM_ij = sum_k d_i p_k d_j p_k / p_k
/// over outcomes above the support threshold (skipped ones are counted).
CfimResult cfim(const ProbsFn& probs_fn, const std::array<double, 3>& theta, double step);

/// Central-difference Jacobian J_ij = d f_i / d theta_j with per-component
/// steps h_j = step * max(1, |theta_j|).
Mat3 jacobian_fd(const SignalsFn& f, const std::array<double, 3>& theta, double step);

/// Covariance of the three retained signal estimates. `p` holds 3 or 4
/// probabilities (the remainder is reconstructed when absent; SingleShot
/// applies the confusion channel on all four first).
Mat3 noise_covariance(const std::vector<double>& p, const NoiseSpec& spec);

/// J^-1 Sigma_p J^-T. Throws SingularJacobian (with the condition number)
/// past the conditioning bound; this is how the P = 1/2 probe degeneracy
/// surfaces.
Mat3 propagate_errors(const Mat3& jacobian, const Mat3& sigma_p);

/// Total Cartesian field variance Tr[diag(1, B^2, B^2 sin^2 alpha) Sigma]
/// for a covariance in spherical parameters (B, alpha, beta).
double figure_of_merit(const Mat3& sigma_theta, const VectorField& f);

/// Closed-form scalar quantum Fisher information of the partially polarized
/// probe in the zero-field limit. Adapted weight: T^2 (2 + P^2); identity
/// weight: T^2 [1 - (1 - P^2) sin^2(alpha) cos^2(beta)].
double mixed_probe_scalar_qfi(double p_bloch, const VectorField& f, double t,
                              WeightKind weight);

}  // namespace qsense
