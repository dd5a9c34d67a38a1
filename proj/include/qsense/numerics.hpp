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
#include <complex>

#include "qsense/errors.hpp"
#include "qsense/kernels.hpp"

namespace qsense {

using cdouble = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kReconstructTol = 1e-9;

/// Dense complex square matrix of dimension 2, 3 or 4 (3 is reserved for
/// spin-1 extensions and stays off the default paths). Row-major, value
/// semantics, no heap allocation.
struct Operator {
    int dim = 2;
    std::array<cdouble, 16> m{};

    Operator() = default;
    explicit Operator(int d) : dim(d) {
        if (d < 2 || d > 4) throw Error("operator dimension must be 2, 3 or 4");
    }

    static Operator zeros(int d) { return Operator(d); }
    static Operator identity(int d);

    cdouble& at(int i, int j) { return m[i * dim + j]; }
    const cdouble& at(int i, int j) const { return m[i * dim + j]; }

    Operator adjoint() const;
    cdouble trace() const;

    bool is_hermitian(double tol = kHermitianTol) const;
    bool is_unitary(double tol = kUnitaryTol) const;
    bool all_finite() const;

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;  // kernels::matmul
    Operator operator*(cdouble s) const;

    /// this * other^H (kernels::matmul_nh).
    Operator mul_adjoint(const Operator& o) const;
};

inline Operator operator*(cdouble s, const Operator& o) { return o * s; }

/// max_ij |a_ij|
double max_abs(const Operator& a);
/// max_ij |a_ij - b_ij|
double max_abs_diff(const Operator& a, const Operator& b);

/// Kronecker product; result dimension dim(a)*dim(b) (must be <= 4).
Operator kron(const Operator& a, const Operator& b);

struct EigResult {
    std::array<double, 4> values{};  // ascending, first `dim` entries used
    Operator vectors;                // columns are the matching eigenvectors
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws NotHermitian if max|h - h^H| exceeds `tol`.
EigResult eig_hermitian(const Operator& h, double tol = kHermitianTol);

/// exp(scale * h) for Hermitian h, via the spectral decomposition.
/// Throws NotHermitian on non-Hermitian input.
Operator expm(const Operator& h, cdouble scale);

// Single-qubit constants.
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator identity2();

}  // namespace qsense
