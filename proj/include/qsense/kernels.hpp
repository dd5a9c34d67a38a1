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

#include <complex>

// Dense complex kernels for the 2x2/3x3/4x4 matrices everything else is
// built from. A scalar reference implementation always exists; an AVX2
// variant is selected at runtime when the CPU supports it. The two are
// equivalence-tested against each other in tests/test_kernels.cpp.

namespace qsense::kernels {

using cdouble = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// True when the running CPU supports the AVX2+FMA variants.
bool avx2_supported();

/// Backend currently used by the dispatch table (auto-detected at startup).
Backend active_backend();

/// Force a backend; throws std::invalid_argument if unsupported on this CPU.
void set_backend(Backend b);

/// c = a * b for row-major n x n matrices, n in {2, 3, 4}. c must not alias.
void matmul(const cdouble* a, const cdouble* b, cdouble* c, int n);

/// c = a * b^H (conjugate transpose of b). c must not alias.
void matmul_nh(const cdouble* a, const cdouble* b, cdouble* c, int n);

namespace detail {
void matmul_scalar(const cdouble* a, const cdouble* b, cdouble* c, int n);
void matmul_nh_scalar(const cdouble* a, const cdouble* b, cdouble* c, int n);
void matmul_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n);
void matmul_nh_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n);
}  // namespace detail

}  // namespace qsense::kernels
