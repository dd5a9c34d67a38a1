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

// Scalar reference kernels. These define the semantics; the SIMD variants
// must agree with them to rounding error.

#include "qsense/kernels.hpp"

namespace qsense::kernels::detail {

void matmul_scalar(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cdouble acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) acc += a[i * n + k] * b[k * n + j];
            c[i * n + j] = acc;
        }
    }
}

void matmul_nh_scalar(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cdouble acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) acc += a[i * n + k] * std::conj(b[j * n + k]);
            c[i * n + j] = acc;
        }
    }
}

}  // namespace qsense::kernels::detail
