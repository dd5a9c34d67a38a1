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

// AVX2+FMA kernels. Complex doubles are interleaved [re, im], so one
// __m256d holds two complex numbers. Compiled with per-function target
// attributes so the rest of the library stays baseline-ISA.

#include "qsense/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define QSENSE_X86 1
#include <immintrin.h>
#else
#define QSENSE_X86 0
#endif

namespace qsense::kernels::detail {

#if QSENSE_X86

// acc += s * v for two interleaved complex lanes.
// Even lanes: re(s)*re(v) - im(s)*im(v); odd lanes: re(s)*im(v) + im(s)*re(v).
__attribute__((target("avx2,fma"))) static inline __m256d cmul_acc(__m256d acc, __m256d sr,
                                                                   __m256d si, __m256d v) {
    __m256d vswap = _mm256_permute_pd(v, 0b0101);
    __m256d prod = _mm256_fmaddsub_pd(sr, v, _mm256_mul_pd(si, vswap));
    return _mm256_add_pd(acc, prod);
}

__attribute__((target("avx2,fma"))) static void matmul4_avx2(const double* a, const double* b,
                                                             double* c) {
    for (int i = 0; i < 4; ++i) {
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        for (int k = 0; k < 4; ++k) {
            __m256d sr = _mm256_broadcast_sd(a + 8 * i + 2 * k);
            __m256d si = _mm256_broadcast_sd(a + 8 * i + 2 * k + 1);
            acc0 = cmul_acc(acc0, sr, si, _mm256_loadu_pd(b + 8 * k));
            acc1 = cmul_acc(acc1, sr, si, _mm256_loadu_pd(b + 8 * k + 4));
        }
        _mm256_storeu_pd(c + 8 * i, acc0);
        _mm256_storeu_pd(c + 8 * i + 4, acc1);
    }
}

__attribute__((target("avx2,fma"))) static void matmul2_avx2(const double* a, const double* b,
                                                             double* c) {
    for (int i = 0; i < 2; ++i) {
        __m256d acc = _mm256_setzero_pd();
        for (int k = 0; k < 2; ++k) {
            __m256d sr = _mm256_broadcast_sd(a + 4 * i + 2 * k);
            __m256d si = _mm256_broadcast_sd(a + 4 * i + 2 * k + 1);
            acc = cmul_acc(acc, sr, si, _mm256_loadu_pd(b + 4 * k));
        }
        _mm256_storeu_pd(c + 4 * i, acc);
    }
}

void matmul_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    if (n == 4) {
        matmul4_avx2(ad, bd, cd);
    } else if (n == 2) {
        matmul2_avx2(ad, bd, cd);
    } else {
        matmul_scalar(a, b, c, n);  // dim 3 is off the hot path
    }
}

void matmul_nh_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    if (n == 2 || n == 4) {
        cdouble bh[16];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) bh[i * n + j] = std::conj(b[j * n + i]);
        matmul_avx2(a, bh, c, n);
    } else {
        matmul_nh_scalar(a, b, c, n);
    }
}

#else  // !QSENSE_X86
// TODO: add a NEON variant behind the same dispatch slots for aarch64 builds.

void matmul_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    matmul_scalar(a, b, c, n);
}

void matmul_nh_avx2(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    matmul_nh_scalar(a, b, c, n);
}

#endif

}  // namespace qsense::kernels::detail
