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

#include "qsense/kernels.hpp"

#include <stdexcept>

namespace qsense::kernels {

namespace {

using MatmulFn = void (*)(const cdouble*, const cdouble*, cdouble*, int);

struct Dispatch {
    Backend backend;
    MatmulFn matmul;
    MatmulFn matmul_nh;
};

bool detect_avx2() {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Dispatch make_dispatch(Backend b) {
    if (b == Backend::Avx2)
        return {Backend::Avx2, detail::matmul_avx2, detail::matmul_nh_avx2};
    return {Backend::Scalar, detail::matmul_scalar, detail::matmul_nh_scalar};
}

Dispatch& dispatch() {
    static Dispatch d = make_dispatch(detect_avx2() ? Backend::Avx2 : Backend::Scalar);
    return d;
}

}  // namespace

bool avx2_supported() { return detect_avx2(); }

Backend active_backend() { return dispatch().backend; }

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_supported())
        throw std::invalid_argument("AVX2 backend not supported on this CPU");
    dispatch() = make_dispatch(b);
}

void matmul(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    dispatch().matmul(a, b, c, n);
}

void matmul_nh(const cdouble* a, const cdouble* b, cdouble* c, int n) {
    dispatch().matmul_nh(a, b, c, n);
}

}  // namespace qsense::kernels
