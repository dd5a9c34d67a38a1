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

#include "qsense/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qsense {

Operator Operator::identity(int d) {
    Operator r(d);
    for (int i = 0; i < d; ++i) r.at(i, i) = 1.0;
    return r;
}

Operator Operator::adjoint() const {
    Operator r(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

cdouble Operator::trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

bool Operator::is_hermitian(double tol) const { return max_abs_diff(*this, adjoint()) <= tol; }

bool Operator::is_unitary(double tol) const {
    return max_abs_diff(mul_adjoint(*this), identity(dim)) <= tol;
}

bool Operator::all_finite() const {
    for (int i = 0; i < dim * dim; ++i)
        if (!std::isfinite(m[i].real()) || !std::isfinite(m[i].imag())) return false;
    return true;
}

Operator Operator::operator+(const Operator& o) const {
    Operator r(dim);
    for (int i = 0; i < dim * dim; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

Operator Operator::operator-(const Operator& o) const {
    Operator r(dim);
    for (int i = 0; i < dim * dim; ++i) r.m[i] = m[i] - o.m[i];
    return r;
}

Operator Operator::operator*(const Operator& o) const {
    Operator r(dim);
    kernels::matmul(m.data(), o.m.data(), r.m.data(), dim);
    return r;
}

Operator Operator::operator*(cdouble s) const {
    Operator r(dim);
    for (int i = 0; i < dim * dim; ++i) r.m[i] = m[i] * s;
    return r;
}

Operator Operator::mul_adjoint(const Operator& o) const {
    Operator r(dim);
    kernels::matmul_nh(m.data(), o.m.data(), r.m.data(), dim);
    return r;
}

double max_abs(const Operator& a) {
    double mx = 0.0;
    for (int i = 0; i < a.dim * a.dim; ++i) mx = std::max(mx, std::abs(a.m[i]));
    return mx;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    double mx = 0.0;
    for (int i = 0; i < a.dim * a.dim; ++i) mx = std::max(mx, std::abs(a.m[i] - b.m[i]));
    return mx;
}

Operator kron(const Operator& a, const Operator& b) {
    Operator r(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < b.dim; ++k)
                for (int l = 0; l < b.dim; ++l)
                    r.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
    return r;
}

namespace {

double offdiag_norm_sq(const Operator& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return s;
}

}  // namespace

EigResult eig_hermitian(const Operator& h, double tol) {
    if (!h.is_hermitian(tol))
        throw NotHermitian("eig_hermitian input, asymmetry " +
                           std::to_string(max_abs_diff(h, h.adjoint())));
    const int n = h.dim;

    // Symmetrize to remove the sub-tolerance asymmetry before iterating.
    Operator a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
    Operator v = Operator::identity(n);

    // Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair:
    // phase out a_pq, then apply the real rotation that annihilates it.
    for (int sweep = 0; sweep < 60 && offdiag_norm_sq(a) > 1e-32; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(a.at(p, q));
                if (r < 1e-300) continue;
                // V = diag(1, conj(phi)) * [[c, s], [-s, c]] with phi the
                // phase of a_pq; the diagonal factor makes the pivot block
                // real so the real rotation annihilates it.
                const cdouble phi = a.at(p, q) / r;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                const cdouble sphi = s * std::conj(phi);
                const cdouble cphi = c * std::conj(phi);

                for (int i = 0; i < n; ++i) {  // A <- A * V
                    const cdouble aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - sphi * aiq;
                    a.at(i, q) = s * aip + cphi * aiq;
                }
                for (int j = 0; j < n; ++j) {  // A <- V^H * A
                    const cdouble apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - std::conj(sphi) * aqj;
                    a.at(q, j) = s * apj + std::conj(cphi) * aqj;
                }
                for (int i = 0; i < n; ++i) {  // accumulate eigenvectors
                    const cdouble vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - sphi * viq;
                    v.at(i, q) = s * vip + cphi * viq;
                }
            }
        }
    }

    EigResult res;
    res.vectors = Operator(n);
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.begin() + n,
              [&](int x, int y) { return a.at(x, x).real() < a.at(y, y).real(); });
    for (int j = 0; j < n; ++j) {
        res.values[j] = a.at(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) res.vectors.at(i, j) = v.at(i, order[j]);
    }
    return res;
}

Operator expm(const Operator& h, cdouble scale) {
    EigResult e = eig_hermitian(h);
    const int n = h.dim;
    Operator w(n);
    for (int j = 0; j < n; ++j) {
        const cdouble f = std::exp(scale * e.values[j]);
        for (int i = 0; i < n; ++i) w.at(i, j) = e.vectors.at(i, j) * f;
    }
    return w.mul_adjoint(e.vectors);
}

Operator sigma_x() {
    Operator s(2);
    s.at(0, 1) = 1.0;
    s.at(1, 0) = 1.0;
    return s;
}

Operator sigma_y() {
    Operator s(2);
    s.at(0, 1) = cdouble(0.0, -1.0);
    s.at(1, 0) = cdouble(0.0, 1.0);
    return s;
}

Operator sigma_z() {
    Operator s(2);
    s.at(0, 0) = 1.0;
    s.at(1, 1) = -1.0;
    return s;
}

Operator identity2() { return Operator::identity(2); }

}  // namespace qsense
