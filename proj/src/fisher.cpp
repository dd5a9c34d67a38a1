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

#include "qsense/fisher.hpp"

#include <cmath>
#include <limits>

#include "qsense/readout.hpp"

namespace qsense {

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
    Mat3 r;
    r.at(0, 0) = a;
    r.at(1, 1) = b;
    r.at(2, 2) = c;
    return r;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
}

double Mat3::trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

Mat3 Mat3::inverse() const {
    const auto& a = *this;
    Mat3 r;
    r.at(0, 0) = a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1);
    r.at(0, 1) = a.at(0, 2) * a.at(2, 1) - a.at(0, 1) * a.at(2, 2);
    r.at(0, 2) = a.at(0, 1) * a.at(1, 2) - a.at(0, 2) * a.at(1, 1);
    r.at(1, 0) = a.at(1, 2) * a.at(2, 0) - a.at(1, 0) * a.at(2, 2);
    r.at(1, 1) = a.at(0, 0) * a.at(2, 2) - a.at(0, 2) * a.at(2, 0);
    r.at(1, 2) = a.at(0, 2) * a.at(1, 0) - a.at(0, 0) * a.at(1, 2);
    r.at(2, 0) = a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0);
    r.at(2, 1) = a.at(0, 1) * a.at(2, 0) - a.at(0, 0) * a.at(2, 1);
    r.at(2, 2) = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    const double det =
        a.at(0, 0) * r.at(0, 0) + a.at(0, 1) * r.at(1, 0) + a.at(0, 2) * r.at(2, 0);
    return r * (1.0 / det);
}

namespace {

// Eigenvalues of a real symmetric 3x3, reusing the complex Hermitian solver
// through a dim-3 Operator.
std::array<double, 3> sym3_eigenvalues(const Mat3& s) {
    Operator h(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h.at(i, j) = 0.5 * (s.at(i, j) + s.at(j, i));
    EigResult e = eig_hermitian(h);
    return {e.values[0], e.values[1], e.values[2]};
}

}  // namespace

double Mat3::condition_number() const {
    const Mat3 gram = transpose() * (*this);
    const auto ev = sym3_eigenvalues(gram);
    const double lo = std::sqrt(std::max(0.0, ev[0]));
    const double hi = std::sqrt(std::max(0.0, ev[2]));
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

std::array<double, 3> Mat3::symmetric_eigenvalues() const { return sym3_eigenvalues(*this); }

double Mat3::max_abs_diff(const Mat3& o) const {
    double mx = 0.0;
    for (int i = 0; i < 9; ++i) mx = std::max(mx, std::abs(m[i] - o.m[i]));
    return mx;
}

NoiseSpec NoiseSpec::quantum_projection(int n) {
    NoiseSpec s;
    s.kind = Kind::QuantumProjection;
    s.n = n;
    return s;
}

NoiseSpec NoiseSpec::single_shot(int n, double epsilon) {
    NoiseSpec s;
    s.kind = Kind::SingleShot;
    s.n = n;
    s.epsilon = epsilon;
    return s;
}

NoiseSpec NoiseSpec::averaged(double sigma) {
    NoiseSpec s;
    s.kind = Kind::Averaged;
    s.sigma = sigma;
    return s;
}

namespace {

std::array<double, 3> fd_steps(const std::array<double, 3>& theta, double step) {
    return {step * std::max(1.0, std::abs(theta[0])), step * std::max(1.0, std::abs(theta[1])),
            step * std::max(1.0, std::abs(theta[2]))};
}

Mat3 symmetrized(const Mat3& a) { return (a + a.transpose()) * 0.5; }

Mat3 multinomial_cov3(const std::array<double, 3>& p, int n) {
    Mat3 s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s.at(i, j) = (i == j ? p[i] * (1.0 - p[i]) : -p[i] * p[j]) / n;
    return s;
}

std::array<double, 4> four_outcomes(const std::vector<double>& p) {
    if (p.size() == 4) return {p[0], p[1], p[2], p[3]};
    if (p.size() == 3) return {p[0], p[1], p[2], 1.0 - p[0] - p[1] - p[2]};
    throw InvalidProbability("expected 3 or 4 outcome probabilities");
}

}  // namespace

Mat3 qfim_numeric(const StateFn& state_fn, const std::array<double, 3>& theta, double step) {
    if (!(step > 0.0)) throw Error("finite-difference step must be positive");
    const auto h = fd_steps(theta, step);

    const QuantumState rho0 = state_fn(theta);
    const EigResult eig = eig_hermitian(rho0.rho);

    // Parameter derivatives of rho, rotated into the eigenbasis.
    std::array<Operator, 3> d;
    for (int j = 0; j < 3; ++j) {
        auto tp = theta, tm = theta;
        tp[j] += h[j];
        tm[j] -= h[j];
        const Operator diff = state_fn(tp).rho - state_fn(tm).rho;
        const Operator scaled = diff * cdouble(0.5 / h[j], 0.0);
        d[j] = (eig.vectors.adjoint() * scaled) * eig.vectors;
    }

    Mat3 qfi;
    bool any_pair = false;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double denom = eig.values[a] + eig.values[b];
            if (denom <= kSupportTol) continue;
            any_pair = true;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    qfi.at(i, j) +=
                        2.0 * (d[i].at(a, b) * d[j].at(b, a)).real() / denom;
        }
    }
    if (!any_pair) throw DegenerateState("no eigenvalue pair above the support threshold");
    return symmetrized(qfi);
}

CfimResult cfim(const ProbsFn& probs_fn, const std::array<double, 3>& theta, double step) {
    if (!(step > 0.0)) throw Error("finite-difference step must be positive");
    const auto h = fd_steps(theta, step);

    const std::vector<double> p0 = probs_fn(theta);
    const int k = static_cast<int>(p0.size());
    std::vector<std::array<double, 3>> grad(k);
    for (int j = 0; j < 3; ++j) {
        auto tp = theta, tm = theta;
        tp[j] += h[j];
        tm[j] -= h[j];
        const auto pp = probs_fn(tp);
        const auto pm = probs_fn(tm);
        for (int o = 0; o < k; ++o) grad[o][j] = (pp[o] - pm[o]) / (2.0 * h[j]);
    }

    CfimResult res;
    for (int o = 0; o < k; ++o) {
        if (p0[o] <= kSupportTol) {
            ++res.skipped_outcomes;
            continue;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) res.fim.at(i, j) += grad[o][i] * grad[o][j] / p0[o];
    }
    return res;
}

Mat3 jacobian_fd(const SignalsFn& f, const std::array<double, 3>& theta, double step) {
    if (!(step > 0.0)) throw Error("finite-difference step must be positive");
    const auto h = fd_steps(theta, step);
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
        auto tp = theta, tm = theta;
        tp[j] += h[j];
        tm[j] -= h[j];
        const auto fp = f(tp);
        const auto fm = f(tm);
        for (int i = 0; i < 3; ++i) jac.at(i, j) = (fp[i] - fm[i]) / (2.0 * h[j]);
    }
    return jac;
}

Mat3 noise_covariance(const std::vector<double>& p, const NoiseSpec& spec) {
    if (spec.n < 1) throw InvalidProbability("shot count must be >= 1");
    const auto p4 = four_outcomes(p);
    for (double v : p4)
        if (!(v > -1e-9 && v < 1.0 + 1e-9)) throw InvalidProbability("probability outside [0, 1]");

    switch (spec.kind) {
        case NoiseSpec::Kind::QuantumProjection:
            return multinomial_cov3({p4[0], p4[1], p4[2]}, spec.n);
        case NoiseSpec::Kind::SingleShot: {
            if (!(spec.epsilon >= 0.0 && spec.epsilon < 1.0))
                throw InvalidRate("epsilon outside [0, 1)");
            const auto q = confusion_apply(p4, spec.epsilon);
            return multinomial_cov3({q[0], q[1], q[2]}, spec.n);
        }
        case NoiseSpec::Kind::Averaged: {
            if (!(spec.sigma > 0.0)) throw InvalidProbability("sigma must be positive");
            Mat3 s = Mat3::identity() * (spec.sigma * spec.sigma);
            if (spec.include_projection_term)
                s = s + multinomial_cov3({p4[0], p4[1], p4[2]}, spec.n);
            return s;
        }
    }
    throw Error("unreachable noise kind");
}

Mat3 propagate_errors(const Mat3& jacobian, const Mat3& sigma_p) {
    const double cond = jacobian.condition_number();
    if (!(cond < kConditionBound))
        throw SingularJacobian(cond, "signal Jacobian is numerically singular");
    const Mat3 jinv = jacobian.inverse();
    return symmetrized(jinv * sigma_p * jinv.transpose());
}

double figure_of_merit(const Mat3& sigma_theta, const VectorField& f) {
    const double b2 = f.b * f.b;
    const double sa = std::sin(f.alpha);
    return sigma_theta.at(0, 0) + b2 * sigma_theta.at(1, 1) +
           b2 * sa * sa * sigma_theta.at(2, 2);
}

double mixed_probe_scalar_qfi(double p_bloch, const VectorField& f, double t,
                              WeightKind weight) {
    if (std::abs(p_bloch) > 1.0) throw InvalidRate("|P_bloch| exceeds 1");
    const double t2 = t * t;
    if (weight == WeightKind::Adapted) return t2 * (2.0 + p_bloch * p_bloch);
    const double sa = std::sin(f.alpha), cb = std::cos(f.beta);
    return t2 * (1.0 - (1.0 - p_bloch * p_bloch) * sa * sa * cb * cb);
}

}  // namespace qsense
