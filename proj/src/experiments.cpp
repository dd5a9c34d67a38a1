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

#include "qsense/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qsense {

void Scenario::validate() const {
    if (!(sequence.dwell > 0.0)) throw ConfigError("dwell time must be positive");
    if (sequence.n_loops < 0) throw ConfigError("loop count must be >= 0");
    if (spam && model == Model::IdealVectorField)
        throw ConfigError("SPAM model is only valid with the NV drive model");
    if (!(probe.polarization_population >= 0.0 && probe.polarization_population <= 1.0))
        throw ConfigError("probe polarization outside [0, 1]");
    if (spam) spam->validate();
}

namespace {

SequenceSpec effective_sequence(const Scenario& s, int n_loops) {
    SequenceSpec seq = s.sequence;
    seq.n_loops = n_loops;
    if (s.model == Scenario::Model::IdealVectorField) {
        // Plain vector-field dynamics: no hyperfine coupling, no frame factor.
        seq.hyperfine = 0.0;
        seq.frame_change = false;
    }
    return seq;
}

MeasuredSignals pipeline_signals(const Scenario& s, const DriveParams& theta, int n_loops) {
    const SequenceSpec seq = effective_sequence(s, n_loops);
    const Operator loop = sensing_loop_unitary(theta, seq);
    const QuantumState evolved = apply_unitary(prepare_probe(s.probe), loop);
    MeasuredSignals ms = measure_bell(evolved, seq.rotation);
    if (s.spam) ms = spam_apply(ms, *s.spam);
    return ms;
}

std::array<double, 3> target_theta(const Scenario& s) {
    return {s.target.omega, s.target.delta, s.target.phi};
}

}  // namespace

std::array<double, 3> scenario_signals(const Scenario& s, const DriveParams& theta,
                                       int n_loops) {
    return pipeline_signals(s, theta, n_loops).three();
}

std::array<double, 4> scenario_probabilities(const Scenario& s, const DriveParams& theta,
                                             int n_loops) {
    Scenario bare = s;
    bare.spam.reset();
    const MeasuredSignals ms = pipeline_signals(bare, theta, n_loops);
    return {ms.p1, ms.p2, ms.p3, ms.p4.value()};
}

std::vector<SweepRow> sweep_signal(const Scenario& s, TargetAxis axis,
                                   const std::vector<double>& grid) {
    s.validate();
    if (grid.empty()) throw InvalidPoints("sweep grid is empty");
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double v : grid) {
        DriveParams theta = s.target;
        switch (axis) {
            case TargetAxis::Omega: theta.omega = v; break;
            case TargetAxis::Delta: theta.delta = v; break;
            case TargetAxis::Phi: theta.phi = v; break;
        }
        rows.push_back({v, scenario_signals(s, theta, s.sequence.n_loops)});
    }
    return rows;
}

std::vector<SensitivityRow> sensitivity_vs_n(const Scenario& s,
                                             const std::vector<int>& n_values) {
    s.validate();
    if (n_values.empty()) throw InvalidPoints("no loop counts given");
    std::vector<SensitivityRow> rows;
    rows.reserve(n_values.size());
    const auto theta0 = target_theta(s);
    for (int n : n_values) {
        if (n < 1) throw InvalidPoints("loop counts must be >= 1");
        const SignalsFn f = [&s, n](const std::array<double, 3>& th) {
            return scenario_signals(s, DriveParams{th[0], th[1], th[2]}, n);
        };
        const Mat3 jac = jacobian_fd(f, theta0, kDefaultFdStep);

        std::vector<double> p;
        if (s.spam) {
            const auto sig = scenario_signals(s, s.target, n);
            p.assign(sig.begin(), sig.end());
        } else {
            const auto probs = scenario_probabilities(s, s.target, n);
            p.assign(probs.begin(), probs.end());
        }
        const Mat3 cov_p = noise_covariance(p, s.noise);
        const Mat3 cov_theta = propagate_errors(jac, cov_p);
        rows.push_back({n,
                        {std::sqrt(cov_theta.at(0, 0)), std::sqrt(cov_theta.at(1, 1)),
                         std::sqrt(cov_theta.at(2, 2))}});
    }
    return rows;
}

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw InvalidPoints("power-law fit needs at least 3 points");
    for (const auto& [n, d] : points)
        if (!(n > 0.0) || !(d > 0.0))
            throw InvalidPoints("power-law fit needs positive coordinates");

    const int k = static_cast<int>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [n, d] : points) {
        sx += std::log(n);
        sy += std::log(d);
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (const auto& [n, d] : points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(d) - my);
    }
    if (sxx == 0.0) throw InvalidPoints("all abscissae coincide");
    const double slope = sxy / sxx;

    double ssr = 0;
    for (const auto& [n, d] : points) {
        const double r = (std::log(d) - my) - slope * (std::log(n) - mx);
        ssr += r * r;
    }
    ScalingFit fit;
    fit.exponent = -slope;
    fit.stderr_ = (k > 2) ? std::sqrt(ssr / (k - 2) / sxx) : 0.0;
    fit.points = points;
    return fit;
}

namespace {

std::array<double, 4> map_probabilities(const std::array<double, 3>& cart, double t_total,
                                        const std::optional<RotationAngles>& rotation) {
    const double b = std::sqrt(cart[0] * cart[0] + cart[1] * cart[1] + cart[2] * cart[2]);
    VectorField f;
    if (b > 0.0) {
        f = {b, std::acos(std::clamp(cart[2] / b, -1.0, 1.0)), std::atan2(cart[1], cart[0])};
    }
    if (rotation) return rotated_bell_probabilities(f, t_total, *rotation);
    return ideal_bell_probabilities(f, t_total);
}

double cartesian_fom(const std::array<double, 3>& cart, double t_total,
                     const std::optional<RotationAngles>& rotation, const NoiseSpec& noise,
                     double fd_step) {
    const SignalsFn probs3 = [&](const std::array<double, 3>& th) {
        const auto p = map_probabilities(th, t_total, rotation);
        return std::array<double, 3>{p[0], p[1], p[2]};
    };
    const Mat3 jac = jacobian_fd(probs3, cart, fd_step);
    const auto p0 = map_probabilities(cart, t_total, rotation);
    const Mat3 cov_p = noise_covariance(std::vector<double>(p0.begin(), p0.end()), noise);
    const Mat3 cov = propagate_errors(jac, cov_p);
    return cov.trace();
}

}  // namespace

std::vector<MapPoint> sensitivity_map(const NoiseSpec& noise,
                                      const std::optional<RotationAngles>& rotation,
                                      const std::vector<double>& b_grid,
                                      const std::vector<double>& t_grid, double alpha,
                                      double beta) {
    if (b_grid.empty() || t_grid.empty()) throw InvalidPoints("empty map grid");
    std::vector<MapPoint> out;
    out.reserve(b_grid.size() * t_grid.size());
    const double nx = std::sin(alpha) * std::cos(beta);
    const double ny = std::sin(alpha) * std::sin(beta);
    const double nz = std::cos(alpha);
    for (double b : b_grid) {
        for (double t : t_grid) {
            if (!(t > 0.0)) throw InvalidPoints("map times must be positive");
            const std::array<double, 3> cart{b * nx, b * ny, b * nz};
            double fom;
            try {
                fom = cartesian_fom(cart, t, rotation, noise, kDefaultFdStep);
            } catch (const SingularJacobian&) {
                fom = std::numeric_limits<double>::infinity();
            }
            out.push_back({b, t, fom});
        }
    }
    return out;
}

double zero_field_rotated_objective(const RotationAngles& r, double sigma0, double n,
                                    double t_total) {
    const SignalsFn probs3 = [&](const std::array<double, 3>& th) {
        const auto p = map_probabilities(th, t_total, r);
        return std::array<double, 3>{p[0], p[1], p[2]};
    };
    const double step = 1e-4 / std::max(1.0, t_total);
    const Mat3 jac = jacobian_fd(probs3, {0.0, 0.0, 0.0}, step);
    const Mat3 cov = propagate_errors(jac, Mat3::identity() * (sigma0 * sigma0 / n));
    return cov.trace();
}

namespace {

struct SimplexResult {
    std::array<double, 3> x;
    double fx;
    bool converged;
};

// Nelder-Mead on three parameters with standard coefficients.
template <typename F>
SimplexResult nelder_mead(const F& f, const std::array<double, 3>& x0, double scale,
                          int max_iter, double tol) {
    struct Vertex {
        std::array<double, 3> x;
        double fx;
    };
    std::array<Vertex, 4> v;
    v[0] = {x0, f(x0)};
    for (int j = 0; j < 3; ++j) {
        auto x = x0;
        x[j] += scale;
        v[j + 1] = {x, f(x)};
    }

    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) {
            return a.fx < b.fx;
        });
        const double spread = std::abs(v[3].fx - v[0].fx) /
                              (std::abs(v[0].fx) + 1e-300);
        if (spread < tol) {
            converged = true;
            break;
        }

        std::array<double, 3> centroid{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) centroid[j] += v[i].x[j] / 3.0;

        auto blend = [&](double coef) {
            std::array<double, 3> x;
            for (int j = 0; j < 3; ++j) x[j] = centroid[j] + coef * (v[3].x[j] - centroid[j]);
            return x;
        };

        const auto xr = blend(-1.0);
        const double fr = f(xr);
        if (fr < v[0].fx) {
            const auto xe = blend(-2.0);
            const double fe = f(xe);
            v[3] = (fe < fr) ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < v[2].fx) {
            v[3] = {xr, fr};
        } else {
            const auto xc = blend(fr < v[3].fx ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, v[3].fx)) {
                v[3] = {xc, fc};
            } else {
                for (int i = 1; i < 4; ++i) {  // shrink toward the best vertex
                    for (int j = 0; j < 3; ++j) v[i].x[j] = 0.5 * (v[i].x[j] + v[0].x[j]);
                    v[i].fx = f(v[i].x);
                }
            }
        }
    }
    std::sort(v.begin(), v.end(),
              [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
    return {v[0].x, v[0].fx, converged};
}

}  // namespace

RotationOptimum optimize_rotation(double sigma0, int n, double t_total, int starts,
                                  std::uint64_t seed) {
    if (starts < 1) throw InvalidPoints("need at least one start");
    const auto objective = [&](const std::array<double, 3>& x) {
        return zero_field_rotated_objective({x[0], x[1], x[2]}, sigma0, n, t_total);
    };

    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    bool any_converged = false;
    RotationOptimum best{RotationAngles{}, std::numeric_limits<double>::infinity()};
    for (int k = 0; k < starts; ++k) {
        std::array<double, 3> x0;
        if (k == 0) {
            const auto ur = RotationAngles::uniform_readout();
            x0 = {ur.a, ur.b, ur.c};
        } else {
            x0 = {uniform(0.2, M_PI - 0.2), uniform(0.1, 1.47), uniform(0.1, 0.9)};
        }
        SimplexResult r;
        try {
            r = nelder_mead(objective, x0, 0.15, 600, 1e-10);
        } catch (const SingularJacobian&) {
            continue;  // a degenerate simplex vertex; try the next start
        }
        any_converged = any_converged || r.converged;
        if (r.fx < best.value) best = {{r.x[0], r.x[1], r.x[2]}, r.fx};
    }
    if (!any_converged) throw NonConvergence("no simplex restart met the spread tolerance");
    return best;
}

StrategyReport compare_strategies(double sigma0, int n, double t_total,
                                  std::uint64_t seed) {
    if (n < 1) throw InvalidPoints("repetition count must be >= 1");
    if (!(sigma0 > 0.0) || !(t_total > 0.0))
        throw InvalidPoints("sigma0 and T must be positive");
    const double t2 = t_total * t_total;

    StrategyReport r;
    // Each parameter measured separately with n/3 of the repetitions at the
    // single-parameter optimum sigma0^2 / (n' T^2).
    r.sequential_single = 3.0 * sigma0 * sigma0 / ((n / 3.0) * t2);
    r.uniform_rotated =
        zero_field_rotated_objective(RotationAngles::uniform_readout(), sigma0, n, t_total);
    r.optimal_rotated = optimize_rotation(sigma0, n, t_total, 20, seed).value;
    r.projection_simultaneous = 3.0 / (4.0 * n * t2);
    r.projection_sequential = 3.0 / (4.0 * (n / 3.0) * t2);
    return r;
}

std::vector<ProjectionVsShotRow> projection_vs_shot(const Scenario& s,
                                                    const std::vector<int>& n_values) {
    Scenario proj = s;
    proj.noise = NoiseSpec::quantum_projection(s.noise.n);
    Scenario shot = s;
    shot.noise = NoiseSpec::averaged(s.noise.sigma);

    const auto rows_proj = sensitivity_vs_n(proj, n_values);
    const auto rows_shot = sensitivity_vs_n(shot, n_values);

    std::vector<ProjectionVsShotRow> out;
    out.reserve(n_values.size());
    for (size_t i = 0; i < n_values.size(); ++i)
        out.push_back({rows_proj[i].n_loops, rows_proj[i].dtheta, rows_shot[i].dtheta});
    return out;
}

}  // namespace qsense
