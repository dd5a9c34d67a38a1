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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsense/fisher.hpp"
#include "qsense/readout.hpp"

// Orchestration: signal sweeps, sensitivity scaling, sensitivity landscape
// maps, basis-rotation optimization and strategy comparisons.

namespace qsense {

/// A full simulated experiment: probe, sequence, target drive, optional
/// readout error model and noise model.
struct Scenario {
    enum class Model { IdealVectorField, NvDrive };
    Model model = Model::NvDrive;
    ProbeSpec probe;
    SequenceSpec sequence;
    DriveParams target;
    std::optional<SpamModel> spam;
    NoiseSpec noise;

    /// Throws ConfigError on inconsistent combinations (SPAM on the ideal
    /// model, non-positive dwell, ...).
    void validate() const;
};

enum class TargetAxis { Omega, Delta, Phi };

/// One pipeline evaluation: probe -> N sensing loops at drive `theta` ->
/// basis rotation -> disentangle -> populations -> optional leakage map.
/// Returns the three measured signals. The control settings stay fixed at
/// scenario.sequence.control while theta varies.
std::array<double, 3> scenario_signals(const Scenario& s, const DriveParams& theta,
                                       int n_loops);

/// Pre-leakage outcome probabilities (all four) of the same pipeline.
std::array<double, 4> scenario_probabilities(const Scenario& s, const DriveParams& theta,
                                             int n_loops);

struct SweepRow {
    double value;
    std::array<double, 3> signals;
};

/// Signals as one target parameter sweeps across `grid` (others held at the
/// scenario target). Throws InvalidPoints on an empty grid.
std::vector<SweepRow> sweep_signal(const Scenario& s, TargetAxis axis,
                                   const std::vector<double>& grid);

struct SensitivityRow {
    int n_loops;
    std::array<double, 3> dtheta;  // (dOmega, dDelta, dPhi)
};

/// Per-parameter standard deviations at the scenario operating point for
/// each requested loop count, from the finite-difference Jacobian and the
/// scenario noise model. Propagates SingularJacobian (the P = 1/2 probe).
std::vector<SensitivityRow> sensitivity_vs_n(const Scenario& s,
                                             const std::vector<int>& n_values);

struct ScalingFit {
    double exponent = 0.0;  // m in delta ~ N^-m
    double stderr_ = 0.0;   // standard error of m from the fit residuals
    std::vector<std::pair<double, double>> points;
};

/// Least-squares power-law fit on log-log axes. Throws InvalidPoints unless
/// at least 3 points with positive coordinates are given.
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct MapPoint {
    double b;
    double t;
    double fom;  // +inf where the Jacobian is singular
};

/// Figure-of-merit landscape of the ideal vector-field model over a
/// (B, T) grid at fixed angles, with an optionally rotated measurement
/// basis. Computed in Cartesian field components so the zero-field point is
/// regular whenever the rotation makes it so.
std::vector<MapPoint> sensitivity_map(const NoiseSpec& noise,
                                      const std::optional<RotationAngles>& rotation,
                                      const std::vector<double>& b_grid,
                                      const std::vector<double>& t_grid, double alpha,
                                      double beta);

/// Zero-field figure of merit sigma0^2/n * Tr[J^-1 J^-T] of the rotated
/// ideal pipeline; the objective minimized by optimize_rotation.
double zero_field_rotated_objective(const RotationAngles& r, double sigma0, double n,
                                    double t_total);

struct RotationOptimum {
    RotationAngles angles;
    double value;
};

/// Derivative-free simplex search with seeded restarts over the rotation
/// angles. Throws NonConvergence if no restart reaches the internal
/// tolerance of 1e-10 on the simplex spread.
RotationOptimum optimize_rotation(double sigma0, int n, double t_total, int starts,
                                  std::uint64_t seed);

struct StrategyReport {
    double sequential_single;        // repeated single-parameter estimation
    double uniform_rotated;          // computed from the uniform-readout pipeline
    double optimal_rotated;          // computed by optimize_rotation
    double projection_simultaneous;  // 3/(4 n T^2)
    double projection_sequential;    // 9/(4 n T^2)
};

/// Figure-of-merit comparison of estimation strategies under averaged
/// readout, plus the projection-noise benchmarks.
StrategyReport compare_strategies(double sigma0, int n, double t_total,
                                  std::uint64_t seed = 0);

struct ProjectionVsShotRow {
    int n_loops;
    std::array<double, 3> projection;
    std::array<double, 3> shot;
};

/// sensitivity_vs_n under quantum-projection noise and under averaged
/// readout noise on identical pipelines.
std::vector<ProjectionVsShotRow> projection_vs_shot(const Scenario& s,
                                                    const std::vector<int>& n_values);

}  // namespace qsense
