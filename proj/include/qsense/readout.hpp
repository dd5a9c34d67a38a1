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
#include <optional>

#include "qsense/evolution.hpp"
#include "qsense/quantum_state.hpp"

// Bell-basis measurement pipeline and readout error models.

namespace qsense {

/// State-preparation-and-measurement error model: nuclear polarization P
/// (population convention) plus the linear leakage rates of the optical
/// readout sequence.
struct SpamModel {
    double polarization = 1.0;
    double zeta = 0.0;
    double gamma = 0.0;
    double eta = 0.0;

    /// Throws InvalidRate unless 0 <= P <= 1, rates >= 0, zeta <= 1 and
    /// 2*gamma + 2*eta <= 1.
    void validate() const;
};

/// The three optically measured populations, plus the inferred remainder p4
/// which exists only before leakage is applied.
struct MeasuredSignals {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    std::optional<double> p4;

    std::array<double, 3> three() const { return {p1, p2, p3}; }
};

/// Applies rotation_gate(r), then the fixed disentangler, then reads the
/// populations; returns pre-leakage signals (p4 populated).
MeasuredSignals measure_bell(const QuantumState& state, const RotationAngles& r);

/// Linear leakage map of the three-readout sequence:
///   p1' = p1, p2' = (1-zeta) p2 + eta p3, p3' = (1 - 2 gamma - 2 eta) p3.
/// The remainder p4 is not observable afterwards and is cleared.
MeasuredSignals spam_apply(const MeasuredSignals& signals, const SpamModel& model);

/// Symmetric misclassification channel on the four outcomes:
///   q_j = (1 - 4 eps/3) p_j + eps/3,
/// which preserves normalization exactly. Throws InvalidRate unless
/// 0 <= eps < 1.
std::array<double, 4> confusion_apply(const std::array<double, 4>& p, double epsilon);

}  // namespace qsense
