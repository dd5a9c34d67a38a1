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

#include "qsense/readout.hpp"

namespace qsense {

void SpamModel::validate() const {
    if (!(polarization >= 0.0 && polarization <= 1.0))
        throw InvalidRate("polarization outside [0, 1]");
    if (zeta < 0.0 || zeta > 1.0) throw InvalidRate("zeta outside [0, 1]");
    if (gamma < 0.0 || eta < 0.0) throw InvalidRate("negative leakage rate");
    if (2.0 * gamma + 2.0 * eta > 1.0)
        throw InvalidRate("2*gamma + 2*eta exceeds 1; p3 channel would go negative");
}

MeasuredSignals measure_bell(const QuantumState& state, const RotationAngles& r) {
    const QuantumState rotated = apply_unitary(state, rotation_gate(r));
    const QuantumState mapped = apply_unitary(rotated, disentangler());
    const auto pops = populations(mapped);
    MeasuredSignals s;
    s.p1 = pops[0];
    s.p2 = pops[1];
    s.p3 = pops[2];
    s.p4 = pops[3];
    return s;
}

MeasuredSignals spam_apply(const MeasuredSignals& signals, const SpamModel& model) {
    model.validate();
    MeasuredSignals out;
    out.p1 = signals.p1;
    out.p2 = (1.0 - model.zeta) * signals.p2 + model.eta * signals.p3;
    out.p3 = (1.0 - 2.0 * model.gamma - 2.0 * model.eta) * signals.p3;
    out.p4 = std::nullopt;
    return out;
}

std::array<double, 4> confusion_apply(const std::array<double, 4>& p, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidRate("epsilon outside [0, 1)");
    std::array<double, 4> q;
    const double keep = 1.0 - 4.0 * epsilon / 3.0;
    for (int j = 0; j < 4; ++j) q[j] = keep * p[j] + epsilon / 3.0;
    return q;
}

}  // namespace qsense
