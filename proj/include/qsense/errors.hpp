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

#include <stdexcept>
#include <string>

namespace qsense {

/// Base class of all qsense errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error("NotHermitian: " + msg) {}
};

struct NotUnitary : Error {
    explicit NotUnitary(const std::string& msg) : Error("NotUnitary: " + msg) {}
};

struct NonpositiveRabi : Error {
    explicit NonpositiveRabi(const std::string& msg) : Error("NonpositiveRabi: " + msg) {}
};

struct DegenerateSplitting : Error {
    explicit DegenerateSplitting(const std::string& msg)
        : Error("DegenerateSplitting: " + msg) {}
};

struct DegenerateState : Error {
    explicit DegenerateState(const std::string& msg) : Error("DegenerateState: " + msg) {}
};

/// Thrown when a Jacobian is numerically singular; carries the condition number.
struct SingularJacobian : Error {
    double condition_number;
    explicit SingularJacobian(double cond, const std::string& msg)
        : Error("SingularJacobian: " + msg + " (condition number " + std::to_string(cond) + ")"),
          condition_number(cond) {}
};

struct InvalidRate : Error {
    explicit InvalidRate(const std::string& msg) : Error("InvalidRate: " + msg) {}
};

struct InvalidProbability : Error {
    explicit InvalidProbability(const std::string& msg)
        : Error("InvalidProbability: " + msg) {}
};

struct InvalidPoints : Error {
    explicit InvalidPoints(const std::string& msg) : Error("InvalidPoints: " + msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error("NonConvergence: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("IoError: " + msg) {}
};

struct InvalidState : Error {
    explicit InvalidState(const std::string& msg) : Error("InvalidState: " + msg) {}
};

}  // namespace qsense
