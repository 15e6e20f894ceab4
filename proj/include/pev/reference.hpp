// Copyright 2026 The PEv Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Published reference values for the noiseless Deutsch pipeline: the oracle
 * operators (at alpha = 0) and the register states after the oracle and
 * after the final Hadamard, indexed by oracle f1..f4.
 */

#pragma once

#include <array>

#include "pev/linalg.hpp"

namespace pev::reference {

/// Oracle operators, integer entries.
inline std::array<ComplexMatrix, 4> oracle_tables() {
    return {ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
            ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}},
            ComplexMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
            ComplexMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
}

/// Register after the oracle.
inline std::array<ComplexMatrix, 4> tau2_tables() {
    const ComplexMatrix same{{1, -1, 1, -1}, {-1, 1, -1, 1}, {1, -1, 1, -1}, {-1, 1, -1, 1}};
    const ComplexMatrix flip{{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}};
    auto s = same;
    auto f = flip;
    s *= Complex(0.25);
    f *= Complex(0.25);
    return {s, f, f, s};
}

/// Register after the final Hadamard on the first line.
inline std::array<ComplexMatrix, 4> tau3_tables() {
    ComplexMatrix zero{{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    ComplexMatrix one{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}};
    zero *= Complex(0.5);
    one *= Complex(0.5);
    return {zero, one, one, zero};
}

} // namespace pev::reference
