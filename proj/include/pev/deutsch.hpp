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
 * The Deutsch algorithm as a labeled evolution tau_0 -> tau_4:
 *
 *   tau_0  |0>|1>
 *   tau_1  H on both registers
 *   tau_2  oracle U_f
 *   tau_3  H on the first register
 *   tau_4  measurement of the first register
 */

#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include "pev/core.hpp"
#include "pev/error.hpp"
#include "pev/fock.hpp"
#include "pev/gates.hpp"
#include "pev/linalg.hpp"
#include "pev/random.hpp"

namespace pev::deutsch {

inline constexpr StepLabel kTau0 = 0;
inline constexpr StepLabel kTau1 = 1;
inline constexpr StepLabel kTau2 = 2;
inline constexpr StepLabel kTau3 = 3;
inline constexpr StepLabel kTau4 = 4;

struct AbCoefficients {
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const AbCoefficients &, const AbCoefficients &) =
        default;
};

/// Coefficients of the output register (A|0> + B|1>)(|0> - |1>) / (2 sqrt2).
inline AbCoefficients ab_coefficients(const OracleFunction &f) {
    auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    return {delta(0, f.f0) - delta(1, f.f0) + delta(0, f.f1) - delta(1, f.f1),
            delta(0, f.f0) - delta(1, f.f0) - delta(0, f.f1) + delta(1, f.f1)};
}

/// |01><01|.
inline DensityMatrix initial_state() {
    return DensityMatrix::pure(
        kron(ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0}));
}

/// The two Hadamard-type operators the pipeline needs: a single-qubit
/// Hadamard (applied to both registers at tau_1) and the two-qubit
/// Hadamard-on-first-register (tau_3).
struct HadamardOperators {
    ComplexMatrix single;
    ComplexMatrix on_first;

    static HadamardOperators scalar() {
        return {hadamard_matrix(), hadamard_on_first().matrix()};
    }

    /// Scalar reductions of the operator-valued gates at truncation `space`.
    static HadamardOperators second_quantized(const FockSpace &space = {}) {
        return {reduce_to_qubit(sq_hadamard(space)),
                reduce_to_qubit(sq_hadamard_on_first(space))};
    }
};

struct DeutschRun {
    OracleFunction oracle;
    EvolutionTrace trace;
    AbCoefficients ab;
    OutcomeLabel outcome = 0;
    Classification classification = Classification::constant;
};

inline Classification classify(const DeutschRun &run) {
    return run.outcome == 0 ? Classification::constant
                            : Classification::balanced;
}

/// Runs the circuit for `f`. The tau_4 outcome is drawn from `seed`; for the
/// ideal circuit every seed gives the same outcome.
inline DeutschRun run(const OracleFunction &f,
                      const HadamardOperators &ops = HadamardOperators::scalar(),
                      std::uint64_t seed = 0) {
    DeutschRun result;
    result.oracle = f;
    result.ab = ab_coefficients(f);

    auto rho = initial_state();
    result.trace.push({kTau0, std::nullopt, rho, 1.0});

    const auto both = PevOperator::unitary(kron(ops.single, ops.single), kTau1);
    rho = evolve(rho, both);
    result.trace.push({kTau1, std::nullopt, rho, 1.0});

    rho = evolve(rho, oracle_pev(f).with_tau(kTau2));
    result.trace.push({kTau2, std::nullopt, rho, 1.0});

    rho = evolve(rho, PevOperator::unitary(ops.on_first, kTau3));
    result.trace.push({kTau3, std::nullopt, rho, 1.0});

    RandomStream rng(seed);
    auto measured = apply_family(rho, measure_first_qubit(), rng);
    result.trace.push(
        {kTau4, measured.label, std::move(measured.state), measured.probability});

    result.outcome = measured.label;
    result.classification = classify(result);
    return result;
}

/// The tau_3 state written in terms of (A, B):
///
///   (1/8) [[ |A|^2, -|A|^2,  AB*,  -AB*],
///          [-|A|^2,  |A|^2, -AB*,   AB*],
///          [  BA*,   -BA*,  |B|^2, -|B|^2],
///          [ -BA*,    BA*, -|B|^2,  |B|^2]]
inline DensityMatrix rho_tau3_from_ab(double a, double b) {
    if (a == 0.0 && b == 0.0) {
        throw CoefficientError("A and B cannot both vanish");
    }
    const Complex aa = a * a;
    const Complex bb = b * b;
    const Complex ab = a * b;
    const Complex ba = b * a;
    ComplexMatrix m{{aa, -aa, ab, -ab},
                    {-aa, aa, -ab, ab},
                    {ba, -ba, bb, -bb},
                    {-ba, ba, -bb, bb}};
    m *= Complex(1.0 / 8.0);
    return DensityMatrix::from_matrix(std::move(m));
}

inline DensityMatrix rho_tau3_from_ab(const AbCoefficients &c) {
    return rho_tau3_from_ab(c.a, c.b);
}

} // namespace pev::deutsch
