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
 * Gate matrices as evolution operators, and the operators of the Deutsch
 * circuit.
 *
 * Two-qubit basis order is |x>|y> with x the first register:
 * |00>, |01>, |10>, |11>.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>

#include "pev/core.hpp"
#include "pev/error.hpp"
#include "pev/linalg.hpp"

namespace pev {

/// A unitary 2^n x 2^n matrix.
class GateMatrix {
  public:
    GateMatrix(ComplexMatrix m, std::size_t qubit_count)
        : m_(std::move(m)), qubits_(qubit_count) {
        if (m_.rows() != (std::size_t{1} << qubits_) || !m_.is_square()) {
            throw GateError("gate dimension is not 2^qubit_count");
        }
        if (!is_unitary(m_)) {
            throw GateError("gate matrix is not unitary");
        }
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }

  private:
    ComplexMatrix m_;
    std::size_t qubits_;
};

/// f: {0,1} -> {0,1}, stored as its truth table.
struct OracleFunction {
    int f0 = 0;
    int f1 = 0;

    [[nodiscard]] int operator()(int x) const { return x == 0 ? f0 : f1; }
    [[nodiscard]] bool is_constant() const noexcept { return f0 == f1; }

    /// "f1".."f4" in the order (0,0), (0,1), (1,0), (1,1).
    [[nodiscard]] std::string name() const {
        return "f" + std::to_string(1 + 2 * f0 + f1);
    }

    static OracleFunction from_name(std::string_view name) {
        if (name == "f1") return {0, 0};
        if (name == "f2") return {0, 1};
        if (name == "f3") return {1, 0};
        if (name == "f4") return {1, 1};
        throw RangeError("unknown oracle " + std::string(name));
    }

    friend bool operator==(const OracleFunction &, const OracleFunction &) =
        default;
};

inline constexpr OracleFunction kAllOracles[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

enum class Classification { constant, balanced };

inline std::string to_string(Classification c) {
    return c == Classification::constant ? "constant" : "balanced";
}

inline ComplexMatrix hadamard_matrix() {
    const double s = 1.0 / std::numbers::sqrt2;
    return ComplexMatrix{{s, s}, {s, -s}};
}

inline ComplexMatrix not_matrix() { return ComplexMatrix{{0, 1}, {1, 0}}; }

/// E = e^{i alpha} G. The phase drops out of every normalized update.
inline PevOperator gate_to_pev(const GateMatrix &g, double alpha = 0.0) {
    return PevOperator::unitary(std::polar(1.0, alpha) * g.matrix());
}

inline PevOperator hadamard_pev(double alpha = 0.0) {
    return gate_to_pev(GateMatrix(hadamard_matrix(), 1), alpha);
}

/// U_f = sum_x |x><x| (x) [delta_{0 f(x)} 1 + delta_{1 f(x)} NOT].
inline PevOperator oracle_pev(const OracleFunction &f, double alpha = 0.0) {
    if ((f.f0 != 0 && f.f0 != 1) || (f.f1 != 0 && f.f1 != 1)) {
        throw RangeError("oracle truth table entries must be bits");
    }
    const auto id = ComplexMatrix::identity(2);
    const auto flip = not_matrix();
    ComplexMatrix u(4, 4);
    for (int x = 0; x < 2; ++x) {
        const auto ket = ComplexVector::basis(2, static_cast<std::size_t>(x));
        const double keep = f(x) == 0 ? 1.0 : 0.0;
        const double swap = f(x) == 1 ? 1.0 : 0.0;
        u += kron(ComplexMatrix::outer(ket, ket), keep * id + swap * flip);
    }
    return gate_to_pev(GateMatrix(std::move(u), 2), alpha);
}

/// e^{i alpha} (H (x) 1): Hadamard on the first register.
inline PevOperator hadamard_on_first(double alpha = 0.0) {
    return gate_to_pev(
        GateMatrix(kron(hadamard_matrix(), ComplexMatrix::identity(2)), 2),
        alpha);
}

/// {|0><0|, |1><1|} on qubit `target` of an n-qubit register, labels 0, 1.
inline MeasurementFamily computational_family(std::size_t target = 0,
                                              std::size_t n_qubits = 1) {
    const auto p0 = ComplexMatrix::outer(ComplexVector::basis(2, 0),
                                         ComplexVector::basis(2, 0));
    const auto p1 = ComplexMatrix::outer(ComplexVector::basis(2, 1),
                                         ComplexVector::basis(2, 1));
    return MeasurementFamily(
        {PevOperator::projector(embed_single_qubit(p0, target, n_qubits),
                                std::nullopt, 0),
         PevOperator::projector(embed_single_qubit(p1, target, n_qubits),
                                std::nullopt, 1)},
        {0, 1});
}

/// Final measurement of the Deutsch circuit: {|0><0| (x) 1, |1><1| (x) 1}.
inline MeasurementFamily measure_first_qubit() {
    return computational_family(0, 2);
}

} // namespace pev
