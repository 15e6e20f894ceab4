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
 * Truncated oscillator (Fock) space, ladder operators, and gates whose
 * matrix entries are themselves oscillator operators.
 *
 * The qubit lives on the two lowest oscillator levels |0> and |1>. With a
 * truncation d > 2 the ladder operators can move population to levels n >= 2,
 * which leakage_norm() measures.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "pev/error.hpp"
#include "pev/linalg.hpp"

namespace pev {

/// Oscillator truncated to `dim` levels, in units where the defaults are
/// m = omega = hbar = 1.
struct FockSpace {
    std::size_t dim = 2;
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;

    void validate() const {
        if (dim < 2) {
            throw RangeError("Fock truncation must keep at least two levels");
        }
        if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
            throw RangeError("mass, frequency and hbar must be positive");
        }
    }
};

struct LadderOps {
    ComplexMatrix a;
    ComplexMatrix a_dag;
};

/// a(n-1, n) = sqrt(n); a_dag = a^dagger.
inline LadderOps ladder_ops(const FockSpace &space) {
    space.validate();
    ComplexMatrix a(space.dim, space.dim);
    for (std::size_t n = 1; n < space.dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    auto a_dag = dagger(a);
    return {std::move(a), std::move(a_dag)};
}

/// |n> = (a^dagger)^n / sqrt(n!) |0>.
inline ComplexVector fock_state(std::size_t n, const FockSpace &space) {
    space.validate();
    if (n >= space.dim) {
        throw RangeError("Fock level must be below the truncation");
    }
    const auto ops = ladder_ops(space);
    auto v = ComplexVector::basis(space.dim, 0);
    double factorial = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        v = ops.a_dag * v;
        factorial *= static_cast<double>(k);
    }
    v = Complex(1.0 / std::sqrt(factorial)) * v;
    const auto expected = ComplexVector::basis(space.dim, n);
    for (std::size_t k = 0; k < space.dim; ++k) {
        if (std::abs(v[k] - expected[k]) > kDefaultTol) {
            throw InvariantError("ladder construction of |n> drifted from e_n");
        }
    }
    return v;
}

/// Position-space wavefunction of level 0 or 1. Level 1 uses the standard
/// Hermite normalization 1/sqrt(2), so both are unit-normalized.
inline double wavefunction(int n, double x, const FockSpace &space) {
    space.validate();
    if (n != 0 && n != 1) {
        throw RangeError("wavefunction is defined for levels 0 and 1 only");
    }
    const double k = space.mass * space.omega / space.hbar;
    const double ground =
        std::pow(k / std::numbers::pi, 0.25) * std::exp(-k * x * x / 2.0);
    if (n == 0) {
        return ground;
    }
    const double xi = std::sqrt(k) * x;
    const double hermite1 = 2.0 * xi;
    return ground * hermite1 / std::numbers::sqrt2;
}

/// Composite Simpson rule on [lo, hi]; `intervals` is rounded up to even.
template <class F>
double integrate_simpson(F &&f, double lo, double hi, std::size_t intervals) {
    if (intervals < 2) {
        intervals = 2;
    }
    if (intervals % 2 != 0) {
        ++intervals;
    }
    const double h = (hi - lo) / static_cast<double>(intervals);
    double sum = f(lo) + f(hi);
    for (std::size_t i = 1; i < intervals; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
    }
    return sum * h / 3.0;
}

/// Population outside the computational levels {0, 1}.
inline double leakage_norm(const ComplexVector &state, const FockSpace &space) {
    space.validate();
    if (state.dim() != space.dim) {
        throw ShapeError("state dimension differs from the Fock truncation");
    }
    double leak = 0.0;
    for (std::size_t n = 2; n < state.dim(); ++n) {
        leak += std::norm(state[n]);
    }
    return leak;
}

/// Gate whose entries are d x d oscillator operators, times a scalar
/// prefactor.
class SecondQuantizedGate {
  public:
    SecondQuantizedGate(std::size_t block_rows, std::size_t block_cols,
                        std::vector<ComplexMatrix> blocks, Complex prefactor)
        : rows_(block_rows), cols_(block_cols), blocks_(std::move(blocks)),
          prefactor_(prefactor) {
        if (rows_ == 0 || cols_ == 0 || blocks_.size() != rows_ * cols_) {
            throw ShapeError("block grid does not match its dimensions");
        }
        const std::size_t d = blocks_.front().rows();
        for (const auto &b : blocks_) {
            if (b.rows() != d || b.cols() != d) {
                throw ShapeError("all blocks must share the Fock dimension");
            }
        }
    }

    [[nodiscard]] std::size_t block_rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t block_cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t fock_dim() const noexcept {
        return blocks_.front().rows();
    }
    [[nodiscard]] Complex prefactor() const noexcept { return prefactor_; }

    [[nodiscard]] const ComplexMatrix &block(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw ShapeError("block index out of range");
        }
        return blocks_[i * cols_ + j];
    }

    /// Adjoint: daggers every block and transposes the grid.
    [[nodiscard]] SecondQuantizedGate dagger() const {
        std::vector<ComplexMatrix> out;
        out.reserve(blocks_.size());
        for (std::size_t i = 0; i < cols_; ++i) {
            for (std::size_t j = 0; j < rows_; ++j) {
                out.push_back(pev::dagger(block(j, i)));
            }
        }
        return {cols_, rows_, std::move(out), std::conj(prefactor_)};
    }

    /// Dense (rows*d) x (cols*d) matrix, prefactor included.
    [[nodiscard]] ComplexMatrix expand() const {
        const std::size_t d = fock_dim();
        ComplexMatrix out(rows_ * d, cols_ * d);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                const auto &b = block(i, j);
                for (std::size_t m = 0; m < d; ++m) {
                    for (std::size_t n = 0; n < d; ++n) {
                        out(i * d + m, j * d + n) = prefactor_ * b(m, n);
                    }
                }
            }
        }
        return out;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<ComplexMatrix> blocks_;
    Complex prefactor_;
};

/// (1/sqrt2) [[a^dagger, -a^dagger], [a, a]].
inline SecondQuantizedGate sq_hadamard(const FockSpace &space) {
    const auto [a, ad] = ladder_ops(space);
    return {2, 2, {ad, Complex(-1.0) * ad, a, a}, 1.0 / std::numbers::sqrt2};
}

/// Hadamard on the first of two registers with operator entries:
///
///     (1/sqrt2) [[a^dagger, 0, a^dagger, 0],
///                [0, a^dagger, 0, a^dagger],
///                [a, 0, -a, 0],
///                [0, a, 0, -a]]
///
/// The upper-right entries carry a plus sign. With a minus sign there (see
/// sq_hadamard_on_first_as_printed) rows 0 and 2 reduce to proportional
/// scalar rows and the reduced operator is singular.
inline SecondQuantizedGate sq_hadamard_on_first(const FockSpace &space) {
    const auto [a, ad] = ladder_ops(space);
    const ComplexMatrix z(space.dim, space.dim);
    const auto ma = Complex(-1.0) * a;
    return {4,
            4,
            {ad, z, ad, z,   //
             z, ad, z, ad,   //
             a, z, ma, z,    //
             z, a, z, ma},
            1.0 / std::numbers::sqrt2};
}

/// Variant with -a^dagger in the upper-right blocks. Kept to document that
/// it has no invertible scalar reduction.
inline SecondQuantizedGate sq_hadamard_on_first_as_printed(const FockSpace &space) {
    const auto [a, ad] = ladder_ops(space);
    const ComplexMatrix z(space.dim, space.dim);
    const auto ma = Complex(-1.0) * a;
    const auto mad = Complex(-1.0) * ad;
    return {4,
            4,
            {ad, z, mad, z,  //
             z, ad, z, mad,  //
             a, z, ma, z,    //
             z, a, z, ma},
            1.0 / std::numbers::sqrt2};
}

/// Scalar value of an operator block on the qubit levels {0, 1}: the common
/// value of its nonzero matrix elements <i|O|j>, i, j in {0, 1}. For a that
/// is <0|a|1> = 1, for a^dagger <1|a^dagger|0> = 1, for c*1 it is c.
inline Complex qubit_scalar(const ComplexMatrix &block, double tol = kDefaultTol) {
    Complex value{};
    bool found = false;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex v = block(i, j);
            if (std::abs(v) <= tol) {
                continue;
            }
            if (found && std::abs(v - value) > tol) {
                std::ostringstream msg;
                msg << "block has distinct qubit-subspace elements " << value
                    << " and " << v;
                throw ReductionError(msg.str());
            }
            value = v;
            found = true;
        }
    }
    if (!found) {
        for (const auto &v : block.entries()) {
            if (std::abs(v) > tol) {
                throw ReductionError(
                    "block acts only outside the qubit subspace");
            }
        }
    }
    return value;
}

/// Replaces every operator block by its qubit_scalar and applies the
/// prefactor.
inline ComplexMatrix reduce_to_qubit(const SecondQuantizedGate &gate) {
    if (gate.fock_dim() < 2) {
        throw ReductionError("Fock dimension below 2");
    }
    ComplexMatrix out(gate.block_rows(), gate.block_cols());
    for (std::size_t i = 0; i < gate.block_rows(); ++i) {
        for (std::size_t j = 0; j < gate.block_cols(); ++j) {
            out(i, j) = gate.prefactor() * qubit_scalar(gate.block(i, j));
        }
    }
    return out;
}

} // namespace pev
