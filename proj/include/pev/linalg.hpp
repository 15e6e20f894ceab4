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
 * Small dense complex matrices and vectors.
 *
 * Everything in this library works on operators of dimension at most a few
 * tens, so storage is a plain row-major std::vector and all products are the
 * textbook triple loops.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pev/error.hpp"

namespace pev {

using Complex = std::complex<double>;

/// Absolute entry-wise tolerance used when no other tolerance is given.
inline constexpr double kDefaultTol = 1e-12;

class ComplexVector {
  public:
    explicit ComplexVector(std::size_t dim) : entries_(dim) {
        if (dim == 0) {
            throw ShapeError("vector dimension must be at least 1");
        }
    }

    ComplexVector(std::initializer_list<Complex> values)
        : ComplexVector(std::vector<Complex>(values)) {}

    explicit ComplexVector(std::vector<Complex> values)
        : entries_(std::move(values)) {
        if (entries_.empty()) {
            throw ShapeError("vector dimension must be at least 1");
        }
        for (const auto &v : entries_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw ShapeError("vector entries must be finite");
            }
        }
    }

    /// Unit vector e_k of the given dimension.
    static ComplexVector basis(std::size_t dim, std::size_t k) {
        if (k >= dim) {
            throw ShapeError("basis index out of range");
        }
        ComplexVector v(dim);
        v[k] = 1.0;
        return v;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return entries_.size(); }

    Complex &operator[](std::size_t i) { return entries_[i]; }
    const Complex &operator[](std::size_t i) const { return entries_[i]; }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &v : entries_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    [[nodiscard]] ComplexVector normalized() const {
        const double n = norm();
        if (n == 0.0) {
            throw ShapeError("cannot normalize the zero vector");
        }
        ComplexVector out(*this);
        for (auto &v : out.entries_) {
            v /= n;
        }
        return out;
    }

    friend ComplexVector operator*(Complex s, ComplexVector v) {
        for (auto &x : v.entries_) {
            x *= s;
        }
        return v;
    }

    friend ComplexVector operator+(ComplexVector a, const ComplexVector &b) {
        if (a.dim() != b.dim()) {
            throw ShapeError("vector dimension mismatch in addition");
        }
        for (std::size_t i = 0; i < a.dim(); ++i) {
            a.entries_[i] += b.entries_[i];
        }
        return a;
    }

    friend bool operator==(const ComplexVector &, const ComplexVector &) =
        default;

  private:
    std::vector<Complex> entries_;
};

class ComplexMatrix {
  public:
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw ShapeError("matrix dimensions must be at least 1x1");
        }
    }

    /// Row-wise literal, e.g. `{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        if (rows_ == 0 || cols_ == 0) {
            throw ShapeError("matrix dimensions must be at least 1x1");
        }
        entries_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw ShapeError("ragged matrix literal");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<Complex> row_major)
        : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
        if (rows == 0 || cols == 0) {
            throw ShapeError("matrix dimensions must be at least 1x1");
        }
        if (entries_.size() != rows * cols) {
            throw ShapeError("entry count does not match rows x cols");
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    /// |v><w|
    static ComplexMatrix outer(const ComplexVector &v, const ComplexVector &w) {
        ComplexMatrix m(v.dim(), w.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) {
            for (std::size_t j = 0; j < w.dim(); ++j) {
                m(i, j) = v[i] * std::conj(w[j]);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] bool is_finite() const noexcept {
        for (const auto &v : entries_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                return false;
            }
        }
        return true;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o, "addition");
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] += o.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o, "subtraction");
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] -= o.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex s) {
        for (auto &v : entries_) {
            v *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) =
        default;

  private:
    void check_finite() const {
        if (!is_finite()) {
            throw ShapeError("matrix entries must be finite");
        }
    }

    void require_same_shape(const ComplexMatrix &o, const char *what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            std::ostringstream msg;
            msg << "shape mismatch in " << what << ": " << rows_ << "x"
                << cols_ << " vs " << o.rows_ << "x" << o.cols_;
            throw ShapeError(msg.str());
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

/// Kronecker product; result(i*rb + k, j*cb + l) = a(i, j) * b(k, l).
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t rb = b.rows();
    const std::size_t cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < cb; ++l) {
                    out(i * rb + k, j * cb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

inline ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < b.dim(); ++k) {
            out[i * b.dim() + k] = a[i] * b[k];
        }
    }
    return out;
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "matmul shape mismatch: " << a.rows() << "x" << a.cols()
            << " times " << b.rows() << "x" << b.cols();
        throw ShapeError(msg.str());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

inline ComplexVector matvec(const ComplexMatrix &a, const ComplexVector &v) {
    if (a.cols() != v.dim()) {
        throw ShapeError("matvec shape mismatch");
    }
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += a(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

inline ComplexVector operator*(const ComplexMatrix &a, const ComplexVector &v) {
    return matvec(a, v);
}

/// <v|w>, antilinear in the first argument.
inline Complex inner(const ComplexVector &v, const ComplexVector &w) {
    if (v.dim() != w.dim()) {
        throw ShapeError("inner product dimension mismatch");
    }
    Complex s{};
    for (std::size_t i = 0; i < v.dim(); ++i) {
        s += std::conj(v[i]) * w[i];
    }
    return s;
}

inline Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw ShapeError("trace of a non-square matrix");
    }
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s += a(i, i);
    }
    return s;
}

/// Largest entry-wise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("approx_eq requires matrices of the same shape");
    }
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

inline bool approx_eq(const ComplexMatrix &a, const ComplexMatrix &b,
                      double tol = kDefaultTol) {
    return max_abs_diff(a, b) <= tol;
}

inline bool is_hermitian(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!a.is_square()) {
        throw ShapeError("hermiticity test needs a square matrix");
    }
    return approx_eq(a, dagger(a), tol);
}

inline bool is_unitary(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!a.is_square()) {
        throw ShapeError("unitarity test needs a square matrix");
    }
    const auto id = ComplexMatrix::identity(a.rows());
    const auto ad = dagger(a);
    return approx_eq(a * ad, id, tol) && approx_eq(ad * a, id, tol);
}

/// Lifts a single-qubit operator onto qubit `target` of an n-qubit register.
/// Qubit 0 is the leftmost tensor factor (most significant index bit).
inline ComplexMatrix embed_single_qubit(const ComplexMatrix &op,
                                        std::size_t target,
                                        std::size_t n_qubits) {
    if (op.rows() != 2 || op.cols() != 2) {
        throw ShapeError("embed_single_qubit expects a 2x2 operator");
    }
    if (target >= n_qubits) {
        throw ShapeError("target qubit out of range");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        out = kron(out, q == target ? op : ComplexMatrix::identity(2));
    }
    return out;
}

/// Reduced 2x2 state of qubit `target` obtained by tracing out the rest.
inline ComplexMatrix partial_trace_keep(const ComplexMatrix &rho,
                                        std::size_t target,
                                        std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw ShapeError("partial trace: state dimension is not 2^n");
    }
    if (target >= n_qubits) {
        throw ShapeError("partial trace: target qubit out of range");
    }
    const std::size_t shift = n_qubits - 1 - target;
    ComplexMatrix out(2, 2);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const std::size_t rest_i = i & ~(std::size_t{1} << shift);
            const std::size_t rest_j = j & ~(std::size_t{1} << shift);
            if (rest_i != rest_j) {
                continue;
            }
            out((i >> shift) & 1U, (j >> shift) & 1U) += rho(i, j);
        }
    }
    return out;
}

} // namespace pev
