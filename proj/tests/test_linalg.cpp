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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pev/linalg.hpp"

namespace pev {
namespace {

const double kS = 1.0 / std::numbers::sqrt2;

ComplexMatrix hadamard() { return ComplexMatrix{{kS, kS}, {kS, -kS}}; }

ComplexMatrix random_int_matrix(std::mt19937 &gen, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> d(-3, 3);
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = Complex(d(gen), d(gen));
        }
    }
    return m;
}

ComplexMatrix random_matrix(std::mt19937 &gen, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = Complex(d(gen), d(gen));
        }
    }
    return m;
}

TEST(ComplexMatrix, RejectsEmptyAndRaggedShapes) {
    EXPECT_THROW(ComplexMatrix(0, 2), ShapeError);
    EXPECT_THROW(ComplexMatrix(2, 0), ShapeError);
    EXPECT_THROW((ComplexMatrix{{1, 2}, {3}}), ShapeError);
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
}

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
    EXPECT_THROW((ComplexMatrix{{std::nan(""), 0}}), Error);
    EXPECT_THROW((ComplexVector{Complex(INFINITY, 0)}), Error);
    EXPECT_THROW(ComplexVector(0), ShapeError);
}

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
              ComplexMatrix::identity(4));
}

TEST(Kron, HadamardOnFirstRegister) {
    const ComplexMatrix want{{kS, 0, kS, 0}, {0, kS, 0, kS}, {kS, 0, -kS, 0}, {0, kS, 0, -kS}};
    EXPECT_TRUE(approx_eq(kron(hadamard(), ComplexMatrix::identity(2)), want, 0.0));
}

TEST(Kron, ScalarFactorScales) {
    const ComplexMatrix x{{0, 1}, {1, 0}};
    EXPECT_EQ(kron(x, ComplexMatrix{{2}}), (ComplexMatrix{{0, 2}, {2, 0}}));
}

TEST(Kron, IndexFormula) {
    std::mt19937 gen(1);
    const auto a = random_int_matrix(gen, 2, 3);
    const auto b = random_int_matrix(gen, 3, 2);
    const auto k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(Kron, VectorOrderingIsBigEndian) {
    const auto v = kron(ComplexVector{1, 0}, ComplexVector{0, 1});
    EXPECT_EQ(v, (ComplexVector{0, 1, 0, 0}));
}

TEST(Dagger, Examples) {
    const Complex i(0, 1);
    EXPECT_EQ(dagger(ComplexMatrix{{i, 0}, {0, 1}}), (ComplexMatrix{{-i, 0}, {0, 1}}));
    EXPECT_EQ(dagger(hadamard()), hadamard());
    EXPECT_EQ(dagger(ComplexMatrix{{0, 1}, {0, 0}}), (ComplexMatrix{{0, 0}, {1, 0}}));
}

TEST(Matmul, Examples) {
    std::mt19937 gen(2);
    const auto m = random_matrix(gen, 2);
    EXPECT_EQ(matmul(ComplexMatrix::identity(2), m), m);
    EXPECT_TRUE(approx_eq(matmul(hadamard(), hadamard()), ComplexMatrix::identity(2), 1e-15));
    EXPECT_EQ(matmul(ComplexMatrix{{0, 1}, {1, 0}}, ComplexMatrix{{1}, {0}}),
              (ComplexMatrix{{0}, {1}}));
}

TEST(Matmul, ShapeMismatchThrows) {
    EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
    EXPECT_THROW(matvec(ComplexMatrix(2, 3), ComplexVector(2)), ShapeError);
}

TEST(Trace, Examples) {
    EXPECT_EQ(trace(ComplexMatrix::identity(4)), Complex(4));
    EXPECT_EQ(trace(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}), Complex(1));
    EXPECT_EQ(trace(ComplexMatrix{{0, 5}, {7, 0}}), Complex(0));
    EXPECT_THROW(trace(ComplexMatrix(2, 3)), ShapeError);
}

TEST(ApproxEq, Examples) {
    std::mt19937 gen(3);
    const auto m = random_matrix(gen, 3);
    EXPECT_TRUE(approx_eq(m, m, 0.0));
    EXPECT_TRUE(approx_eq(ComplexMatrix::identity(2),
                          ComplexMatrix::identity(2) + ComplexMatrix{{1e-9, 0}, {0, 0}}, 1e-8));
    EXPECT_FALSE(approx_eq(ComplexMatrix{{1}}, ComplexMatrix{{1.1}}, 1e-3));
    EXPECT_THROW(approx_eq(ComplexMatrix(2, 2), ComplexMatrix(2, 3), 1.0), ShapeError);
}

TEST(IsUnitary, Examples) {
    EXPECT_TRUE(is_unitary(hadamard(), 1e-12));
    EXPECT_FALSE(is_unitary(ComplexMatrix{{1, 0}, {0, 0}}, 1e-12));
    for (double alpha : {0.0, 0.3, 1.0, 2.5, std::numbers::pi}) {
        EXPECT_TRUE(is_unitary(std::polar(1.0, alpha) * ComplexMatrix::identity(2), 1e-12));
    }
    EXPECT_THROW(is_unitary(ComplexMatrix(2, 3)), ShapeError);
}

TEST(LinalgProperties, KronIsAssociative) {
    std::mt19937 gen(4);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_int_matrix(gen, 1 + t % 2, 2);
        const auto b = random_int_matrix(gen, 2, 1 + t % 3);
        const auto c = random_int_matrix(gen, 2, 2);
        EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
    }
}

TEST(LinalgProperties, DaggerIsAnInvolutionAndReversesProducts) {
    std::mt19937 gen(5);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_int_matrix(gen, 2, 3);
        const auto b = random_int_matrix(gen, 3, 2);
        EXPECT_EQ(dagger(dagger(a)), a);
        EXPECT_EQ(dagger(matmul(a, b)), matmul(dagger(b), dagger(a)));
    }
}

TEST(LinalgProperties, TraceIsCyclic) {
    std::mt19937 gen(6);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_matrix(gen, 4);
        const auto b = random_matrix(gen, 4);
        EXPECT_LE(std::abs(trace(a * b) - trace(b * a)), 1e-12);
    }
}

TEST(LinalgProperties, KronMixedProduct) {
    std::mt19937 gen(7);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_matrix(gen, 2);
        const auto b = random_matrix(gen, 2);
        const auto c = random_matrix(gen, 2);
        const auto d = random_matrix(gen, 2);
        EXPECT_TRUE(approx_eq(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12));
    }
}

TEST(EmbedSingleQubit, MatchesKron) {
    const auto h = hadamard();
    const auto id = ComplexMatrix::identity(2);
    EXPECT_EQ(embed_single_qubit(h, 0, 2), kron(h, id));
    EXPECT_EQ(embed_single_qubit(h, 1, 2), kron(id, h));
    EXPECT_EQ(embed_single_qubit(h, 1, 3), kron(kron(id, h), id));
    EXPECT_THROW(embed_single_qubit(h, 2, 2), ShapeError);
}

TEST(PartialTrace, ProductStateFactors) {
    const ComplexVector x{0.6, Complex(0, 0.8)};
    const ComplexVector y{kS, -kS};
    const auto rho = ComplexMatrix::outer(kron(x, y), kron(x, y));
    EXPECT_TRUE(approx_eq(partial_trace_keep(rho, 0, 2), ComplexMatrix::outer(x, x), 1e-15));
    EXPECT_TRUE(approx_eq(partial_trace_keep(rho, 1, 2), ComplexMatrix::outer(y, y), 1e-15));
}

TEST(ComplexVector, NormAndInner) {
    const ComplexVector v{3, Complex(0, 4)};
    EXPECT_DOUBLE_EQ(v.norm(), 5.0);
    EXPECT_NEAR(v.normalized().norm(), 1.0, 1e-15);
    EXPECT_EQ(inner(v, v), Complex(25));
    EXPECT_THROW(ComplexVector(2).normalized(), Error);
    EXPECT_THROW(ComplexVector::basis(2, 2), Error);
}

} // namespace
} // namespace pev
