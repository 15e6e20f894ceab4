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
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pev/core.hpp"
#include "pev/gates.hpp"
#include "pev/reference.hpp"

namespace pev {
namespace {

const double kS = 1.0 / std::numbers::sqrt2;

ComplexMatrix from_oracle(const oracle::Mat4 &m) {
    ComplexMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out(i, j) = m[i][j];
        }
    }
    return out;
}

std::vector<DensityMatrix> probe_states() {
    std::mt19937 gen(17);
    std::normal_distribution<double> n;
    std::vector<DensityMatrix> out;
    for (int k = 0; k < 12; ++k) {
        ComplexVector v(4);
        for (std::size_t i = 0; i < 4; ++i) {
            v[i] = Complex(n(gen), n(gen));
        }
        out.push_back(DensityMatrix::pure(v));
    }
    return out;
}

TEST(GateMatrix, Validates) {
    EXPECT_NO_THROW(GateMatrix(hadamard_matrix(), 1));
    EXPECT_THROW(GateMatrix(hadamard_matrix(), 2), GateError);
    EXPECT_THROW(GateMatrix(ComplexMatrix{{1, 0}, {0, 0}}, 1), GateError);
}

TEST(GateToPev, Examples) {
    EXPECT_EQ(gate_to_pev(GateMatrix(ComplexMatrix::identity(2), 1)).matrix(),
              ComplexMatrix::identity(2));
    EXPECT_TRUE(approx_eq(gate_to_pev(GateMatrix(hadamard_matrix(), 1)).matrix(),
                          ComplexMatrix{{kS, kS}, {kS, -kS}}, 0.0));
    const auto pi = gate_to_pev(GateMatrix(hadamard_matrix(), 1), std::numbers::pi);
    EXPECT_TRUE(approx_eq(pi.matrix(), ComplexMatrix{{-kS, -kS}, {-kS, kS}}, 1e-15));
    EXPECT_EQ(pi.kind(), OperatorKind::unitary_derived);
    const auto rho = DensityMatrix::pure(ComplexVector{0.6, Complex(0, 0.8)});
    EXPECT_TRUE(approx_eq(evolve(rho, pi).matrix(), evolve(rho, hadamard_pev()).matrix(), 1e-12));
}

TEST(HadamardPev, Examples) {
    EXPECT_TRUE(approx_eq(hadamard_pev(0).matrix(), ComplexMatrix{{kS, kS}, {kS, -kS}}, 0.0));
    const auto rho = DensityMatrix::pure(ComplexVector{Complex(0.1, 0.2), 0.7});
    const auto twice = evolve(evolve(rho, hadamard_pev()), hadamard_pev());
    EXPECT_TRUE(approx_eq(twice.matrix(), rho.matrix(), 1e-12));
    for (double alpha : {0.0, 0.3, 2.0}) {
        const auto h = hadamard_pev(alpha).matrix();
        EXPECT_TRUE(approx_eq(h * dagger(h), ComplexMatrix::identity(2), 1e-12));
    }
}

TEST(OracleFunction, NamesAndClassification) {
    EXPECT_EQ(OracleFunction::from_name("f1"), (OracleFunction{0, 0}));
    EXPECT_EQ(OracleFunction::from_name("f2"), (OracleFunction{0, 1}));
    EXPECT_EQ(OracleFunction::from_name("f3"), (OracleFunction{1, 0}));
    EXPECT_EQ(OracleFunction::from_name("f4"), (OracleFunction{1, 1}));
    for (const auto &f : kAllOracles) {
        EXPECT_EQ(OracleFunction::from_name(f.name()), f);
        EXPECT_EQ(f.is_constant(), f(0) == f(1));
    }
    EXPECT_THROW(OracleFunction::from_name("f5"), RangeError);
    EXPECT_THROW(oracle_pev(OracleFunction{2, 0}), RangeError);
}

TEST(OraclePev, TableOneExamples) {
    EXPECT_EQ(oracle_pev({0, 0}).matrix(), ComplexMatrix::identity(4));
    EXPECT_EQ(oracle_pev({0, 1}).matrix(),
              (ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
    EXPECT_EQ(oracle_pev({1, 1}).matrix(),
              (ComplexMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
}

TEST(OraclePev, MatchesReferenceTablesExactly) {
    const auto tables = reference::oracle_tables();
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(max_abs_diff(oracle_pev(kAllOracles[k]).matrix(), tables[k]), 0.0);
    }
}

TEST(OraclePev, MatchesIndexArithmeticOracle) {
    for (const auto &f : kAllOracles) {
        EXPECT_EQ(oracle_pev(f).matrix(), from_oracle(oracle::oracle_matrix(f.f0, f.f1)));
    }
}

TEST(OraclePev, PermutationAndSelfInverse) {
    for (const auto &f : kAllOracles) {
        const auto m = oracle_pev(f).matrix();
        for (std::size_t i = 0; i < 4; ++i) {
            int row_ones = 0;
            int col_ones = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                EXPECT_TRUE(m(i, j) == Complex(0) || m(i, j) == Complex(1));
                row_ones += m(i, j) == Complex(1) ? 1 : 0;
                col_ones += m(j, i) == Complex(1) ? 1 : 0;
            }
            EXPECT_EQ(row_ones, 1);
            EXPECT_EQ(col_ones, 1);
        }
        EXPECT_EQ(m * m, ComplexMatrix::identity(4));
    }
}

TEST(OraclePev, ConstantOraclesDifferAsOperators) {
    EXPECT_NE(oracle_pev({0, 0}).matrix(), oracle_pev({1, 1}).matrix());
    EXPECT_NE(oracle_pev({0, 1}).matrix(), oracle_pev({1, 0}).matrix());
}

TEST(GateProperties, PhaseDoesNotChangeEvolution) {
    const std::vector<PevOperator> ops0{oracle_pev({0, 1}), hadamard_on_first(),
                                        gate_to_pev(GateMatrix(kron(hadamard_matrix(), hadamard_matrix()), 2))};
    for (double alpha : {0.3, 1.0, std::numbers::pi, 5.0}) {
        const std::vector<PevOperator> ops{oracle_pev({0, 1}, alpha), hadamard_on_first(alpha),
                                           gate_to_pev(GateMatrix(kron(hadamard_matrix(), hadamard_matrix()), 2), alpha)};
        for (const auto &rho : probe_states()) {
            for (std::size_t k = 0; k < ops.size(); ++k) {
                EXPECT_TRUE(approx_eq(evolve(rho, ops[k]).matrix(), evolve(rho, ops0[k]).matrix(), 1e-12));
            }
        }
    }
}

TEST(HadamardOnFirst, TableTwoToTableThree) {
    const auto t2 = reference::tau2_tables();
    const auto t3 = reference::tau3_tables();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto out = evolve(DensityMatrix::from_matrix(t2[k]), hadamard_on_first());
        EXPECT_TRUE(approx_eq(out.matrix(), t3[k], 1e-12)) << kAllOracles[k].name();
    }
}

TEST(HadamardOnFirst, IsKronAndSelfInverse) {
    const auto m = hadamard_on_first().matrix();
    EXPECT_EQ(m, kron(hadamard_matrix(), ComplexMatrix::identity(2)));
    EXPECT_TRUE(approx_eq(m * m, ComplexMatrix::identity(4), 1e-15));
    for (const auto &rho : probe_states()) {
        const auto twice = evolve(evolve(rho, hadamard_on_first()), hadamard_on_first());
        EXPECT_TRUE(approx_eq(twice.matrix(), rho.matrix(), 1e-12));
    }
}

TEST(MeasureFirstQubit, StructureAndResolution) {
    const auto family = measure_first_qubit();
    ASSERT_EQ(family.size(), 2u);
    EXPECT_EQ(family.labels(), (std::vector<OutcomeLabel>{0, 1}));
    EXPECT_EQ(family.operators()[0].matrix(),
              kron(ComplexMatrix{{1, 0}, {0, 0}}, ComplexMatrix::identity(2)));
    EXPECT_EQ(family.operators()[0].kind(), OperatorKind::projector);
    EXPECT_TRUE(check_resolution(family).ok());
}

TEST(MeasureFirstQubit, TableThreeOutcomes) {
    const auto t3 = reference::tau3_tables();
    const auto d1 = outcome_distribution(DensityMatrix::from_matrix(t3[0]), measure_first_qubit());
    EXPECT_NEAR(probability_of(d1, 0), 1.0, 1e-12);
    EXPECT_NEAR(probability_of(d1, 1), 0.0, 1e-12);
    const auto d3 = outcome_distribution(DensityMatrix::from_matrix(t3[2]), measure_first_qubit());
    EXPECT_NEAR(probability_of(d3, 0), 0.0, 1e-12);
    EXPECT_NEAR(probability_of(d3, 1), 1.0, 1e-12);
}

TEST(ComputationalFamily, SecondQubit) {
    const auto family = computational_family(1, 2);
    EXPECT_EQ(family.operators()[1].matrix(),
              kron(ComplexMatrix::identity(2), ComplexMatrix{{0, 0}, {0, 1}}));
    EXPECT_TRUE(check_resolution(family).ok());
}

} // namespace
} // namespace pev
