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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "pev/circuit.hpp"

namespace pev::circuit {
namespace {

int error_line(std::string_view text) {
    try {
        (void)parse_circuit(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return -1;
}

std::string error_message(std::string_view text) {
    try {
        (void)parse_circuit(text);
    } catch (const ParseError &e) {
        return e.what();
    }
    return {};
}

TEST(Parse, CanonicalText) {
    const auto c = parse_circuit("t1: H(0)\nt1b: H(1)\nt2: UF(f2)\nt3: H(0)\nt4: MEASURE(0)\n");
    EXPECT_EQ(c, canonical_deutsch({0, 1}));
}

TEST(Parse, CommentsBlankLinesAndSpacing) {
    const auto c = parse_circuit("# Deutsch\n\n  t1 :H( 0 )  # first\n\tt2: UF(f4)\r\n");
    ASSERT_EQ(c.steps.size(), 2u);
    EXPECT_EQ(c.steps[0].label, "t1");
    EXPECT_EQ(c.steps[0].qubit, 0);
    EXPECT_EQ(c.steps[1].oracle, (OracleFunction{1, 1}));
}

TEST(Parse, Errors) {
    EXPECT_NE(error_message("t1: H(2)\n").find("qubit index out of range"), std::string::npos);
    EXPECT_NE(error_message("t1: UF(f9)\n").find("unknown oracle f9"), std::string::npos);
    EXPECT_NE(error_message("t1: H(0)\nt1: H(1)\n").find("duplicate label t1"), std::string::npos);
    EXPECT_NE(error_message("t1: X(0)\n").find("syntax error"), std::string::npos);
    EXPECT_NE(error_message("H(0)\n").find("syntax error"), std::string::npos);
    EXPECT_NE(error_message("t1: MEASURE(0)\nt2: H(0)\n").find("MEASURE must be the last step"),
              std::string::npos);
    EXPECT_NE(error_message("# nothing\n").find("circuit has no steps"), std::string::npos);
}

TEST(Parse, ErrorLines) {
    EXPECT_EQ(error_line("t1: H(0)\n\nt2: H(7)\n"), 3);
    EXPECT_EQ(error_line("t1: H(0)\nt2: UF(f5)\n"), 2);
    EXPECT_EQ(error_line("t1: MEASURE(0)\n# c\nt2: H(0)\n"), 3);
    EXPECT_EQ(error_line("a: H(0)\nb: H(1)\na: H(0)\n"), 3);
}

TEST(Render, RoundTripsCanonical) {
    for (const auto &f : kAllOracles) {
        const auto c = canonical_deutsch(f);
        EXPECT_EQ(parse_circuit(render(c)), c);
    }
}

TEST(Render, RoundTripsRandomCircuits) {
    std::mt19937 gen(2026);
    std::uniform_int_distribution<int> op(0, 1);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> len(1, 8);
    for (int n = 0; n < 50; ++n) {
        CircuitFile c;
        const int steps = len(gen);
        for (int k = 0; k < steps; ++k) {
            Step s;
            s.label = "s" + std::to_string(k);
            if (op(gen) == 0) {
                s.kind = OpKind::hadamard;
                s.qubit = bit(gen);
            } else {
                s.kind = OpKind::oracle;
                s.oracle = {bit(gen), bit(gen)};
            }
            c.steps.push_back(s);
        }
        if (bit(gen) == 1) {
            c.steps.push_back({"m", OpKind::measure, bit(gen), {}});
        }
        EXPECT_EQ(parse_circuit(render(c)), c);
    }
}

TEST(Execute, MatchesDeutschRun) {
    for (const auto &f : kAllOracles) {
        const auto ex = execute(canonical_deutsch(f), 42);
        const auto r = deutsch::run(f);
        ASSERT_TRUE(ex.outcome.has_value());
        EXPECT_EQ(*ex.outcome, r.outcome);
        EXPECT_EQ(ex.oracle, f);
        ASSERT_EQ(ex.trace.size(), 6u);
        EXPECT_EQ(ex.labels, (std::vector<std::string>{"t1", "t1b", "t2", "t3", "t4"}));
        // File steps t2 and t3 sit at trace steps 3 and 4.
        EXPECT_TRUE(approx_eq(ex.trace.at(3).matrix(), r.trace.at(deutsch::kTau2).matrix(), 1e-12));
        EXPECT_TRUE(approx_eq(ex.trace.at(4).matrix(), r.trace.at(deutsch::kTau3).matrix(), 1e-12));
    }
}

TEST(Execute, WithoutMeasurement) {
    const auto ex = execute(parse_circuit("a: H(0)\nb: H(0)\n"));
    EXPECT_FALSE(ex.outcome.has_value());
    EXPECT_FALSE(ex.oracle.has_value());
    EXPECT_TRUE(approx_eq(ex.trace.back().state.matrix(), deutsch::initial_state().matrix(), 1e-12));
}

} // namespace
} // namespace pev::circuit
