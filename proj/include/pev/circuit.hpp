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
 * Minimal two-qubit circuit description format.
 *
 *     # comment
 *     t1:  H(0)
 *     t1b: H(1)
 *     t2:  UF(f2)
 *     t3:  H(0)
 *     t4:  MEASURE(0)
 *
 * One step per line; blank lines and text after '#' are ignored. Labels are
 * identifiers and must be unique. At most one MEASURE is allowed and it must
 * be the last step. Execution starts from |0>|1>.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pev/core.hpp"
#include "pev/deutsch.hpp"
#include "pev/error.hpp"
#include "pev/gates.hpp"
#include "pev/random.hpp"

namespace pev::circuit {

inline constexpr int kQubits = 2;

enum class OpKind { hadamard, oracle, measure };

struct Step {
    std::string label;
    OpKind kind = OpKind::hadamard;
    int qubit = 0;            // H and MEASURE
    OracleFunction oracle{};  // UF

    friend bool operator==(const Step &, const Step &) = default;
};

struct CircuitFile {
    std::vector<Step> steps;

    friend bool operator==(const CircuitFile &, const CircuitFile &) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline int parse_qubit(const std::string &arg, int line) {
    static const std::regex digits("[0-9]+");
    if (!std::regex_match(arg, digits)) {
        throw ParseError("syntax error: expected a qubit index, got '" + arg + "'",
                         line);
    }
    if (arg.size() > 3 || std::stoi(arg) >= kQubits) {
        throw ParseError("qubit index out of range", line);
    }
    return std::stoi(arg);
}

} // namespace detail

inline CircuitFile parse_circuit(std::string_view text) {
    static const std::regex step_re(
        R"(([A-Za-z_][A-Za-z0-9_]*)\s*:\s*([A-Za-z]+)\s*\(\s*([^()\s]*)\s*\))");
    CircuitFile circuit;
    std::set<std::string> labels;
    std::optional<int> measure_line;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos
                                         ? std::string_view::npos
                                         : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }

        std::match_results<std::string_view::const_iterator> m;
        if (!std::regex_match(line.begin(), line.end(), m, step_re)) {
            throw ParseError("syntax error", line_no);
        }
        if (measure_line) {
            throw ParseError("MEASURE must be the last step (MEASURE on line " +
                                 std::to_string(*measure_line) + ")",
                             line_no);
        }

        Step step;
        step.label = m[1].str();
        const std::string op = m[2].str();
        const std::string arg = m[3].str();
        if (op == "H") {
            step.kind = OpKind::hadamard;
            step.qubit = detail::parse_qubit(arg, line_no);
        } else if (op == "UF") {
            step.kind = OpKind::oracle;
            try {
                step.oracle = OracleFunction::from_name(arg);
            } catch (const RangeError &) {
                throw ParseError("unknown oracle " + arg, line_no);
            }
        } else if (op == "MEASURE") {
            step.kind = OpKind::measure;
            step.qubit = detail::parse_qubit(arg, line_no);
            measure_line = line_no;
        } else {
            throw ParseError("syntax error: unknown operation " + op, line_no);
        }
        if (!labels.insert(step.label).second) {
            throw ParseError("duplicate label " + step.label, line_no);
        }
        circuit.steps.push_back(std::move(step));
    }
    if (circuit.steps.empty()) {
        throw ParseError("circuit has no steps", line_no);
    }
    return circuit;
}

inline std::string render(const CircuitFile &circuit) {
    std::ostringstream out;
    for (const auto &s : circuit.steps) {
        out << s.label << ": ";
        switch (s.kind) {
        case OpKind::hadamard:
            out << "H(" << s.qubit << ")";
            break;
        case OpKind::oracle:
            out << "UF(" << s.oracle.name() << ")";
            break;
        case OpKind::measure:
            out << "MEASURE(" << s.qubit << ")";
            break;
        }
        out << '\n';
    }
    return out.str();
}

/// The five-step Deutsch circuit for `f`.
inline CircuitFile canonical_deutsch(const OracleFunction &f) {
    return {{{"t1", OpKind::hadamard, 0, {}},
             {"t1b", OpKind::hadamard, 1, {}},
             {"t2", OpKind::oracle, 0, f},
             {"t3", OpKind::hadamard, 0, {}},
             {"t4", OpKind::measure, 0, {}}}};
}

struct Execution {
    EvolutionTrace trace;
    /// Labels of trace steps 1.. in file order; step 0 is the input state.
    std::vector<std::string> labels;
    std::optional<OutcomeLabel> outcome;
    /// Oracle used by the circuit, if any (the last UF step wins).
    std::optional<OracleFunction> oracle;
};

/// Runs the circuit from |0>|1>; step k of the file becomes trace step k.
inline Execution execute(const CircuitFile &circuit, std::uint64_t seed = 0) {
    Execution ex;
    auto rho = deutsch::initial_state();
    ex.trace.push({0, std::nullopt, rho, 1.0});
    RandomStream rng(seed);
    StepLabel tau = 0;
    for (const auto &s : circuit.steps) {
        ++tau;
        ex.labels.push_back(s.label);
        switch (s.kind) {
        case OpKind::hadamard:
            rho = evolve(rho, PevOperator::unitary(
                                  embed_single_qubit(hadamard_matrix(),
                                                     static_cast<std::size_t>(s.qubit),
                                                     kQubits),
                                  tau));
            ex.trace.push({tau, std::nullopt, rho, 1.0});
            break;
        case OpKind::oracle:
            rho = evolve(rho, oracle_pev(s.oracle).with_tau(tau));
            ex.oracle = s.oracle;
            ex.trace.push({tau, std::nullopt, rho, 1.0});
            break;
        case OpKind::measure: {
            auto m = apply_family(
                rho, computational_family(static_cast<std::size_t>(s.qubit), kQubits),
                rng);
            rho = m.state;
            ex.outcome = m.label;
            ex.trace.push({tau, m.label, std::move(m.state), m.probability});
            break;
        }
        }
    }
    return ex;
}

} // namespace pev::circuit
