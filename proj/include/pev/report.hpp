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
 * Output records: sweep tables as CSV or JSON, per-step density matrix dumps,
 * and plain-text rendering.
 *
 * Doubles are written with 17 significant digits so that every value
 * re-parses to the same bit pattern.
 */

#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pev/core.hpp"
#include "pev/deutsch.hpp"
#include "pev/error.hpp"
#include "pev/noise.hpp"

namespace pev::report {

using nlohmann::json;

inline constexpr const char *kSweepHeader = "alpha2,prob0,prob1,single_gate_err,ratio";

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string &field, int line) {
    if (field.empty()) {
        throw ParseError("empty numeric field", line);
    }
    char *end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw ParseError("malformed number '" + field + "'", line);
    }
    return v;
}

// --------------------------------------------------------------------------
// Sweep tables.

inline void write_sweep_csv(std::ostream &out, const std::vector<noise::SweepRow> &rows) {
    out << kSweepHeader << '\n';
    for (const auto &r : rows) {
        out << format_double(r.alpha2) << ',' << format_double(r.prob0) << ','
            << format_double(r.prob1) << ',' << format_double(r.single_gate_err) << ',';
        if (r.ratio) {
            out << format_double(*r.ratio);
        }
        out << '\n';
    }
}

inline std::vector<noise::SweepRow> read_sweep_csv(std::istream &in) {
    std::string line;
    int line_no = 1;
    if (!std::getline(in, line) || line != kSweepHeader) {
        throw ParseError("expected header " + std::string(kSweepHeader), line_no);
    }
    std::vector<noise::SweepRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        if (fields.size() != 5) {
            throw ParseError("expected 5 fields", line_no);
        }
        noise::SweepRow r;
        r.alpha2 = parse_double(fields[0], line_no);
        r.prob0 = parse_double(fields[1], line_no);
        r.prob1 = parse_double(fields[2], line_no);
        r.single_gate_err = parse_double(fields[3], line_no);
        if (!fields[4].empty()) {
            r.ratio = parse_double(fields[4], line_no);
        }
        rows.push_back(r);
    }
    return rows;
}

inline json sweep_json(const std::vector<noise::SweepRow> &rows, json provenance = {}) {
    json j;
    if (!provenance.is_null()) {
        j["provenance"] = std::move(provenance);
    }
    j["columns"] = {"alpha2", "prob0", "prob1", "single_gate_err", "ratio"};
    json arr = json::array();
    for (const auto &r : rows) {
        arr.push_back({{"alpha2", r.alpha2},
                       {"prob0", r.prob0},
                       {"prob1", r.prob1},
                       {"single_gate_err", r.single_gate_err},
                       {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)}});
    }
    j["rows"] = std::move(arr);
    return j;
}

inline void write_sweep_pretty(std::ostream &out, const std::vector<noise::SweepRow> &rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%10s %14s %14s %16s %14s\n", "alpha2", "prob0",
                  "prob1", "single_gate_err", "ratio");
    out << buf;
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%10.6f %14.10f %14.10f %16.10f ", r.alpha2,
                      r.prob0, r.prob1, r.single_gate_err);
        out << buf;
        if (r.ratio) {
            std::snprintf(buf, sizeof buf, "%14.10f", *r.ratio);
            out << buf;
        } else {
            std::snprintf(buf, sizeof buf, "%14s", "-");
            out << buf;
        }
        out << '\n';
    }
}

// --------------------------------------------------------------------------
// Density matrix dumps.

inline json matrix_parts(const ComplexMatrix &m, bool imag) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json steps_json(const EvolutionTrace &trace) {
    json steps = json::array();
    for (const auto &s : trace.steps()) {
        steps.push_back({{"tau", s.tau},
                         {"rho_re", matrix_parts(s.state.matrix(), false)},
                         {"rho_im", matrix_parts(s.state.matrix(), true)}});
    }
    return steps;
}

inline json run_json(const deutsch::DeutschRun &run, bool dump_steps) {
    json j;
    j["oracle"] = run.oracle.name();
    if (dump_steps) {
        j["steps"] = steps_json(run.trace);
    }
    j["outcome"] = run.outcome;
    j["classification"] = to_string(run.classification);
    return j;
}

/// Reads a matrix back from its {rho_re, rho_im} pair.
inline ComplexMatrix matrix_from_json(const json &re, const json &im) {
    const std::size_t n = re.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (re.at(i).size() != n || im.at(i).size() != n) {
            throw ShapeError("matrix dump is not square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = Complex(re[i][j].get<double>(), im[i][j].get<double>());
        }
    }
    return m;
}

inline void write_matrix_pretty(std::ostream &out, const ComplexMatrix &m) {
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto z = m(i, j);
            const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
            const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
            if (im == 0.0) {
                std::snprintf(buf, sizeof buf, " %9.6f", re);
            } else {
                std::snprintf(buf, sizeof buf, " %9.6f%+.6fi", re, im);
            }
            out << buf;
        }
        out << " ]\n";
    }
}

inline void write_steps_csv(std::ostream &out, const EvolutionTrace &trace) {
    out << "tau,row,col,re,im\n";
    for (const auto &s : trace.steps()) {
        const auto &m = s.state.matrix();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                out << s.tau << ',' << i << ',' << j << ',' << format_double(m(i, j).real())
                    << ',' << format_double(m(i, j).imag()) << '\n';
            }
        }
    }
}

} // namespace pev::report
