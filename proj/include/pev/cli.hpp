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
 * Command-line front end. `run_cli` holds the whole program so that tests
 * can drive it in-process; tools/pev.cpp only forwards argv and the
 * environment.
 *
 * Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 failed check.
 */

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pev/circuit.hpp"
#include "pev/deutsch.hpp"
#include "pev/error.hpp"
#include "pev/noise.hpp"
#include "pev/report.hpp"
#include "pev/verify.hpp"

namespace pev::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kCheckFailed = 3 };

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Environment the program depends on.
struct Environment {
    /// Value of PEV_SEED, if set.
    std::optional<std::string> seed;
};

namespace detail {

using nlohmann::json;

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag,
                                  const Environment &env) {
    if (flag) {
        return *flag;
    }
    if (env.seed) {
        const auto &s = *env.seed;
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
            s.size() > 20) {
            throw UsageError("PEV_SEED must be a non-negative integer, got '" + s + "'");
        }
        try {
            return std::stoull(s);
        } catch (const std::out_of_range &) {
            throw UsageError("PEV_SEED is out of range");
        }
    }
    return kDefaultSeed;
}

inline std::string seed_source(const std::optional<std::uint64_t> &flag,
                               const Environment &env) {
    return flag ? "flag" : env.seed ? "PEV_SEED" : "default";
}

inline const std::vector<std::string> &oracle_names() {
    static const std::vector<std::string> names{"f1", "f2", "f3", "f4"};
    return names;
}

inline const std::vector<std::string> &formats() {
    static const std::vector<std::string> names{"pretty", "json", "csv"};
    return names;
}

inline void print_steps_pretty(std::ostream &out, const EvolutionTrace &trace,
                               const std::vector<std::string> &labels = {}) {
    for (const auto &s : trace.steps()) {
        out << "tau=" << s.tau;
        if (s.tau >= 1 && static_cast<std::size_t>(s.tau) <= labels.size()) {
            out << " (" << labels[static_cast<std::size_t>(s.tau) - 1] << ")";
        }
        if (s.nu) {
            out << " outcome=" << *s.nu << " probability=" << report::format_double(s.probability);
        }
        out << '\n';
        report::write_matrix_pretty(out, s.state.matrix());
    }
}

// --------------------------------------------------------------------------
// Commands.

struct RunArgs {
    std::string f;
    bool dump_steps = false;
    bool second_quantized = false;
    std::size_t fock_dim = 2;
    std::string format = "pretty";
    std::optional<std::uint64_t> seed;
};

inline int cmd_run(const RunArgs &a, const Environment &env, std::ostream &out) {
    const auto seed = resolve_seed(a.seed, env);
    const auto f = OracleFunction::from_name(a.f);
    const auto ops = a.second_quantized
                         ? deutsch::HadamardOperators::second_quantized(FockSpace{a.fock_dim})
                         : deutsch::HadamardOperators::scalar();
    const auto run = deutsch::run(f, ops, seed);

    if (a.format == "json") {
        auto j = report::run_json(run, a.dump_steps);
        j["provenance"] = {{"command", "run"},
                           {"seed", seed},
                           {"seed_source", seed_source(a.seed, env)},
                           {"second_quantized", a.second_quantized},
                           {"fock_dim", a.fock_dim}};
        out << j.dump(2) << '\n';
    } else if (a.format == "csv") {
        if (a.dump_steps) {
            report::write_steps_csv(out, run.trace);
        } else {
            out << "oracle,outcome,classification\n"
                << run.oracle.name() << ',' << run.outcome << ','
                << to_string(run.classification) << '\n';
        }
    } else {
        out << "# pev run f=" << a.f << " seed=" << seed
            << " second_quantized=" << (a.second_quantized ? "true" : "false");
        if (a.second_quantized) {
            out << " fock_dim=" << a.fock_dim;
        }
        out << '\n';
        if (a.dump_steps) {
            print_steps_pretty(out, run.trace);
        }
        out << "outcome=" << run.outcome
            << " classification=" << to_string(run.classification) << '\n';
    }
    return kOk;
}

struct SweepArgs {
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 101;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

inline int cmd_sweep(const SweepArgs &a, std::ostream &out) {
    const auto rows = noise::sweep(a.from, a.to, a.steps);
    // Files default to CSV (or JSON by extension); the terminal gets a table.
    std::string format = "pretty";
    if (a.format) {
        format = *a.format;
    } else if (a.output) {
        const auto &p = *a.output;
        format = p.size() >= 5 && p.substr(p.size() - 5) == ".json" ? "json" : "csv";
    }

    std::ostringstream body;
    if (format == "csv") {
        report::write_sweep_csv(body, rows);
    } else if (format == "json") {
        body << report::sweep_json(rows, {{"command", "sweep"},
                                          {"from", a.from},
                                          {"to", a.to},
                                          {"steps", a.steps}})
                    .dump(2)
             << '\n';
    } else {
        body << "# pev sweep from=" << report::format_double(a.from)
             << " to=" << report::format_double(a.to) << " steps=" << a.steps << '\n';
        report::write_sweep_pretty(body, rows);
    }

    if (a.output) {
        std::ofstream file(*a.output, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw IoError("cannot open " + *a.output + " for writing");
        }
        file << body.str();
        file.flush();
        if (!file) {
            throw IoError("failed writing " + *a.output);
        }
        out << "wrote " << rows.size() << " rows to " << *a.output << '\n';
    } else {
        out << body.str();
    }
    return kOk;
}

struct McArgs {
    std::string f;
    double alpha2 = 1.0;
    std::string semantics = "unitary";
    std::string model = "coherent";
    double phase = 0.0;
    std::size_t trials = 100000;
    std::optional<std::uint64_t> seed;
    std::string format = "pretty";
};

inline int cmd_mc(const McArgs &a, const Environment &env, std::ostream &out) {
    const auto seed = resolve_seed(a.seed, env);
    if (a.trials == 0) {
        throw UsageError("--trials must be positive");
    }
    const auto f = OracleFunction::from_name(a.f);
    const auto params = noise::NoiseParams::identical_gates(a.alpha2);
    const auto sem = noise::semantics_from_string(a.semantics);
    const noise::ErrorModel model{noise::error_kind_from_string(a.model), a.phase};
    model.validate();
    const auto r = noise::mc_run(f, params, sem, model, a.trials, seed);
    const bool pass = r.within(4.0);
    const double dev = std::abs(r.empirical[1] - r.exact[1]);
    const auto fd = report::format_double;

    if (a.format == "json") {
        json j{{"provenance",
                {{"command", "mc"},
                 {"f", a.f},
                 {"alpha2", a.alpha2},
                 {"semantics", a.semantics},
                 {"model", a.model},
                 {"phase", a.phase},
                 {"trials", a.trials},
                 {"seed", seed},
                 {"seed_source", seed_source(a.seed, env)}}},
               {"counts", r.counts},
               {"empirical", r.empirical.p},
               {"exact", r.exact.p},
               {"sigma", r.sigma},
               {"deviation", dev},
               {"pass", pass}};
        out << j.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "f,alpha2,semantics,model,phase,trials,seed,count0,count1,"
               "empirical0,empirical1,exact0,exact1,sigma,pass\n"
            << a.f << ',' << fd(a.alpha2) << ',' << a.semantics << ',' << a.model << ','
            << fd(a.phase) << ',' << a.trials << ',' << seed << ',' << r.counts[0] << ','
            << r.counts[1] << ',' << fd(r.empirical[0]) << ',' << fd(r.empirical[1]) << ','
            << fd(r.exact[0]) << ',' << fd(r.exact[1]) << ',' << fd(r.sigma) << ','
            << (pass ? "true" : "false") << '\n';
    } else {
        out << "# pev mc f=" << a.f << " alpha2=" << fd(a.alpha2)
            << " semantics=" << a.semantics << " model=" << a.model
            << " phase=" << fd(a.phase) << " trials=" << a.trials << " seed=" << seed << '\n'
            << "empirical p0=" << fd(r.empirical[0]) << " p1=" << fd(r.empirical[1]) << '\n'
            << "exact     p0=" << fd(r.exact[0]) << " p1=" << fd(r.exact[1]) << '\n'
            << "sigma=" << fd(r.sigma) << " deviation=" << fd(dev) << '\n'
            << "check=" << (pass ? "pass" : "fail") << " (4 sigma)\n";
    }
    return pass ? kOk : kCheckFailed;
}

struct VerifyArgs {
    std::optional<std::string> only;
    std::optional<std::string> inject_fault;
    std::string format = "pretty";
};

inline int cmd_verify(const VerifyArgs &a, std::ostream &out, std::ostream &err) {
    const auto report = verify::run({a.only, a.inject_fault});
    std::vector<std::string> failed;
    for (const auto &c : report.checks) {
        if (!c.passed) {
            failed.push_back(c.group + "/" + c.name);
        }
    }

    if (a.format == "json") {
        json checks = json::array();
        for (const auto &c : report.checks) {
            checks.push_back({{"group", c.group},
                              {"name", c.name},
                              {"passed", c.passed},
                              {"max_deviation", c.max_deviation},
                              {"tolerance", c.tolerance},
                              {"detail", c.detail}});
        }
        out << json{{"checks", checks}, {"passed", report.passed()}}.dump(2) << '\n';
    } else if (a.format == "csv") {
        out << "group,name,passed,max_deviation,tolerance\n";
        for (const auto &c : report.checks) {
            out << c.group << ',' << c.name << ',' << (c.passed ? "true" : "false") << ','
                << report::format_double(c.max_deviation) << ','
                << report::format_double(c.tolerance) << '\n';
        }
    } else {
        char buf[160];
        for (const auto &c : report.checks) {
            std::snprintf(buf, sizeof buf, "%-4s %-8s %-44s max_dev=%-10.3g tol=%.0e",
                          c.passed ? "PASS" : "FAIL", c.group.c_str(), c.name.c_str(),
                          c.max_deviation, c.tolerance);
            out << buf;
            if (!c.detail.empty()) {
                out << "  " << c.detail;
            }
            out << '\n';
        }
        out << report.checks.size() << " checks, " << failed.size() << " failed\n";
    }
    for (const auto &name : failed) {
        err << "check failed: " << name << '\n';
    }
    return report.passed() ? kOk : kCheckFailed;
}

struct CircuitArgs {
    std::string path;
    bool dump_steps = false;
    std::optional<std::uint64_t> seed;
    std::string format = "pretty";
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int cmd_circuit(const CircuitArgs &a, const Environment &env, std::ostream &out) {
    const auto seed = resolve_seed(a.seed, env);
    const auto text = read_file(a.path);
    circuit::CircuitFile file;
    try {
        file = circuit::parse_circuit(text);
    } catch (const ParseError &e) {
        throw UsageError(a.path + ": " + e.what());
    }
    const auto ex = circuit::execute(file, seed);
    // Measuring the first line after an oracle call answers the Deutsch
    // question; other circuits only report the bit.
    std::optional<Classification> cls;
    if (ex.outcome && ex.oracle && file.steps.back().qubit == 0) {
        cls = *ex.outcome == 0 ? Classification::constant : Classification::balanced;
    }

    if (a.format == "json") {
        json j{{"circuit", a.path}, {"labels", ex.labels}, {"seed", seed}};
        if (a.dump_steps) {
            j["steps"] = report::steps_json(ex.trace);
        }
        j["outcome"] = ex.outcome ? json(*ex.outcome) : json(nullptr);
        j["classification"] = cls ? json(to_string(*cls)) : json(nullptr);
        out << j.dump(2) << '\n';
    } else if (a.format == "csv") {
        if (a.dump_steps) {
            report::write_steps_csv(out, ex.trace);
        } else {
            out << "outcome,classification\n"
                << (ex.outcome ? std::to_string(*ex.outcome) : "") << ','
                << (cls ? to_string(*cls) : "") << '\n';
        }
    } else {
        out << "# pev circuit " << a.path << " steps=" << file.steps.size()
            << " seed=" << seed << '\n';
        if (a.dump_steps) {
            print_steps_pretty(out, ex.trace, ex.labels);
        }
        if (ex.outcome) {
            out << "outcome=" << *ex.outcome;
            if (cls) {
                out << " classification=" << to_string(*cls);
            }
            out << '\n';
        } else {
            out << "no measurement\n";
        }
    }
    return kOk;
}

} // namespace detail

/// Runs the program on `args` (without the program name).
inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
                   const Environment &env = {}) {
    using namespace detail;
    CLI::App app{"Projection-evolution simulator for the Deutsch algorithm", "pev"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run the algorithm for one oracle");
    run->add_option("--f", run_args.f, "Oracle f1..f4")->required()->check(CLI::IsMember(oracle_names()));
    run->add_flag("--dump-steps", run_args.dump_steps, "Print the density matrix at every step");
    run->add_flag("--second-quantized", run_args.second_quantized,
                  "Use the reduced operator-valued Hadamards");
    run->add_option("--fock-dim", run_args.fock_dim, "Fock truncation for --second-quantized")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    run->add_option("--format", run_args.format, "pretty, json or csv")->check(CLI::IsMember(formats()));
    run->add_option("--seed", run_args.seed, "Seed for the final measurement");

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Tabulate error probabilities over alpha^2");
    sweep->add_option("--from", sweep_args.from, "First alpha^2");
    sweep->add_option("--to", sweep_args.to, "Last alpha^2");
    sweep->add_option("--steps", sweep_args.steps, "Number of grid points");
    sweep->add_option("--output", sweep_args.output, "Write to this file instead of stdout");
    sweep->add_option("--format", sweep_args.format,
                      "pretty, json or csv (files default to csv)")
        ->check(CLI::IsMember(formats()));

    McArgs mc_args;
    auto *mc = app.add_subcommand("mc", "Monte-Carlo run of the noisy circuit");
    mc->add_option("--f", mc_args.f, "Oracle f1..f4")->required()->check(CLI::IsMember(oracle_names()));
    mc->add_option("--alpha2", mc_args.alpha2, "Success probability of H1 and H3")->required();
    mc->add_option("--semantics", mc_args.semantics, "unitary or projection")
        ->check(CLI::IsMember({"unitary", "projection"}));
    mc->add_option("--model", mc_args.model, "coherent, incoherent or phase")
        ->check(CLI::IsMember({"coherent", "incoherent", "phase"}));
    mc->add_option("--phase", mc_args.phase, "Phase of the phase-error model, in [0, 2pi)");
    mc->add_option("--trials", mc_args.trials, "Number of trajectories");
    mc->add_option("--seed", mc_args.seed, "Seed (PEV_SEED or 42 when absent)");
    mc->add_option("--format", mc_args.format, "pretty, json or csv")->check(CLI::IsMember(formats()));

    VerifyArgs verify_args;
    auto *ver = app.add_subcommand("verify", "Run the self-check suite");
    std::vector<std::string> groups(verify::kGroups.begin(), verify::kGroups.end());
    ver->add_option("--only", verify_args.only, "Run one group only")->check(CLI::IsMember(groups));
    ver->add_option("--inject-fault", verify_args.inject_fault, "Test hook: table1")
        ->check(CLI::IsMember({"table1"}))
        ->group("Testing");
    ver->add_option("--format", verify_args.format, "pretty, json or csv")->check(CLI::IsMember(formats()));

    CircuitArgs circuit_args;
    auto *circ = app.add_subcommand("circuit", "Parse and execute a circuit file");
    circ->add_option("file", circuit_args.path, "Circuit description")->required();
    circ->add_flag("--dump-steps", circuit_args.dump_steps, "Print the density matrix at every step");
    circ->add_option("--seed", circuit_args.seed, "Seed for the measurement");
    circ->add_option("--format", circuit_args.format, "pretty, json or csv")->check(CLI::IsMember(formats()));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_args, env, out);
        if (sweep->parsed()) return cmd_sweep(sweep_args, out);
        if (mc->parsed()) return cmd_mc(mc_args, env, out);
        if (ver->parsed()) return cmd_verify(verify_args, out, err);
        if (circ->parsed()) return cmd_circuit(circuit_args, env, out);
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    err << app.help();
    return kUsage;
}

} // namespace pev::cli
