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
 * Self-check suite behind `pev verify`: reproduces the published tables and
 * re-checks the invariants of every module, reporting the largest deviation
 * seen by each check.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pev/core.hpp"
#include "pev/deutsch.hpp"
#include "pev/error.hpp"
#include "pev/fock.hpp"
#include "pev/gates.hpp"
#include "pev/noise.hpp"
#include "pev/random.hpp"
#include "pev/reference.hpp"

namespace pev::verify {

inline constexpr std::array<std::string_view, 6> kGroups = {
    "tables", "deutsch", "core", "fock", "noise", "mc"};

struct Check {
    std::string group;
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Options {
    /// Restrict to one group; all groups when empty.
    std::optional<std::string> only;
    /// Test hook: "table1" flips the sign of one entry of the f2 oracle
    /// before comparison.
    std::optional<std::string> inject_fault;
};

struct Report {
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const Check &c) { return c.passed; });
    }
};

namespace detail {

/// Collects deviations for one check.
class Probe {
  public:
    explicit Probe(double tol) : tol_(tol) {}

    void deviation(double d) { max_ = std::max(max_, std::isnan(d) ? INFINITY : d); }
    void require(bool ok, const std::string &why) {
        if (!ok && failure_.empty()) {
            failure_ = why;
        }
    }

    [[nodiscard]] double max() const { return max_; }
    [[nodiscard]] double tol() const { return tol_; }
    [[nodiscard]] bool ok() const { return failure_.empty() && max_ <= tol_; }
    [[nodiscard]] const std::string &failure() const { return failure_; }

  private:
    double tol_;
    double max_ = 0.0;
    std::string failure_;
};

using Body = std::function<void(Probe &)>;

inline Check run_check(std::string group, std::string name, double tol, const Body &body) {
    Check c{std::move(group), std::move(name), false, 0.0, tol, {}};
    Probe probe(tol);
    try {
        body(probe);
        c.passed = probe.ok();
        c.max_deviation = probe.max();
        c.detail = probe.failure();
        if (c.detail.empty() && !c.passed) {
            c.detail = "deviation above tolerance";
        }
    } catch (const std::exception &e) {
        c.passed = false;
        c.max_deviation = INFINITY;
        c.detail = std::string("exception: ") + e.what();
    }
    return c;
}

inline double prob0_at_tau4(const deutsch::DeutschRun &run) {
    return probability_of(outcome_distribution(run.trace.at(deutsch::kTau3),
                                               measure_first_qubit()),
                          0);
}

inline int expected_outcome(const OracleFunction &f) { return f.is_constant() ? 0 : 1; }

/// Pure two-qubit states from a fixed stream.
inline std::vector<DensityMatrix> random_states(std::size_t count, std::size_t dim) {
    RandomStream rng(0xc0ffeeULL);
    std::vector<DensityMatrix> out;
    for (std::size_t k = 0; k < count; ++k) {
        ComplexVector v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
        out.push_back(DensityMatrix::pure(v));
    }
    return out;
}

inline void tables(const Options &opt, std::vector<Check> &out) {
    const bool fault = opt.inject_fault && *opt.inject_fault == "table1";
    out.push_back(run_check("tables", "table1 oracle operators", 0.0, [&](Probe &p) {
        const auto ref = reference::oracle_tables();
        for (std::size_t k = 0; k < 4; ++k) {
            auto m = oracle_pev(kAllOracles[k]).matrix();
            if (fault && k == 1) {
                m(2, 3) = -m(2, 3);
            }
            p.deviation(max_abs_diff(m, ref[k]));
        }
    }));
    out.push_back(run_check("tables", "table2 states after oracle", 1e-12, [](Probe &p) {
        const auto ref = reference::tau2_tables();
        std::vector<ComplexMatrix> got;
        for (std::size_t k = 0; k < 4; ++k) {
            got.push_back(deutsch::run(kAllOracles[k]).trace.at(deutsch::kTau2).matrix());
            p.deviation(max_abs_diff(got[k], ref[k]));
        }
        p.deviation(max_abs_diff(got[0], got[3]));
        p.deviation(max_abs_diff(got[1], got[2]));
        p.require(max_abs_diff(got[0], got[1]) >= 0.4,
                  "constant and balanced states are not separated");
    }));
    out.push_back(run_check("tables", "table3 states after final Hadamard", 1e-12, [](Probe &p) {
        const auto ref = reference::tau3_tables();
        for (std::size_t k = 0; k < 4; ++k) {
            const auto &f = kAllOracles[k];
            const auto run = deutsch::run(f);
            const auto &got = run.trace.at(deutsch::kTau3).matrix();
            p.deviation(max_abs_diff(got, ref[k]));
            p.deviation(max_abs_diff(
                got, deutsch::rho_tau3_from_ab(deutsch::ab_coefficients(f)).matrix()));
        }
    }));
}

inline void deutsch_checks(std::vector<Check> &out) {
    out.push_back(run_check("deutsch", "deterministic outcomes", 1e-12, [](Probe &p) {
        for (const auto &f : kAllOracles) {
            const auto run = deutsch::run(f);
            const double want0 = expected_outcome(f) == 0 ? 1.0 : 0.0;
            p.deviation(std::abs(prob0_at_tau4(run) - want0));
            p.require(run.outcome == expected_outcome(f), "wrong outcome for " + f.name());
            p.require(run.classification == (f.is_constant() ? Classification::constant
                                                             : Classification::balanced),
                      "wrong classification for " + f.name());
        }
    }));
    out.push_back(run_check("deutsch", "outcome independent of seed", 0.0, [](Probe &p) {
        for (const auto &f : kAllOracles) {
            for (std::uint64_t seed = 0; seed < 16; ++seed) {
                const auto run = deutsch::run(f, deutsch::HadamardOperators::scalar(), seed);
                p.require(run.outcome == expected_outcome(f), "seed changed the outcome");
            }
        }
    }));
}

inline void core_checks(std::vector<Check> &out) {
    out.push_back(run_check("core", "resolution of unity", 1e-12, [](Probe &p) {
        for (const auto &family : {computational_family(0, 1), computational_family(0, 2),
                                   computational_family(1, 2)}) {
            const auto r = check_resolution(family);
            p.deviation(r.hermiticity.max_violation);
            p.deviation(r.orthogonality.max_violation);
            p.deviation(r.completeness.max_violation);
        }
    }));
    out.push_back(run_check("core", "unitary evolution preserves the state", 1e-12, [](Probe &p) {
        std::vector<ComplexMatrix> ops{kron(hadamard_matrix(), hadamard_matrix()),
                                       hadamard_on_first().matrix()};
        for (const auto &f : kAllOracles) {
            ops.push_back(oracle_pev(f).matrix());
        }
        for (const auto &rho : random_states(8, 4)) {
            for (const auto &e : ops) {
                const auto next = evolve(rho, e);
                const auto &m = next.matrix();
                p.deviation(max_abs_diff(m, dagger(m)));
                p.deviation(std::abs(trace(m) - Complex(1.0)));
                p.deviation(std::abs(purity(next) - purity(rho)));
            }
        }
    }));
    out.push_back(run_check("core", "global phase invariance", 1e-12, [](Probe &p) {
        for (const double alpha : {0.3, 1.0, std::numbers::pi}) {
            for (const auto &rho : random_states(4, 4)) {
                for (const auto &f : kAllOracles) {
                    p.deviation(max_abs_diff(evolve(rho, oracle_pev(f, alpha)).matrix(),
                                             evolve(rho, oracle_pev(f)).matrix()));
                }
                p.deviation(max_abs_diff(evolve(rho, hadamard_on_first(alpha)).matrix(),
                                         evolve(rho, hadamard_on_first()).matrix()));
            }
        }
    }));
}

inline void fock_checks(std::vector<Check> &out) {
    out.push_back(run_check("fock", "ladder commutator", 1e-12, [](Probe &p) {
        for (std::size_t d = 2; d <= 6; ++d) {
            const auto [a, ad] = ladder_ops(FockSpace{d});
            const auto comm = a * ad - ad * a;
            for (std::size_t n = 0; n + 2 <= d; ++n) {
                p.deviation(std::abs(comm(n, n) - Complex(1.0)));
            }
        }
    }));
    out.push_back(run_check("fock", "number operator", 1e-12, [](Probe &p) {
        for (std::size_t d = 2; d <= 6; ++d) {
            const auto [a, ad] = ladder_ops(FockSpace{d});
            ComplexMatrix want(d, d);
            for (std::size_t n = 0; n < d; ++n) {
                want(n, n) = static_cast<double>(n);
            }
            p.deviation(max_abs_diff(ad * a, want));
        }
    }));
    out.push_back(run_check("fock", "fock states are basis vectors", 1e-12, [](Probe &p) {
        for (std::size_t d = 2; d <= 6; ++d) {
            for (std::size_t n = 0; n < d; ++n) {
                const auto v = fock_state(n, FockSpace{d});
                const auto e = ComplexVector::basis(d, n);
                for (std::size_t k = 0; k < d; ++k) {
                    p.deviation(std::abs(v[k] - e[k]));
                }
            }
        }
    }));
    out.push_back(run_check("fock", "wavefunction orthonormality", 1e-8, [](Probe &p) {
        const FockSpace space{};
        for (int m = 0; m < 2; ++m) {
            for (int n = 0; n < 2; ++n) {
                const double v = integrate_simpson(
                    [&](double x) { return wavefunction(m, x, space) * wavefunction(n, x, space); },
                    -10.0, 10.0, 2000);
                p.deviation(std::abs(v - (m == n ? 1.0 : 0.0)));
            }
        }
    }));
    out.push_back(run_check("fock", "reduction independent of truncation", 0.0, [](Probe &p) {
        const auto h2 = reduce_to_qubit(sq_hadamard(FockSpace{2}));
        const auto hh2 = reduce_to_qubit(sq_hadamard_on_first(FockSpace{2}));
        for (std::size_t d = 3; d <= 6; ++d) {
            p.deviation(max_abs_diff(reduce_to_qubit(sq_hadamard(FockSpace{d})), h2));
            p.deviation(max_abs_diff(reduce_to_qubit(sq_hadamard_on_first(FockSpace{d})), hh2));
        }
    }));
    out.push_back(run_check("fock", "reduced pipeline reproduces the tables", 1e-12, [](Probe &p) {
        const auto t2 = reference::tau2_tables();
        const auto t3 = reference::tau3_tables();
        for (std::size_t d = 2; d <= 6; ++d) {
            const auto ops = deutsch::HadamardOperators::second_quantized(FockSpace{d});
            for (std::size_t k = 0; k < 4; ++k) {
                const auto run = deutsch::run(kAllOracles[k], ops);
                p.deviation(max_abs_diff(run.trace.at(deutsch::kTau2).matrix(), t2[k]));
                p.deviation(max_abs_diff(run.trace.at(deutsch::kTau3).matrix(), t3[k]));
                p.require(run.outcome == expected_outcome(kAllOracles[k]),
                          "reduced pipeline gave the wrong outcome");
            }
        }
    }));
}

inline void noise_checks(std::vector<Check> &out) {
    using namespace noise;
    out.push_back(run_check("noise", "closed-form error probabilities", 1e-12, [](Probe &p) {
        p.deviation(std::abs(prob_correct(0.9) - 36.0 / 37.0));
        p.deviation(std::abs(prob_incorrect(0.9) - 1.0 / 37.0));
        p.deviation(std::abs(prob_correct(0.5) - 1.0));
        p.require(prob_correct(1.0) == 1.0, "prob_correct(1) is not exactly 1");
    }));
    out.push_back(run_check("noise", "error curve properties", 1e-12, [](Probe &p) {
        for (int k = 0; k <= 1000; ++k) {
            const double a2 = k / 1000.0;
            const auto row = sweep_row(a2);
            p.deviation(std::abs(row.prob0 + row.prob1 - 1.0));
            if (k > 0 && k < 1000) {
                p.require(row.prob1 < 1.0 - a2, "prob1 not below the single-gate error");
                p.require(row.ratio && *row.ratio >= 0.0 && *row.ratio <= 1.0,
                          "ratio outside [0, 1]");
            }
        }
        p.deviation(std::abs(prob_correct(0.5) - 1.0));
        for (int k = 1; k <= 50; ++k) {
            const double h = k / 1000.0;
            p.require(prob_correct(0.5 - h) <= prob_correct(0.5) &&
                          prob_correct(0.5 + h) <= prob_correct(0.5),
                      "prob0 has no local maximum at 0.5");
        }
        const auto r = sweep_row(1e-4).ratio;
        p.require(r && std::abs(*r - 1.0) <= 0.01, "ratio at 1e-4 not within 0.01 of 1");
    }));
    out.push_back(run_check("noise", "closed form matches the simulator", 1e-10, [](Probe &p) {
        RandomStream rng(2024);
        for (int k = 0; k < 200; ++k) {
            const auto params = NoiseParams::from_probabilities(rng.uniform(), 1.0, rng.uniform());
            const auto amp = final_amplitudes_unitary(params);
            const auto dist = simulate_noisy(kAllOracles[0], params, GateSemantics::unitary);
            p.deviation(std::abs(dist[0] - amp.c0 * amp.c0));
            p.deviation(std::abs(dist[1] - amp.c1 * amp.c1));
        }
    }));
    out.push_back(run_check("noise", "unitary and projection gates differ", 1e-12, [](Probe &p) {
        const auto params = NoiseParams::identical_gates(0.9);
        const double u = simulate_noisy(kAllOracles[0], params, GateSemantics::unitary)[0];
        const double pr = simulate_noisy(kAllOracles[0], params, GateSemantics::projection)[0];
        p.deviation(std::abs(u - 36.0 / 37.0));
        p.deviation(std::abs(pr - 0.82));
        p.require(u - pr > 0.15, "semantics are not separated");
    }));
    out.push_back(run_check("noise", "incoherent flips agree across semantics", 1e-12, [](Probe &p) {
        const ErrorModel model{ErrorKind::incoherent_flip, 0.0};
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const auto params = NoiseParams::from_probabilities(0.1 + 0.2 * i, 1.0, 0.1 + 0.2 * j);
                const auto u = simulate_noisy(kAllOracles[0], params, GateSemantics::unitary, model);
                const auto pr = simulate_noisy(kAllOracles[0], params, GateSemantics::projection, model);
                p.deviation(u.distance(pr));
            }
        }
    }));
    out.push_back(run_check("noise", "projection gates cancel phase errors", 1e-12, [](Probe &p) {
        const auto base = phase_error_experiment(0.0, GateSemantics::projection);
        for (int k = 0; k < 8; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / 8.0;
            p.deviation(phase_error_experiment(phi, GateSemantics::projection).distance(base));
        }
        const auto u0 = phase_error_experiment(0.0, GateSemantics::unitary);
        const auto upi = phase_error_experiment(std::numbers::pi, GateSemantics::unitary);
        p.deviation(std::abs(u0.distance(upi) - 1.0));
    }));
}

inline void mc_checks(std::vector<Check> &out) {
    using namespace noise;
    out.push_back(run_check("mc", "Monte-Carlo frequencies within 4 sigma", 0.0, [](Probe &p) {
        const auto params = NoiseParams::identical_gates(0.9);
        const auto r = mc_run(kAllOracles[0], params, GateSemantics::unitary, {}, 100000, 42);
        p.require(r.within(4.0), "frequency outside 4 sigma");
        const auto a = mc_run(kAllOracles[0], params, GateSemantics::unitary, {}, 2000, 7);
        const auto b = mc_run(kAllOracles[0], params, GateSemantics::unitary, {}, 2000, 7);
        p.require(a.counts == b.counts, "same seed gave different counts");
    }));
}

} // namespace detail

inline bool is_group(std::string_view g) {
    return std::find(kGroups.begin(), kGroups.end(), g) != kGroups.end();
}

inline Report run(const Options &opt = {}) {
    if (opt.only && !is_group(*opt.only)) {
        throw RangeError("unknown check group " + *opt.only);
    }
    if (opt.inject_fault && *opt.inject_fault != "table1") {
        throw RangeError("unknown fault " + *opt.inject_fault);
    }
    const auto want = [&](std::string_view g) { return !opt.only || *opt.only == g; };
    Report report;
    if (want("tables")) detail::tables(opt, report.checks);
    if (want("deutsch")) detail::deutsch_checks(report.checks);
    if (want("core")) detail::core_checks(report.checks);
    if (want("fock")) detail::fock_checks(report.checks);
    if (want("noise")) detail::noise_checks(report.checks);
    if (want("mc")) detail::mc_checks(report.checks);
    return report;
}

} // namespace pev::verify
