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
 * Error propagation through noisy Hadamard gates.
 *
 * A noisy gate with amplitudes (c, s), c^2 + s^2 = 1, produces its intended
 * output with amplitude c and an erroneous output with amplitude s. Three
 * error models and two gate semantics are supported:
 *
 *  - unitary semantics, coherent flip: the gate acts linearly as
 *    c G + s G X (it misreads its input). The map is not unitary, so the
 *    normalized update rescales the state.
 *  - unitary semantics, phase: c G + s P(phi) G with P(phi) = diag(1, e^{i phi}).
 *  - projection semantics: the gate computes its result, measures the
 *    logical value in the frame {|g>, |g_perp>} spanned by its intended
 *    output |g>, and emits the measured clean state. A coherent flip enters
 *    the measurement as c|g> + s|g_perp>; a phase error does not change the
 *    logical value and is therefore removed by the measurement.
 *  - incoherent flip (either semantics): the gate emits |g> with weight c^2
 *    and |g_perp> with weight s^2 as a classical mixture. The extra
 *    measurement of projection semantics then changes nothing.
 *
 * Exact results enumerate every branch; the Monte-Carlo path samples one
 * branch per split from a per-trial random stream.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pev/core.hpp"
#include "pev/error.hpp"
#include "pev/gates.hpp"
#include "pev/linalg.hpp"
#include "pev/random.hpp"

namespace pev::noise {

/// Real, nonnegative amplitudes of the three noisy Hadamards: H1 (first
/// line, first gate), H2 (second line), H3 (first line, second gate).
struct NoiseParams {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 1.0;
    double delta = 0.0;
    double mu = 1.0;
    double kappa = 0.0;

    void validate(double tol = kDefaultTol) const {
        for (double v : {alpha, beta, gamma, delta, mu, kappa}) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw RangeError("noise amplitudes must lie in [0, 1]");
            }
        }
        auto check = [tol](double x, double y, const char *name) {
            if (std::abs(x * x + y * y - 1.0) > tol) {
                throw RangeError(std::string("amplitudes of ") + name +
                                 " are not normalized");
            }
        };
        check(alpha, beta, "H1");
        check(gamma, delta, "H2");
        check(mu, kappa, "H3");
    }

    static NoiseParams noiseless() { return {}; }

    /// Success probabilities of the three gates; amplitudes are their roots.
    static NoiseParams from_probabilities(double p1, double p2, double p3) {
        for (double p : {p1, p2, p3}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw RangeError("gate success probability outside [0, 1]");
            }
        }
        return {std::sqrt(p1), std::sqrt(1.0 - p1), std::sqrt(p2),
                std::sqrt(1.0 - p2), std::sqrt(p3), std::sqrt(1.0 - p3)};
    }

    /// H1 and H3 with the same success probability; H2 error-free.
    static NoiseParams identical_gates(double alpha2) {
        return from_probabilities(alpha2, 1.0, alpha2);
    }
};

enum class GateSemantics { unitary, projection };

enum class ErrorKind { coherent_flip, incoherent_flip, phase };

struct ErrorModel {
    ErrorKind kind = ErrorKind::coherent_flip;
    /// Radians in [0, 2 pi); used by ErrorKind::phase only.
    double phase = 0.0;

    void validate() const {
        if (!(phase >= 0.0 && phase < 2.0 * std::numbers::pi)) {
            throw RangeError("phase angle must lie in [0, 2 pi)");
        }
    }
};

inline std::string to_string(GateSemantics s) {
    return s == GateSemantics::unitary ? "unitary" : "projection";
}

inline std::string to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::coherent_flip:
        return "coherent";
    case ErrorKind::incoherent_flip:
        return "incoherent";
    case ErrorKind::phase:
        return "phase";
    }
    return "?";
}

inline GateSemantics semantics_from_string(std::string_view s) {
    if (s == "unitary") return GateSemantics::unitary;
    if (s == "projection") return GateSemantics::projection;
    throw RangeError("unknown gate semantics " + std::string(s));
}

inline ErrorKind error_kind_from_string(std::string_view s) {
    if (s == "coherent" || s == "coherent_flip") return ErrorKind::coherent_flip;
    if (s == "incoherent" || s == "incoherent_flip")
        return ErrorKind::incoherent_flip;
    if (s == "phase") return ErrorKind::phase;
    throw RangeError("unknown error model " + std::string(s));
}

/// Distribution of the measured bit.
struct BitDistribution {
    std::array<double, 2> p{0.0, 0.0};

    [[nodiscard]] double operator[](int bit) const { return p.at(bit); }

    /// Total-variation distance.
    [[nodiscard]] double distance(const BitDistribution &o) const {
        return 0.5 * (std::abs(p[0] - o.p[0]) + std::abs(p[1] - o.p[1]));
    }
};

// --------------------------------------------------------------------------
// Closed forms (error-free oracle f1, error-free H2).

/// Two-qubit register after the oracle for f1:
/// [a(|0>+|1>) + b(|0>-|1>)]/sqrt2 (x) [g(|0>-|1>) + d(|0>+|1>)]/sqrt2.
inline ComplexVector state_tau2(const NoiseParams &p) {
    p.validate();
    const double r = 1.0 / std::numbers::sqrt2;
    const ComplexVector first{r * (p.alpha + p.beta), r * (p.alpha - p.beta)};
    const ComplexVector second{r * (p.gamma + p.delta), r * (p.delta - p.gamma)};
    return kron(first, second);
}

struct FirstLineAmplitudes {
    double c0;
    double c1;
};

/// psi_1(tau_3) = N [a (m + k)|0> + b (m - k)|1>],
/// N = [1 + 2 m k (a^2 - b^2)]^{-1/2}.
inline FirstLineAmplitudes final_amplitudes_unitary(const NoiseParams &p) {
    p.validate();
    const double denom =
        1.0 + 2.0 * p.mu * p.kappa * (p.alpha * p.alpha - p.beta * p.beta);
    if (!(denom > kNullBranchThreshold)) {
        throw NullBranchError("first-line state vanishes after H3");
    }
    const double n = 1.0 / std::sqrt(denom);
    return {n * p.alpha * (p.mu + p.kappa), n * p.beta * (p.mu - p.kappa)};
}

namespace detail {

inline void check_alpha2(double alpha2) {
    if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) {
        throw RangeError("alpha^2 must lie in [0, 1]");
    }
}

inline double identical_gates_denominator(double alpha2) {
    const double a = std::sqrt(alpha2);
    const double b = std::sqrt(1.0 - alpha2);
    return 1.0 + 2.0 * a * b * (2.0 * alpha2 - 1.0);
}

} // namespace detail

/// Prob(|0>) when H1 and H3 share the success probability alpha^2.
inline double prob_correct(double alpha2) {
    detail::check_alpha2(alpha2);
    const double a = std::sqrt(alpha2);
    const double b = std::sqrt(1.0 - alpha2);
    // Rounding can push the quotient one ulp above 1 near alpha^2 = 1/2.
    return std::min(1.0, alpha2 * (a + b) * (a + b) /
                             detail::identical_gates_denominator(alpha2));
}

/// Prob(|1>) when H1 and H3 share the success probability alpha^2. The
/// numerator (alpha^2 - 1)(2ab - 1) is evaluated as (1 - alpha^2)(a - b)^2,
/// which is the same quantity but cannot round below zero.
inline double prob_incorrect(double alpha2) {
    detail::check_alpha2(alpha2);
    const double a = std::sqrt(alpha2);
    const double b = std::sqrt(1.0 - alpha2);
    return (1.0 - alpha2) * (a - b) * (a - b) /
           detail::identical_gates_denominator(alpha2);
}

struct SweepRow {
    double alpha2 = 0.0;
    double prob0 = 0.0;
    double prob1 = 0.0;
    double single_gate_err = 0.0;
    /// prob1 / single_gate_err; absent where the single-gate error vanishes.
    std::optional<double> ratio;
};

inline constexpr double kRatioCutoff = 1e-12;

inline SweepRow sweep_row(double alpha2) {
    SweepRow row;
    row.alpha2 = alpha2;
    row.prob0 = prob_correct(alpha2);
    row.prob1 = prob_incorrect(alpha2);
    row.single_gate_err = 1.0 - alpha2;
    if (row.single_gate_err >= kRatioCutoff) {
        row.ratio = row.prob1 / row.single_gate_err;
    }
    return row;
}

/// Evenly spaced alpha^2 grid from `from` to `to` inclusive.
inline std::vector<SweepRow> sweep(double from, double to, std::size_t steps) {
    if (!(from >= 0.0 && to <= 1.0 && from < to)) {
        throw RangeError("sweep range must satisfy 0 <= from < to <= 1");
    }
    if (steps < 2) {
        throw RangeError("sweep needs at least two steps");
    }
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    const double h = (to - from) / static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
        const double a = k + 1 == steps ? to : from + h * static_cast<double>(k);
        rows.push_back(sweep_row(a));
    }
    return rows;
}

// --------------------------------------------------------------------------
// Branch simulator.

/// Single-qubit gate with error amplitudes (c, s).
struct NoisyGate {
    std::size_t qubit = 0;
    ComplexMatrix ideal = hadamard_matrix();
    double correct = 1.0;
    double error = 0.0;
};

/// Error-free operator on the whole register.
struct FixedGate {
    ComplexMatrix matrix;
};

using CircuitOp = std::variant<NoisyGate, FixedGate>;

struct NoisyCircuit {
    std::size_t n_qubits = 2;
    DensityMatrix input = DensityMatrix::pure(ComplexVector{1.0, 0.0});
    std::vector<CircuitOp> ops;
    std::size_t measured_qubit = 0;
};

/// Deutsch circuit for `f` with the three noisy Hadamards of `p`.
inline NoisyCircuit deutsch_circuit(const OracleFunction &f,
                                    const NoiseParams &p) {
    p.validate();
    NoisyCircuit c{2,
                   DensityMatrix::pure(kron(ComplexVector{1.0, 0.0},
                                            ComplexVector{0.0, 1.0})),
                   {},
                   0};
    c.ops.emplace_back(NoisyGate{0, hadamard_matrix(), p.alpha, p.beta});
    c.ops.emplace_back(NoisyGate{1, hadamard_matrix(), p.gamma, p.delta});
    c.ops.emplace_back(FixedGate{oracle_pev(f).matrix()});
    c.ops.emplace_back(NoisyGate{0, hadamard_matrix(), p.mu, p.kappa});
    return c;
}

struct Branch {
    double weight;
    DensityMatrix state;
};

namespace detail {

inline ComplexMatrix phase_matrix(double phi) {
    return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, phi)}};
}

/// Linear action of a noisy gate under unitary semantics.
inline ComplexMatrix coherent_action(const NoisyGate &g, const ErrorModel &m) {
    const ComplexMatrix erroneous = m.kind == ErrorKind::phase
                                        ? phase_matrix(m.phase) * g.ideal
                                        : g.ideal * not_matrix();
    return Complex(g.correct) * g.ideal + Complex(g.error) * erroneous;
}

/// Intended output |g> of the gate on `qubit`, read off the reduced state of
/// the ideal output, plus its orthogonal partner.
struct LogicalFrame {
    ComplexVector g;
    ComplexVector g_perp;
};

inline LogicalFrame logical_frame(const DensityMatrix &ideal_out,
                                  std::size_t qubit, std::size_t n_qubits) {
    const auto red = partial_trace_keep(ideal_out.matrix(), qubit, n_qubits);
    const double pur = trace(red * red).real();
    if (pur < 1.0 - 1e-9) {
        std::ostringstream msg;
        msg << "gate output on qubit " << qubit
            << " is not a pure single-qubit state (purity " << pur
            << "); the logical frame is undefined";
        throw ModelError(msg.str());
    }
    const std::size_t k = red(0, 0).real() >= red(1, 1).real() ? 0 : 1;
    const double scale = 1.0 / std::sqrt(red(k, k).real());
    ComplexVector g{red(0, k) * scale, red(1, k) * scale};
    ComplexVector g_perp{-std::conj(g[1]), std::conj(g[0])};
    return {std::move(g), std::move(g_perp)};
}

/// What a noisy gate hands to the sampler: weighted candidate states and,
/// for projection semantics, the measurement applied to each of them.
struct GateStage {
    std::vector<Branch> candidates;
    std::optional<MeasurementFamily> measurement;
};

inline GateStage stage_gate(const DensityMatrix &rho, const NoisyGate &g,
                            std::size_t n_qubits, GateSemantics sem,
                            const ErrorModel &model) {
    GateStage stage;
    auto lift = [&](const ComplexMatrix &local) {
        return embed_single_qubit(local, g.qubit, n_qubits);
    };

    const bool coherent_linear = model.kind != ErrorKind::incoherent_flip &&
                                 sem == GateSemantics::unitary;
    if (coherent_linear) {
        const auto e = lift(coherent_action(g, model));
        if (branch_weight(rho, e) > kNullBranchThreshold) {
            stage.candidates.push_back({1.0, evolve(rho, e)});
        }
        return stage;
    }

    const auto ideal_out = evolve(rho, lift(g.ideal));
    const auto frame = logical_frame(ideal_out, g.qubit, n_qubits);
    const auto pg = ComplexMatrix::outer(frame.g, frame.g);
    const auto pperp = ComplexMatrix::outer(frame.g_perp, frame.g_perp);
    // Swaps |g> and |g_perp>.
    const auto flip = ComplexMatrix::outer(frame.g_perp, frame.g) +
                      ComplexMatrix::outer(frame.g, frame.g_perp);

    switch (model.kind) {
    case ErrorKind::incoherent_flip: {
        const double wc = g.correct * g.correct;
        const double we = g.error * g.error;
        if (wc > 0.0) {
            stage.candidates.push_back({wc, ideal_out});
        }
        if (we > 0.0) {
            stage.candidates.push_back({we, evolve(ideal_out, lift(flip))});
        }
        break;
    }
    case ErrorKind::coherent_flip: {
        // Rotation |g> -> c|g> + s|g_perp> inside the logical frame.
        const auto rot = Complex(g.correct) * ComplexMatrix::identity(2) +
                         Complex(g.error) * (ComplexMatrix::outer(frame.g_perp, frame.g) -
                                             ComplexMatrix::outer(frame.g, frame.g_perp));
        stage.candidates.push_back({1.0, evolve(ideal_out, lift(rot))});
        break;
    }
    case ErrorKind::phase:
        stage.candidates.push_back({1.0, ideal_out});
        break;
    }

    if (sem == GateSemantics::projection) {
        stage.measurement.emplace(
            std::vector<PevOperator>{PevOperator::projector(lift(pg), std::nullopt, 0),
                                     PevOperator::projector(lift(pperp), std::nullopt, 1)},
            std::vector<OutcomeLabel>{0, 1});
    }
    return stage;
}

/// Every branch after the stage, with measurement outcomes enumerated.
inline std::vector<Branch> enumerate_stage(const GateStage &stage, double weight) {
    std::vector<Branch> out;
    for (const auto &cand : stage.candidates) {
        const double w = weight * cand.weight;
        if (!stage.measurement) {
            out.push_back({w, cand.state});
            continue;
        }
        const auto dist = outcome_distribution(cand.state, *stage.measurement);
        for (std::size_t k = 0; k < dist.size(); ++k) {
            if (dist[k].probability <= kNullBranchThreshold) {
                continue;
            }
            out.push_back({w * dist[k].probability,
                           evolve(cand.state, stage.measurement->operators()[k])});
        }
    }
    return out;
}

inline void validate_circuit(const NoisyCircuit &c) {
    if (c.input.dim() != (std::size_t{1} << c.n_qubits)) {
        throw ShapeError("circuit input does not match the register size");
    }
    if (c.measured_qubit >= c.n_qubits) {
        throw RangeError("measured qubit out of range");
    }
    for (const auto &op : c.ops) {
        if (const auto *g = std::get_if<NoisyGate>(&op)) {
            if (g->qubit >= c.n_qubits) {
                throw RangeError("gate qubit out of range");
            }
            if (std::abs(g->correct * g->correct + g->error * g->error - 1.0) >
                kDefaultTol) {
                throw RangeError("gate amplitudes are not normalized");
            }
        }
    }
}

} // namespace detail

/// Exact outcome distribution of the measured qubit, by enumerating every
/// branch of the circuit. Null branches carry no weight.
inline BitDistribution simulate_circuit(const NoisyCircuit &circuit,
                                        GateSemantics sem,
                                        const ErrorModel &model) {
    model.validate();
    detail::validate_circuit(circuit);
    std::vector<Branch> branches{{1.0, circuit.input}};
    for (const auto &op : circuit.ops) {
        std::vector<Branch> next;
        for (const auto &b : branches) {
            if (const auto *fixed = std::get_if<FixedGate>(&op)) {
                next.push_back({b.weight, evolve(b.state, fixed->matrix)});
                continue;
            }
            const auto stage = detail::stage_gate(b.state, std::get<NoisyGate>(op),
                                                  circuit.n_qubits, sem, model);
            auto expanded = detail::enumerate_stage(stage, b.weight);
            next.insert(next.end(), std::make_move_iterator(expanded.begin()),
                        std::make_move_iterator(expanded.end()));
        }
        branches = std::move(next);
    }

    const auto family = computational_family(circuit.measured_qubit, circuit.n_qubits);
    BitDistribution dist;
    double total = 0.0;
    for (const auto &b : branches) {
        const auto outcomes = outcome_distribution(b.state, family);
        dist.p[0] += b.weight * probability_of(outcomes, 0);
        dist.p[1] += b.weight * probability_of(outcomes, 1);
        total += b.weight;
    }
    if (!(total > kNullBranchThreshold)) {
        throw ModelError("every branch of the noisy circuit is null");
    }
    dist.p[0] /= total;
    dist.p[1] /= total;
    return dist;
}

/// Exact distribution of the first-register measurement of the Deutsch
/// circuit with noisy Hadamards.
inline BitDistribution simulate_noisy(const OracleFunction &f,
                                      const NoiseParams &params,
                                      GateSemantics sem,
                                      const ErrorModel &model = {}) {
    return simulate_circuit(deutsch_circuit(f, params), sem, model);
}

/// One line, H1 -> H3 -> measure, on |0>. H1 always commits a phase error
/// e^{i phi} on its |1> component; H3 is error-free.
inline NoisyCircuit phase_error_circuit() {
    NoisyCircuit c;
    c.n_qubits = 1;
    c.input = DensityMatrix::pure(ComplexVector{1.0, 0.0});
    c.ops.emplace_back(NoisyGate{0, hadamard_matrix(), 0.0, 1.0});
    c.ops.emplace_back(NoisyGate{0, hadamard_matrix(), 1.0, 0.0});
    c.measured_qubit = 0;
    return c;
}

inline BitDistribution phase_error_experiment(double phi, GateSemantics sem) {
    return simulate_circuit(phase_error_circuit(), sem,
                            ErrorModel{ErrorKind::phase, phi});
}

// --------------------------------------------------------------------------
// Monte Carlo.

struct McResult {
    std::size_t trials = 0;
    std::array<std::size_t, 2> counts{0, 0};
    BitDistribution empirical;
    BitDistribution exact;
    /// sqrt(p (1 - p) / trials) with p the exact probability of outcome 1.
    double sigma = 0.0;

    /// |empirical - exact| <= k sigma on outcome 1 (exact equality when
    /// sigma is 0).
    [[nodiscard]] bool within(double k = 4.0) const {
        return std::abs(empirical[1] - exact[1]) <= k * sigma + 1e-15;
    }
};

namespace detail {

inline std::size_t sample_index(const std::vector<Branch> &cands,
                                RandomStream &rng) {
    double total = 0.0;
    for (const auto &c : cands) {
        total += c.weight;
    }
    const double u = rng.uniform() * total;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        cumulative += cands[k].weight;
        if (u < cumulative) {
            return k;
        }
    }
    return cands.size() - 1;
}

/// One stochastic realization; returns the measured bit, or nullopt if the
/// trajectory hit a null branch.
inline std::optional<int> sample_trajectory(const NoisyCircuit &circuit,
                                            GateSemantics sem,
                                            const ErrorModel &model,
                                            const MeasurementFamily &final_family,
                                            RandomStream &rng) {
    DensityMatrix rho = circuit.input;
    for (const auto &op : circuit.ops) {
        if (const auto *fixed = std::get_if<FixedGate>(&op)) {
            rho = evolve(rho, fixed->matrix);
            continue;
        }
        const auto stage = stage_gate(rho, std::get<NoisyGate>(op),
                                      circuit.n_qubits, sem, model);
        if (stage.candidates.empty()) {
            return std::nullopt;
        }
        rho = stage.candidates[sample_index(stage.candidates, rng)].state;
        if (stage.measurement) {
            rho = apply_family(rho, *stage.measurement, rng).state;
        }
    }
    return apply_family(rho, final_family, rng).label;
}

} // namespace detail

/// Frequencies over `trials` stochastic runs. Trial t draws from stream t of
/// `seed`, so the trial range can be partitioned freely.
inline McResult mc_run_circuit(const NoisyCircuit &circuit, GateSemantics sem,
                               const ErrorModel &model, std::size_t trials,
                               std::uint64_t seed) {
    if (trials == 0) {
        throw RangeError("Monte-Carlo run needs at least one trial");
    }
    McResult res;
    res.trials = trials;
    res.exact = simulate_circuit(circuit, sem, model);
    const auto family = computational_family(circuit.measured_qubit, circuit.n_qubits);
    const RandomStream root(seed);
    std::size_t valid = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = root.split(t);
        if (const auto bit = detail::sample_trajectory(circuit, sem, model, family, rng)) {
            ++res.counts.at(static_cast<std::size_t>(*bit));
            ++valid;
        }
    }
    if (valid == 0) {
        throw ModelError("every Monte-Carlo trajectory was null");
    }
    res.empirical.p[0] = static_cast<double>(res.counts[0]) / static_cast<double>(valid);
    res.empirical.p[1] = static_cast<double>(res.counts[1]) / static_cast<double>(valid);
    const double p = res.exact[1];
    res.sigma = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(valid));
    return res;
}

inline McResult mc_run(const OracleFunction &f, const NoiseParams &params,
                       GateSemantics sem, const ErrorModel &model,
                       std::size_t trials, std::uint64_t seed) {
    return mc_run_circuit(deutsch_circuit(f, params), sem, model, trials, seed);
}

} // namespace pev::noise
