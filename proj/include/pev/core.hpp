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
 * Projection-evolution engine.
 *
 * A state is a density matrix. A step applies an evolution operator E and
 * renormalizes,
 *
 *     rho' = E rho E^dagger / Tr(E rho E^dagger),
 *
 * and a measurement step picks one member of an orthogonal resolution of
 * unity according to the Born weights Tr(E_nu rho E_nu^dagger).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pev/error.hpp"
#include "pev/linalg.hpp"
#include "pev/random.hpp"

namespace pev {

/// Ordinal of an evolution step (tau_0, tau_1, ...).
using StepLabel = int;
/// Opaque outcome identifier (nu). Small integers by convention.
using OutcomeLabel = int;

/// Denominators at or below this value make a branch null.
inline constexpr double kNullBranchThreshold = 1e-14;

namespace detail {

/// True if m + tol*I admits a Cholesky factorization, i.e. no eigenvalue of
/// the Hermitian matrix `m` lies below -tol.
inline bool psd_within(const ComplexMatrix &m, double tol) {
    const std::size_t n = m.rows();
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = m(j, j).real() + tol;
        for (std::size_t k = 0; k < j; ++k) {
            pivot -= std::norm(l(j, k));
        }
        if (!(pivot > 0.0)) {
            return false;
        }
        l(j, j) = std::sqrt(pivot);
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex sum = m(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                sum -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = sum / l(j, j);
        }
    }
    return true;
}

} // namespace detail

/// Hermitian, unit-trace, positive-semidefinite state.
class DensityMatrix {
  public:
    /// Validates the invariants within `tol` and throws InvariantError if any
    /// fails.
    static DensityMatrix from_matrix(ComplexMatrix m, double tol = kDefaultTol) {
        if (!m.is_square()) {
            throw ShapeError("density matrix must be square");
        }
        if (!m.is_finite()) {
            throw InvariantError("density matrix has non-finite entries");
        }
        const double herm = max_abs_diff(m, dagger(m));
        if (herm > tol) {
            std::ostringstream msg;
            msg << "density matrix is not Hermitian (deviation " << herm << ")";
            throw InvariantError(msg.str());
        }
        const double tr_dev = std::abs(trace(m) - Complex(1.0));
        if (tr_dev > tol) {
            std::ostringstream msg;
            msg << "density matrix trace differs from 1 by " << tr_dev;
            throw InvariantError(msg.str());
        }
        if (!detail::psd_within(m, tol)) {
            throw InvariantError("density matrix is not positive semidefinite");
        }
        return DensityMatrix(std::move(m));
    }

    /// |psi><psi| for the normalized `psi`.
    static DensityMatrix pure(const ComplexVector &psi) {
        const auto unit = psi.normalized();
        return DensityMatrix(ComplexMatrix::outer(unit, unit));
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }

    const Complex &operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

enum class OperatorKind {
    unitary_derived,
    projector,
    /// Any other linear map; used for non-unitary noisy gate actions. The
    /// normalized update still applies.
    general,
};

class PevOperator {
  public:
    static PevOperator unitary(ComplexMatrix m,
                               std::optional<StepLabel> tau = std::nullopt,
                               std::optional<OutcomeLabel> nu = std::nullopt) {
        if (!m.is_square() || !is_unitary(m)) {
            throw InvariantError("unitary-derived operator is not unitary");
        }
        return PevOperator(std::move(m), OperatorKind::unitary_derived, tau, nu);
    }

    static PevOperator projector(ComplexMatrix m,
                                 std::optional<StepLabel> tau = std::nullopt,
                                 std::optional<OutcomeLabel> nu = std::nullopt) {
        if (!m.is_square() || !is_hermitian(m) || !approx_eq(m * m, m)) {
            throw InvariantError(
                "projector operator is not Hermitian and idempotent");
        }
        return PevOperator(std::move(m), OperatorKind::projector, tau, nu);
    }

    static PevOperator general(ComplexMatrix m,
                               std::optional<StepLabel> tau = std::nullopt,
                               std::optional<OutcomeLabel> nu = std::nullopt) {
        if (!m.is_square()) {
            throw ShapeError("evolution operator must be square");
        }
        return PevOperator(std::move(m), OperatorKind::general, tau, nu);
    }

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }
    [[nodiscard]] OperatorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::optional<StepLabel> tau() const noexcept { return tau_; }
    [[nodiscard]] std::optional<OutcomeLabel> nu() const noexcept { return nu_; }
    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }

    [[nodiscard]] PevOperator with_tau(StepLabel tau) const {
        PevOperator copy(*this);
        copy.tau_ = tau;
        return copy;
    }

  private:
    PevOperator(ComplexMatrix m, OperatorKind kind, std::optional<StepLabel> tau,
                std::optional<OutcomeLabel> nu)
        : m_(std::move(m)), kind_(kind), tau_(tau), nu_(nu) {}

    ComplexMatrix m_;
    OperatorKind kind_;
    std::optional<StepLabel> tau_;
    std::optional<OutcomeLabel> nu_;
};

/// Tr(E rho E^dagger): the unnormalized weight of the branch.
inline double branch_weight(const DensityMatrix &rho, const ComplexMatrix &e) {
    if (e.cols() != rho.dim()) {
        throw ShapeError("operator and state dimensions differ");
    }
    return trace(e * rho.matrix() * dagger(e)).real();
}

/// Normalized update rho -> E rho E^dagger / Tr(E rho E^dagger).
inline DensityMatrix evolve(const DensityMatrix &rho, const ComplexMatrix &e) {
    if (!e.is_square() || e.cols() != rho.dim()) {
        throw ShapeError("operator and state dimensions differ");
    }
    ComplexMatrix num = e * rho.matrix() * dagger(e);
    const double tr = trace(num).real();
    if (!(tr > kNullBranchThreshold)) {
        std::ostringstream msg;
        msg << "null branch: Tr(E rho E^dagger) = " << tr;
        throw NullBranchError(msg.str());
    }
    num *= Complex(1.0 / tr);
    return DensityMatrix::from_matrix(std::move(num));
}

inline DensityMatrix evolve(const DensityMatrix &rho, const PevOperator &e) {
    return evolve(rho, e.matrix());
}

inline double purity(const DensityMatrix &rho) {
    return trace(rho.matrix() * rho.matrix()).real();
}

class MeasurementFamily {
  public:
    MeasurementFamily(std::vector<PevOperator> operators,
                      std::vector<OutcomeLabel> labels)
        : ops_(std::move(operators)), labels_(std::move(labels)) {
        if (ops_.empty()) {
            throw FamilyError("measurement family is empty");
        }
        if (ops_.size() != labels_.size()) {
            throw FamilyError("one outcome label is required per operator");
        }
        for (const auto &op : ops_) {
            if (op.dim() != ops_.front().dim()) {
                throw FamilyError("family members differ in dimension");
            }
        }
        auto sorted = labels_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw FamilyError("duplicate outcome labels");
        }
    }

    /// Family of projectors with labels 0, 1, ... Matrices that are not valid
    /// projectors are kept as general operators so check_resolution can
    /// report on them.
    static MeasurementFamily from_matrices(std::vector<ComplexMatrix> mats) {
        std::vector<PevOperator> ops;
        std::vector<OutcomeLabel> labels;
        for (std::size_t k = 0; k < mats.size(); ++k) {
            const auto nu = static_cast<OutcomeLabel>(k);
            try {
                ops.push_back(PevOperator::projector(mats[k], std::nullopt, nu));
            } catch (const InvariantError &) {
                ops.push_back(PevOperator::general(mats[k], std::nullopt, nu));
            }
            labels.push_back(nu);
        }
        return MeasurementFamily(std::move(ops), std::move(labels));
    }

    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return ops_.front().dim(); }
    [[nodiscard]] const std::vector<PevOperator> &operators() const noexcept {
        return ops_;
    }
    [[nodiscard]] const std::vector<OutcomeLabel> &labels() const noexcept {
        return labels_;
    }

  private:
    std::vector<PevOperator> ops_;
    std::vector<OutcomeLabel> labels_;
};

struct ConditionReport {
    bool passed = false;
    double max_violation = 0.0;
};

struct ResolutionReport {
    ConditionReport hermiticity;
    /// E_nu E_nu' = delta_{nu nu'} E_nu, covering idempotence as well.
    ConditionReport orthogonality;
    ConditionReport completeness;

    [[nodiscard]] bool ok() const noexcept {
        return hermiticity.passed && orthogonality.passed &&
               completeness.passed;
    }
};

inline ResolutionReport check_resolution(const MeasurementFamily &family,
                                         double tol = kDefaultTol) {
    ResolutionReport report;
    const auto &ops = family.operators();
    const std::size_t n = family.dim();
    ComplexMatrix sum(n, n);
    for (std::size_t a = 0; a < ops.size(); ++a) {
        const auto &ea = ops[a].matrix();
        report.hermiticity.max_violation = std::max(
            report.hermiticity.max_violation, max_abs_diff(ea, dagger(ea)));
        for (std::size_t b = 0; b < ops.size(); ++b) {
            const auto &eb = ops[b].matrix();
            const ComplexMatrix expected = a == b ? ea : ComplexMatrix(n, n);
            report.orthogonality.max_violation =
                std::max(report.orthogonality.max_violation,
                         max_abs_diff(ea * eb, expected));
        }
        sum += ea;
    }
    report.completeness.max_violation =
        max_abs_diff(sum, ComplexMatrix::identity(n));
    report.hermiticity.passed = report.hermiticity.max_violation <= tol;
    report.orthogonality.passed = report.orthogonality.max_violation <= tol;
    report.completeness.passed = report.completeness.max_violation <= tol;
    return report;
}

struct Outcome {
    OutcomeLabel label;
    double probability;
};

inline std::vector<Outcome> outcome_distribution(const DensityMatrix &rho,
                                                 const MeasurementFamily &family) {
    if (family.dim() != rho.dim()) {
        throw ShapeError("family and state dimensions differ");
    }
    if (!check_resolution(family).ok()) {
        throw FamilyError("family is not an orthogonal resolution of unity");
    }
    std::vector<Outcome> dist;
    dist.reserve(family.size());
    for (std::size_t k = 0; k < family.size(); ++k) {
        dist.push_back({family.labels()[k],
                        branch_weight(rho, family.operators()[k].matrix())});
    }
    return dist;
}

/// Probability of `label` in a distribution, 0 if absent.
inline double probability_of(const std::vector<Outcome> &dist,
                             OutcomeLabel label) {
    for (const auto &o : dist) {
        if (o.label == label) {
            return o.probability;
        }
    }
    return 0.0;
}

struct MeasuredState {
    OutcomeLabel label;
    double probability;
    DensityMatrix state;
};

/// Samples an outcome by inverse CDF over the family order and returns the
/// renormalized post-measurement state.
inline MeasuredState apply_family(const DensityMatrix &rho,
                                  const MeasurementFamily &family,
                                  RandomStream &rng) {
    const auto dist = outcome_distribution(rho, family);
    double total = 0.0;
    for (const auto &o : dist) {
        total += std::max(0.0, o.probability);
    }
    if (!(total > kNullBranchThreshold)) {
        throw FamilyError("every outcome has zero probability");
    }
    const double u = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t chosen = dist.size();
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double p = std::max(0.0, dist[k].probability);
        if (p <= kNullBranchThreshold) {
            continue;
        }
        chosen = k;
        cumulative += p;
        if (u < cumulative) {
            break;
        }
    }
    const auto &op = family.operators()[chosen];
    return {dist[chosen].label, dist[chosen].probability / total,
            evolve(rho, op)};
}

struct TraceStep {
    StepLabel tau;
    std::optional<OutcomeLabel> nu;
    DensityMatrix state;
    double probability = 1.0;
};

/// Ordered record of the states visited by one evolution.
class EvolutionTrace {
  public:
    void push(TraceStep step) {
        if (!steps_.empty() && step.tau <= steps_.back().tau) {
            throw InvariantError("trace step labels must strictly increase");
        }
        if (!(step.probability >= 0.0 && step.probability <= 1.0)) {
            throw InvariantError("branch probability outside [0, 1]");
        }
        steps_.push_back(std::move(step));
    }

    [[nodiscard]] const std::vector<TraceStep> &steps() const noexcept {
        return steps_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return steps_.size(); }

    /// State recorded at step `tau`; throws RangeError if absent.
    [[nodiscard]] const DensityMatrix &at(StepLabel tau) const {
        for (const auto &s : steps_) {
            if (s.tau == tau) {
                return s.state;
            }
        }
        throw RangeError("no trace step with tau = " + std::to_string(tau));
    }

    [[nodiscard]] const TraceStep &back() const { return steps_.back(); }

  private:
    std::vector<TraceStep> steps_;
};

} // namespace pev
