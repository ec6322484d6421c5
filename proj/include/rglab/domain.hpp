#pragma once

// Operator-domain membership checks for the two model Hamiltonians:
//   delta:  h = -d^2/dx^2 + lambda*delta(x) on the line, encoded by the
//           derivative-jump condition psi'(0+) - psi'(0-) = lambda*psi(0),
//   radial: h0 = -d^2/dr^2 - 1/r on (0, inf) with psi(0) = 0.
// Applying the operator inside the exp-poly class is exact, so membership
// in D(h^k) is decided exactly, level by level.

#include "rglab/exppoly.hpp"
#include "rglab/jet.hpp"
#include "rglab/rational.hpp"

#include <optional>
#include <stdexcept>

namespace rglab {

enum class DomainCondition { continuity, jump, integrability, singular_term };

inline const char* condition_name(DomainCondition c) {
    switch (c) {
        case DomainCondition::continuity: return "continuity";
        case DomainCondition::jump: return "jump";
        case DomainCondition::integrability: return "integrability";
        case DomainCondition::singular_term: return "singular-term";
    }
    return "?";
}

struct DomainViolation {
    int order = 0; // boundary-condition level j at which the check failed
    DomainCondition condition = DomainCondition::continuity;
};

struct DomainReport {
    int max_order = 0; // largest verified k with f in D(h^k)
    std::optional<DomainViolation> first_violation;

    bool in_domain() const { return !first_violation.has_value(); }
};

template <typename FnT>
struct OperatorResult {
    FnT function; // the formal operator image, returned even when flagged
    DomainReport report;
};

/// -f'' with a D(h_lambda) membership check at level j.
inline OperatorResult<LineFunction> apply_delta_hamiltonian(const LineFunction& f,
                                                            const Rational& lambda,
                                                            int level = 0) {
    OperatorResult<LineFunction> out{LineFunction{}, DomainReport{level, std::nullopt}};

    auto flag = [&](DomainCondition c) {
        if (!out.report.first_violation) out.report.first_violation = DomainViolation{level, c};
    };

    if (has_singular_term(f.left) || has_singular_term(f.right)) {
        flag(DomainCondition::singular_term);
        return out;
    }
    if (!integrable_at_infinity(f.left) || !integrable_at_infinity(f.right))
        flag(DomainCondition::integrability);

    const Rational v_left = value_at_zero(f.left);
    const Rational v_right = value_at_zero(f.right);
    if (v_left != v_right) flag(DomainCondition::continuity);

    const Rational d_left = value_at_zero(differentiate(f.left));
    const Rational d_right = value_at_zero(differentiate(f.right));
    if (d_right - d_left != lambda * v_right) flag(DomainCondition::jump);

    out.function = scale(differentiate(differentiate(f)), Rational(-1));
    out.report.max_order = out.report.in_domain() ? level + 1 : level;
    return out;
}

/// -f'' - f/r with the D(h0) membership check at level j: f(0) = 0 and no
/// surviving singular term in the image. The value condition is reported
/// under DomainCondition::continuity (it is the Dirichlet trace at 0).
inline OperatorResult<HalfLineFunction> apply_radial_hamiltonian(const HalfLineFunction& f,
                                                                 int level = 0) {
    if (f.side != Side::right)
        throw std::invalid_argument("apply_radial_hamiltonian: expects a (0,inf) function");

    OperatorResult<HalfLineFunction> out{hl_zero(Side::right), DomainReport{level, std::nullopt}};

    auto flag = [&](DomainCondition c) {
        if (!out.report.first_violation) out.report.first_violation = DomainViolation{level, c};
    };

    if (has_singular_term(f)) {
        flag(DomainCondition::singular_term);
        return out;
    }
    if (!integrable_at_infinity(f)) flag(DomainCondition::integrability);
    if (value_at_zero(f) != 0) flag(DomainCondition::continuity);

    HalfLineFunction image =
        add(scale(differentiate(differentiate(f)), Rational(-1)), scale(divide_by_x(f), Rational(-1)));
    if (has_singular_term(image)) flag(DomainCondition::singular_term);

    out.function = std::move(image);
    out.report.max_order = out.report.in_domain() ? level + 1 : level;
    return out;
}

/// Largest k <= k_max with f in D(h_lambda^k); iterates the operator.
inline DomainReport domain_order_delta(LineFunction f, const Rational& lambda, int k_max) {
    if (k_max < 1) throw std::invalid_argument("domain_order: k_max must be >= 1");
    DomainReport report{0, std::nullopt};
    for (int k = 0; k < k_max; ++k) {
        auto step = apply_delta_hamiltonian(f, lambda, k);
        if (!step.report.in_domain()) {
            report.first_violation = step.report.first_violation;
            break;
        }
        report.max_order = k + 1;
        f = std::move(step.function);
    }
    return report;
}

inline DomainReport domain_order_radial(HalfLineFunction f, int k_max) {
    if (k_max < 1) throw std::invalid_argument("domain_order: k_max must be >= 1");
    DomainReport report{0, std::nullopt};
    for (int k = 0; k < k_max; ++k) {
        auto step = apply_radial_hamiltonian(f, k);
        if (!step.report.in_domain()) {
            report.first_violation = step.report.first_violation;
            break;
        }
        report.max_order = k + 1;
        f = std::move(step.function);
    }
    return report;
}

} // namespace rglab
