#pragma once

// The boundary-condition induction for the 1D delta interaction, run as an
// exact linear system. Unknowns are the one-sided derivatives V^(j)(0-),
// V^(j)(0+) of a multiplying potential. Constraints: V*psi must satisfy the
// same derivative-jump boundary conditions as psi,
//     (Vpsi)^(2j)(0-)  = (Vpsi)^(2j)(0+),
//     (Vpsi)^(2j+1)(0+) - (Vpsi)^(2j+1)(0-) = lambda * (Vpsi)^(2j)(0),
// for a spanning family of psi-jets that themselves satisfy those
// conditions. The null space then shows which derivatives of V are forced
// to vanish at the origin.

#include "rglab/linsys.hpp"
#include "rglab/rational.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace rglab {

struct JetSystemResult {
    int k_max = 0;
    int jet_order = 0;                 // one-sided jets carry orders 0..jet_order
    std::vector<Rational> lambdas;     // probe values, all nonzero
    std::set<int> forced_zero_orders;  // j >= 1 with V^(j)(0-) = V^(j)(0+) = 0 forced
    std::set<int> continuous_orders;   // j with V^(j)(0-) = V^(j)(0+) forced
    std::size_t solution_dimension = 0;
};

namespace detail {

// One admissible psi-jet: even-order slots are two-sided values, odd-order
// slots satisfy the jump rule odd+(j) = odd-(j) + lambda * even(j).
struct PsiJet {
    std::vector<Rational> minus; // psi^(m)(0-), m = 0..order
    std::vector<Rational> plus;  // psi^(m)(0+)
};

inline std::vector<PsiJet> spanning_psi_jets(int max_order, const Rational& lambda) {
    std::vector<PsiJet> jets;
    const auto n = static_cast<std::size_t>(max_order) + 1;
    for (int m = 0; m <= max_order; m += 2) { // even basis slot: value 1 both sides
        PsiJet jet{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0))};
        jet.minus[static_cast<std::size_t>(m)] = 1;
        jet.plus[static_cast<std::size_t>(m)] = 1;
        if (m + 1 <= max_order) jet.plus[static_cast<std::size_t>(m) + 1] = lambda;
        jets.push_back(std::move(jet));
    }
    for (int m = 1; m <= max_order; m += 2) { // odd basis slot: slope 1 both sides
        PsiJet jet{std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0))};
        jet.minus[static_cast<std::size_t>(m)] = 1;
        jet.plus[static_cast<std::size_t>(m)] = 1;
        jets.push_back(std::move(jet));
    }
    return jets;
}

// Columns: [V^(0..maxo)(0-), V^(0..maxo)(0+)].
inline IntegerEchelon build_jet_system(int k_max, const Rational& lambda) {
    const int maxo = 2 * k_max + 3;
    const auto nv = static_cast<std::size_t>(maxo) + 1;
    IntegerEchelon echelon(2 * nv);

    const BigInt lam_den = denominator(lambda);

    for (const auto& psi : spanning_psi_jets(maxo, lambda)) {
        // Rows are built with rational psi-jet entries whose denominators
        // divide lam_den^2; scale up front to keep everything integral.
        const BigInt scale = lam_den * lam_den;
        auto coupled = [&](const Rational& r) {
            Rational s = r * Rational(scale);
            if (denominator(s) != 1) throw std::logic_error("jet system: non-integral row entry");
            return numerator(s);
        };

        // Leibniz coefficient of V^(i)(0 side) in (V psi)^(m)(0 side).
        auto leibniz = [&](int m, int i, const std::vector<Rational>& jet) {
            return Rational(binomial(m, i)) * jet[static_cast<std::size_t>(m - i)];
        };

        for (int j = 0; 2 * j + 1 <= maxo; ++j) {
            const int even = 2 * j;
            const int odd = 2 * j + 1;

            // continuity of (V psi)^(2j)
            std::vector<BigInt> row_c(2 * nv, BigInt(0));
            for (int i = 0; i <= even; ++i) {
                row_c[static_cast<std::size_t>(i)] += coupled(leibniz(even, i, psi.minus));
                row_c[nv + static_cast<std::size_t>(i)] -= coupled(leibniz(even, i, psi.plus));
            }
            echelon.insert(std::move(row_c));

            // jump of (V psi)^(2j+1) against lambda * (V psi)^(2j)(0+)
            std::vector<BigInt> row_j(2 * nv, BigInt(0));
            for (int i = 0; i <= odd; ++i) {
                row_j[nv + static_cast<std::size_t>(i)] += coupled(leibniz(odd, i, psi.plus));
                row_j[static_cast<std::size_t>(i)] -= coupled(leibniz(odd, i, psi.minus));
            }
            for (int i = 0; i <= even; ++i)
                row_j[nv + static_cast<std::size_t>(i)] -= coupled(lambda * leibniz(even, i, psi.plus));
            echelon.insert(std::move(row_j));
        }
        // maxo = 2*k_max + 3 is odd, so the paired loop covers every even
        // order 2j <= maxo - 1 and every odd order 2j+1 <= maxo.
    }
    return echelon;
}

struct SingleLambdaOutcome {
    std::set<int> forced_zero;
    std::set<int> continuous;
    std::size_t dimension = 0;
};

inline SingleLambdaOutcome analyze_lambda(int k_max, const Rational& lambda) {
    const int maxo = 2 * k_max + 3;
    const auto nv = static_cast<std::size_t>(maxo) + 1;
    IntegerEchelon echelon = build_jet_system(k_max, lambda);

    // Constant potentials commute with everything; if V = 1 failed the
    // system the assembly would be wrong.
    std::vector<Rational> constant(2 * nv, Rational(0));
    constant[0] = 1;
    constant[nv] = 1;
    if (!echelon.satisfied_by(constant))
        throw std::logic_error("jet system inconsistent: constant potential rejected");

    auto basis = echelon.nullspace_basis();
    SingleLambdaOutcome out;
    out.dimension = basis.size();
    for (int j = 0; j <= maxo; ++j) {
        const auto jm = static_cast<std::size_t>(j);
        const bool zero_minus = IntegerEchelon::forced_zero(basis, jm);
        const bool zero_plus = IntegerEchelon::forced_zero(basis, nv + jm);
        if (j >= 1 && zero_minus && zero_plus) out.forced_zero.insert(j);
        bool continuous = true;
        for (const auto& v : basis)
            if (v[jm] != v[nv + jm]) {
                continuous = false;
                break;
            }
        if (continuous) out.continuous.insert(j);
    }
    return out;
}

} // namespace detail

/// Forced derivative orders of a multiplying potential compatible with the
/// delta boundary conditions, certified per probe lambda and required to be
/// lambda-independent.
inline JetSystemResult potential_compatibility_delta(
    int k_max, std::vector<Rational> lambdas = {Rational(-2), Rational(-1), Rational(1), Rational(3)}) {
    if (k_max < 2) throw std::invalid_argument("potential_compatibility_delta: k_max must be >= 2");
    if (lambdas.empty()) throw std::invalid_argument("potential_compatibility_delta: empty probe set");
    for (const auto& l : lambdas)
        if (l == 0) throw std::invalid_argument("potential_compatibility_delta: lambda must be nonzero");

    JetSystemResult result;
    result.k_max = k_max;
    result.jet_order = 2 * k_max + 3;
    result.lambdas = std::move(lambdas);

    bool first = true;
    for (const auto& lambda : result.lambdas) {
        auto outcome = detail::analyze_lambda(k_max, lambda);
        if (first) {
            result.forced_zero_orders = std::move(outcome.forced_zero);
            result.continuous_orders = std::move(outcome.continuous);
            result.solution_dimension = outcome.dimension;
            first = false;
        } else if (outcome.forced_zero != result.forced_zero_orders ||
                   outcome.continuous != result.continuous_orders) {
            throw std::logic_error("potential_compatibility_delta: lambda-dependent conclusion");
        }
    }
    return result;
}

} // namespace rglab
