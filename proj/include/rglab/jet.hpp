#pragma once

// One-sided Taylor jets at the origin: the carrier of all boundary
// conditions at the singular point.

#include "rglab/exppoly.hpp"
#include "rglab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace rglab {

/// coefficients[j] = f^(j)(0^side), exact.
struct Jet {
    Side side = Side::right;
    std::vector<Rational> coefficients;

    int order() const { return static_cast<int>(coefficients.size()) - 1; }
    const Rational& operator[](int j) const { return coefficients.at(static_cast<size_t>(j)); }
};

/// Jet of a half-line function at its origin endpoint, by repeated
/// differentiation and one-sided evaluation.
inline Jet boundary_jet(const HalfLineFunction& f, int order) {
    if (order < 0) throw std::invalid_argument("boundary_jet: negative order");
    Jet jet{f.side, {}};
    jet.coefficients.reserve(static_cast<size_t>(order) + 1);
    HalfLineFunction g = f;
    for (int j = 0; j <= order; ++j) {
        jet.coefficients.push_back(value_at_zero(g));
        if (j < order) g = differentiate(g);
    }
    return jet;
}

inline Jet boundary_jet(const LineFunction& f, Side side, int order) {
    return boundary_jet(side == Side::left ? f.left : f.right, order);
}

/// Jet of the derivative = shifted jet of the function.
inline Jet shift(const Jet& jet) {
    Jet r{jet.side, {}};
    if (jet.coefficients.size() > 1)
        r.coefficients.assign(jet.coefficients.begin() + 1, jet.coefficients.end());
    return r;
}

} // namespace rglab
