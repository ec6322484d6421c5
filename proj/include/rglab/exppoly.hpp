#pragma once

// Exact calculus on the function class spanned by c * x^n * exp(a*x) on a
// half-line, with n >= -1 and rational c, a. The class is closed under
// d/dx (for n >= 0), products, and multiplication by 1/x down to n = -1.
// Everything the boundary-condition engines need (one-sided jets, L2 inner
// products, Hamiltonian applications) reduces to exact rational arithmetic
// on these terms.

#include "rglab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rglab {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

struct SingularTermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergentIntegralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One term c * x^power * exp(rate*x). power >= -1 after normalization.
struct ExpPolyTerm {
    Rational coeff;
    int power = 0;
    Rational rate;
};

/// Finite sum of ExpPolyTerm on one open half-line. Terms are kept
/// normalized: sorted by (power, rate), unique keys, nonzero coefficients.
struct HalfLineFunction {
    Side side = Side::right;
    std::vector<ExpPolyTerm> terms;
};

inline bool term_key_less(const ExpPolyTerm& a, const ExpPolyTerm& b) {
    if (a.power != b.power) return a.power < b.power;
    return a.rate < b.rate;
}

inline void normalize(HalfLineFunction& f) {
    std::sort(f.terms.begin(), f.terms.end(), term_key_less);
    std::vector<ExpPolyTerm> out;
    for (const auto& t : f.terms) {
        if (t.power < -1) throw SingularTermError("exp-poly term with power < -1");
        if (!out.empty() && out.back().power == t.power && out.back().rate == t.rate) {
            out.back().coeff += t.coeff;
            if (out.back().coeff == 0) out.pop_back();
        } else if (t.coeff != 0) {
            out.push_back(t);
        }
    }
    f.terms = std::move(out);
}

inline HalfLineFunction hl_zero(Side side) { return HalfLineFunction{side, {}}; }

inline HalfLineFunction hl_term(Side side, Rational coeff, int power, Rational rate) {
    HalfLineFunction f{side, {ExpPolyTerm{std::move(coeff), power, std::move(rate)}}};
    normalize(f);
    return f;
}

inline HalfLineFunction add(const HalfLineFunction& f, const HalfLineFunction& g) {
    if (f.side != g.side) throw std::invalid_argument("add: mismatched sides");
    HalfLineFunction r = f;
    r.terms.insert(r.terms.end(), g.terms.begin(), g.terms.end());
    normalize(r);
    return r;
}

inline HalfLineFunction scale(const HalfLineFunction& f, const Rational& c) {
    HalfLineFunction r = f;
    if (c == 0) {
        r.terms.clear();
        return r;
    }
    for (auto& t : r.terms) t.coeff *= c;
    return r;
}

inline HalfLineFunction multiply(const HalfLineFunction& f, const HalfLineFunction& g) {
    if (f.side != g.side) throw std::invalid_argument("multiply: mismatched sides");
    HalfLineFunction r{f.side, {}};
    r.terms.reserve(f.terms.size() * g.terms.size());
    for (const auto& a : f.terms)
        for (const auto& b : g.terms)
            r.terms.push_back(ExpPolyTerm{a.coeff * b.coeff, a.power + b.power, a.rate + b.rate});
    normalize(r);
    return r;
}

/// Classical term-wise derivative on the open half-line. Leaves the class
/// only for power -1 terms, which are rejected.
inline HalfLineFunction differentiate(const HalfLineFunction& f) {
    HalfLineFunction r{f.side, {}};
    r.terms.reserve(2 * f.terms.size());
    for (const auto& t : f.terms) {
        if (t.power == -1)
            throw SingularTermError("differentiate: singular x^-1 term");
        if (t.power != 0)
            r.terms.push_back(ExpPolyTerm{t.coeff * t.power, t.power - 1, t.rate});
        if (t.rate != 0)
            r.terms.push_back(ExpPolyTerm{t.coeff * t.rate, t.power, t.rate});
    }
    normalize(r);
    return r;
}

/// Multiplication by 1/x: shifts every power down by one. May create
/// power -1 terms; creating power -2 is an error.
inline HalfLineFunction divide_by_x(const HalfLineFunction& f) {
    HalfLineFunction r{f.side, {}};
    r.terms.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        if (t.power - 1 < -1) throw SingularTermError("divide_by_x: power below -1");
        r.terms.push_back(ExpPolyTerm{t.coeff, t.power - 1, t.rate});
    }
    normalize(r);
    return r;
}

inline bool has_singular_term(const HalfLineFunction& f) {
    for (const auto& t : f.terms)
        if (t.power == -1) return true;
    return false;
}

/// Decay toward the half-line's infinity: right needs all rates < 0,
/// left needs all rates > 0. Term keys are unique, so no cancellation
/// can rescue a bad rate.
inline bool integrable_at_infinity(const HalfLineFunction& f) {
    for (const auto& t : f.terms) {
        if (f.side == Side::right && t.rate >= 0) return false;
        if (f.side == Side::left && t.rate <= 0) return false;
    }
    return true;
}

inline bool square_integrable(const HalfLineFunction& f) {
    return !has_singular_term(f) && integrable_at_infinity(f);
}

/// One-sided limit at 0. Only power-0 terms contribute (exp(a*0) = 1).
inline Rational value_at_zero(const HalfLineFunction& f) {
    if (has_singular_term(f)) throw SingularTermError("value_at_zero: singular x^-1 term");
    Rational v = 0;
    for (const auto& t : f.terms)
        if (t.power == 0) v += t.coeff;
    return v;
}

inline double value_at(const HalfLineFunction& f, double x) {
    double v = 0;
    for (const auto& t : f.terms)
        v += to_double(t.coeff) * std::pow(x, t.power) * std::exp(to_double(t.rate) * x);
    return v;
}

/// Piecewise function on the whole line, split at the origin.
struct LineFunction {
    HalfLineFunction left{Side::left, {}};
    HalfLineFunction right{Side::right, {}};
};

inline LineFunction make_line(HalfLineFunction left, HalfLineFunction right) {
    if (left.side != Side::left || right.side != Side::right)
        throw std::invalid_argument("make_line: sides mislabeled");
    return LineFunction{std::move(left), std::move(right)};
}

/// Even function c * x^n * exp(rate*|x|) given by its right-half data.
inline LineFunction even_line(Rational coeff, int power, Rational rate) {
    HalfLineFunction r = hl_term(Side::right, coeff, power, rate);
    HalfLineFunction l = hl_term(Side::left, (power % 2 == 0) ? coeff : -coeff, power, -rate);
    return LineFunction{std::move(l), std::move(r)};
}

inline LineFunction add(const LineFunction& f, const LineFunction& g) {
    return LineFunction{add(f.left, g.left), add(f.right, g.right)};
}

inline LineFunction scale(const LineFunction& f, const Rational& c) {
    return LineFunction{scale(f.left, c), scale(f.right, c)};
}

inline LineFunction multiply(const LineFunction& f, const LineFunction& g) {
    return LineFunction{multiply(f.left, g.left), multiply(f.right, g.right)};
}

inline LineFunction differentiate(const LineFunction& f) {
    return LineFunction{differentiate(f.left), differentiate(f.right)};
}

inline bool square_integrable(const LineFunction& f) {
    return square_integrable(f.left) && square_integrable(f.right);
}

inline bool is_zero(const LineFunction& f) { return f.left.terms.empty() && f.right.terms.empty(); }

inline double value_at(const LineFunction& f, double x) {
    return value_at(x < 0 ? f.left : f.right, x);
}

namespace detail {

// Exact integral over the half-line of the product f*g, mapped onto
// (0, inf): int_0^inf x^m exp(-b x) dx = m! / b^(m+1), b > 0.
inline Rational half_line_inner(const HalfLineFunction& f, const HalfLineFunction& g) {
    if (f.side != g.side) throw std::invalid_argument("half_line_inner: mismatched sides");
    Rational total = 0;
    for (const auto& a : f.terms) {
        for (const auto& b : g.terms) {
            int m = a.power + b.power;
            Rational rate = a.rate + b.rate;
            if (m <= -1) throw DivergentIntegralError("l2_inner: non-integrable power at origin");
            Rational decay = (f.side == Side::right) ? -rate : rate;
            if (decay <= 0) throw DivergentIntegralError("l2_inner: non-decaying rate at infinity");
            Rational value = Rational(factorial(m)) / pow_rat(decay, m + 1);
            Rational c = a.coeff * b.coeff;
            if (f.side == Side::left && m % 2 != 0) c = -c; // x -> -x substitution
            total += c * value;
        }
    }
    return total;
}

} // namespace detail

/// Exact L2 inner product over the whole line (real-valued class).
inline Rational l2_inner(const LineFunction& f, const LineFunction& g) {
    return detail::half_line_inner(f.left, g.left) + detail::half_line_inner(f.right, g.right);
}

inline Rational l2_norm_sq(const LineFunction& f) { return l2_inner(f, f); }

/// Exact L2 inner product on (0, inf) for half-line (radial) functions.
inline Rational l2_inner_half(const HalfLineFunction& f, const HalfLineFunction& g) {
    return detail::half_line_inner(f, g);
}

} // namespace rglab
