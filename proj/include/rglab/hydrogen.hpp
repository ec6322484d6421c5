#pragma once

// Exact verification of the half-line hydrogen induction: the T_n matrix
// recursion for local Taylor data under h0 = -d^2/dr^2 - 1/r, the closed
// form for the iterated product, and the 2x2 system that pins the next two
// derivatives of a compatible potential to zero.

#include "rglab/domain.hpp"
#include "rglab/exppoly.hpp"
#include "rglab/jet.hpp"
#include "rglab/rational.hpp"

#include <stdexcept>
#include <utility>

namespace rglab {

struct RationalMatrix2 {
    Rational a, b; // row 0
    Rational c, d; // row 1

    Rational det() const { return a * d - b * c; }
};

using RationalVec2 = std::pair<Rational, Rational>;

inline RationalVec2 mat_vec(const RationalMatrix2& m, const RationalVec2& v) {
    return {m.a * v.first + m.b * v.second, m.c * v.first + m.d * v.second};
}

inline RationalMatrix2 transpose(const RationalMatrix2& m) { return {m.a, m.c, m.b, m.d}; }

/// Taylor-recursion matrix for -h0: (a, b) coefficients of r^(2n-1), r^(2n)
/// map to the r^(2n-3), r^(2n-2) coefficients of -h0 f via T_n.
inline RationalMatrix2 t_matrix(int n) {
    if (n < 2) throw std::invalid_argument("t_matrix: n must be >= 2");
    return RationalMatrix2{Rational((2 * n - 1) * (2 * n - 2)), Rational(0),
                           Rational(1), Rational(2 * n * (2 * n - 1))};
}

/// T_n^* ... T_2^* (1,2), computed by iterated multiplication and checked
/// against the closed form ((2n-1)! * sum 1/(2j-1), (2n)!).
inline RationalVec2 cumulative_vector(int n) {
    if (n < 1) throw std::invalid_argument("cumulative_vector: n must be >= 1");
    RationalVec2 v{Rational(1), Rational(2)};
    for (int m = 2; m <= n; ++m) v = mat_vec(transpose(t_matrix(m)), v);

    const RationalVec2 closed{Rational(factorial(2 * n - 1)) * odd_harmonic(n),
                              Rational(factorial(2 * n))};
    if (v != closed) throw std::logic_error("cumulative_vector: closed form mismatch");
    return v;
}

/// psi = (16/3) r (e^{-r/2} - (1 - r/4) e^{-r/4}), the combination of the
/// two lowest h0 eigenfunctions normalized so psi'''(0) = 1.
inline HalfLineFunction appendix_a_psi() {
    HalfLineFunction f{Side::right,
                       {ExpPolyTerm{frac(16, 3), 1, frac(-1, 2)},
                        ExpPolyTerm{frac(-16, 3), 1, frac(-1, 4)},
                        ExpPolyTerm{frac(4, 3), 2, frac(-1, 4)}}};
    normalize(f);
    return f;
}

struct SystemA {
    int k = 0;
    RationalMatrix2 matrix; // rows act on (v, u) = (V^(2k-2)(0), V^(2k-1)(0))
    Rational det;
};

namespace detail {

// Coefficients of r^(2n-1) and r^(2n) in V*g where V contributes only
// v r^(2k-2)/(2k-2)! + u r^(2k-1)/(2k-1)! and g has the given jet. Returns
// per-unknown (v, u) coefficient pairs.
struct LeadingPair {
    Rational a_v, a_u; // r^(2n-1) coefficient split by unknown
    Rational b_v, b_u; // r^(2n)   coefficient split by unknown
};

inline LeadingPair product_leading_coeffs(const Jet& g_jet, int k, int n) {
    const int lo = 2 * n - 1;
    const int hi = 2 * n;
    const Rational inv_v = Rational(1) / Rational(factorial(2 * k - 2));
    const Rational inv_u = Rational(1) / Rational(factorial(2 * k - 1));
    auto g_taylor = [&](int m) { return g_jet[m] / Rational(factorial(m)); };

    LeadingPair out{};
    // v-part of V sits at power 2k-2, u-part at 2k-1.
    out.a_v = inv_v * g_taylor(lo - (2 * k - 2));
    out.a_u = (lo - (2 * k - 1) >= 0) ? inv_u * g_taylor(lo - (2 * k - 1)) : Rational(0);
    out.b_v = inv_v * g_taylor(hi - (2 * k - 2));
    out.b_u = inv_u * g_taylor(hi - (2 * k - 1));
    return out;
}

} // namespace detail

/// The 2x2 system forcing (V^(2k-2)(0), V^(2k-1)(0)) = 0, rows as printed:
///   row 0: v { C(2k+1,3) sum_{j=1}^{k+1} 1/(2j-1) - (4/3) C(2k+2,4) } + u C(2k+2,3)
///   row 1: -v (2k-1) { k - sum_{j=1}^{k} 1/(2j-1) } + u 2k
/// A redundant route rebuilds both rows from the Taylor expansion of V*psi
/// and V*(h0 psi) via the cumulative product, instead of trusting the
/// bracket algebra.
inline SystemA assemble_system(int k) {
    if (k < 2) throw std::invalid_argument("assemble_system: k must be >= 2");

    SystemA sys;
    sys.k = k;
    sys.matrix.a = Rational(binomial(2 * k + 1, 3)) * odd_harmonic(k + 1) -
                   frac(4, 3) * Rational(binomial(2 * k + 2, 4));
    sys.matrix.b = Rational(binomial(2 * k + 2, 3));
    sys.matrix.c = Rational(-(2 * k - 1)) * (Rational(k) - odd_harmonic(k));
    sys.matrix.d = Rational(2 * k);
    sys.det = sys.matrix.det();

    // Redundant expansion route. psi and h0 psi jets come from the symbolic
    // engine; the displayed rows carry an overall (-1)^(k+1) normalization
    // relative to the raw equations h0^(k+1)(V psi)(0) = 0 and
    // h0^k(V h0 psi)(0) = 0, which drops out of the homogeneous system.
    const HalfLineFunction psi = appendix_a_psi();
    const auto h0_psi = apply_radial_hamiltonian(psi);
    if (!h0_psi.report.in_domain()) throw std::logic_error("assemble_system: psi not in D(h0)");

    const Jet psi_jet = boundary_jet(psi, 4);
    const Jet h0_psi_jet = boundary_jet(h0_psi.function, 2);

    const auto row0 = detail::product_leading_coeffs(psi_jet, k, k + 1);
    const RationalVec2 cum0 = cumulative_vector(k + 1);
    const Rational r0_v = cum0.first * row0.a_v + cum0.second * row0.b_v;
    const Rational r0_u = cum0.first * row0.a_u + cum0.second * row0.b_u;

    const auto row1 = detail::product_leading_coeffs(h0_psi_jet, k, k);
    const RationalVec2 cum1 = cumulative_vector(k);
    const Rational r1_v = -(cum1.first * row1.a_v + cum1.second * row1.b_v);
    const Rational r1_u = -(cum1.first * row1.a_u + cum1.second * row1.b_u);

    if (r0_v != sys.matrix.a || r0_u != sys.matrix.b || r1_v != sys.matrix.c || r1_u != sys.matrix.d)
        throw std::logic_error("assemble_system: expansion route disagrees with printed rows");

    return sys;
}

/// Closed form of det(A); asserts agreement with the assembled system and
/// strict positivity via the printed lower bound.
inline Rational determinant_closed_form_check(int k) {
    if (k < 2) throw std::invalid_argument("determinant_closed_form_check: k must be >= 2");
    const Rational c3 = Rational(binomial(2 * k + 1, 3));
    const Rational bracket =
        frac(2, 3) * Rational(k) * Rational(k + 1) + frac(2 * k, 2 * k + 1) - 2 * odd_harmonic(k);
    const Rational closed = c3 * bracket;

    const Rational lower =
        c3 * (frac(2, 3) * Rational(k) * Rational(k + 1) + frac(2 * k, 2 * k + 1) - Rational(2 * k));
    if (!(closed >= lower && lower > 0))
        throw std::logic_error("determinant_closed_form_check: positivity bound failed");

    if (closed != assemble_system(k).det)
        throw std::logic_error("determinant_closed_form_check: closed form mismatch");
    return closed;
}

/// Unique solution of the homogeneous 2x2 system; trivial iff det != 0.
inline bool kernel_trivial(const SystemA& sys) { return sys.det != 0; }

struct AppendixAPsiChecks {
    Jet psi_jet;          // order 3
    Rational h0_psi_slope; // (h0 psi)'(0+)
    bool characteristic_identity; // (h0^2 + 5/16 h0 + 1/64) psi == 0
};

inline AppendixAPsiChecks verify_appendix_a_psi() {
    const HalfLineFunction psi = appendix_a_psi();
    AppendixAPsiChecks out{boundary_jet(psi, 3), Rational(0), false};

    const auto h1 = apply_radial_hamiltonian(psi);
    out.h0_psi_slope = boundary_jet(h1.function, 1)[1];

    const auto h2 = apply_radial_hamiltonian(h1.function, 1);
    // psi spans the two lowest eigenfunctions (eigenvalues -1/4, -1/16), so
    // it is annihilated by the characteristic polynomial of that subspace.
    HalfLineFunction combo =
        add(add(h2.function, scale(h1.function, frac(5, 16))), scale(psi, frac(1, 64)));
    out.characteristic_identity = combo.terms.empty();
    return out;
}

} // namespace rglab
