#pragma once

// Exact integer/rational arithmetic used throughout the symbolic engines.
// boost::multiprecision keeps rationals in canonical form: gcd(num, den) = 1
// and den > 0, which is exactly the invariant the rest of the code relies on.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rglab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// num/den as an exact rational; den may be negative, must be nonzero.
inline Rational frac(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("frac: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Rational frac(long long num, long long den) { return frac(BigInt(num), BigInt(den)); }

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1); // exact at every step: b is C(n, i+1) * (i+1)! / ... running product
    }
    return b;
}

/// sum_{j=1..n} 1/(2j-1)
inline Rational odd_harmonic(int n) {
    Rational s = 0;
    for (int j = 1; j <= n; ++j) s += frac(1, 2 * j - 1);
    return s;
}

inline Rational pow_rat(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_rat: zero to negative power");
        return Rational(1) / pow_rat(base, -e);
    }
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const BigInt& n) { return n.str(); }

} // namespace rglab
