#pragma once

// Exact and high-precision number types used across the library.
//
// BigInt / Rational are GMP-backed; Real is an MPFR float whose decimal
// precision defaults to 50 digits and can be changed at runtime (the CLI
// honours the PERIODA_PRECISION environment variable).

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace perioda {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

inline void set_real_precision(unsigned digits10) {
    if (digits10 < 15) digits10 = 15;
    Real::default_precision(digits10);
}

inline Real to_real(const BigInt& z) { return Real(z); }
inline Real to_real(const Rational& q) { return Real(q); }

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// "num/den" (or plain "num") with canonical sign on the numerator.
inline std::string rational_to_string(const Rational& q) {
    BigInt num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(const BigInt& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (BigInt(k) > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact at every step
    }
    return r;
}

// x(x-1)...(x-r+1)
inline BigInt falling_factorial(const BigInt& x, unsigned r) {
    BigInt v = 1;
    for (unsigned i = 0; i < r; ++i) v *= x - i;
    return v;
}

// x(x+1)...(x+r-1)
inline BigInt rising_factorial(const BigInt& x, unsigned r) {
    BigInt v = 1;
    for (unsigned i = 0; i < r; ++i) v *= x + i;
    return v;
}

inline Real lgamma_real(const Real& x) {
    if (x <= 0) throw std::domain_error("lgamma: nonpositive argument");
    return boost::multiprecision::lgamma(x);
}

inline Real gamma_ratio(const Real& a, const Real& b) {  // Gamma(a)/Gamma(b)
    return exp(lgamma_real(a) - lgamma_real(b));
}

// Fixed 15-significant-digit float formatting, '.' separator, no locale.
inline std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return std::string(buf);
}

inline std::string format_float(const Real& v) { return format_float(v.convert_to<double>()); }

}  // namespace perioda
