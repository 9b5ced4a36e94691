#pragma once

// Closed forms and recurrences for history totals and factorial moments of
// periodic Polya urns.
//
// Writing n = mp + i with i in [0, p), the total ball count after n draws is
//   T_n = (1 + l/p) n + b_n,   b_n = s0 + sum_{j<=i} l_j - i l / p,
// and h_{n+1} = T_n h_n. The r-th factorial-moment numerators follow the
// perturbed recurrence h^{(r)}_{n+1} = (T_n + r) h^{(r)}_n + r(r-1) h^{(r-1)}_n
// with h^{(r)}_0 the falling factorial of b0. All recurrences run over exact
// rationals; integrality of the results is asserted.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perioda/numbers.hpp"
#include "perioda/urn.hpp"

namespace perioda {

// b_n as an exact rational; i = n mod p.
inline Rational phase_offset(const UrnSpec& spec, std::int64_t n) {
    std::int64_t i = n % spec.p;
    std::int64_t partial = 0;
    for (std::int64_t j = 0; j < i; ++j) partial += spec.ells[static_cast<std::size_t>(j)];
    return Rational(spec.s0() + partial) - Rational(i * spec.ell(), spec.p);
}

inline BigInt total_histories(const UrnSpec& spec, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("total_histories: negative n");
    Rational a(spec.p + spec.ell(), spec.p);  // 1 + l/p
    Rational h = 1;
    for (std::int64_t k = 0; k < n; ++k) {
        h *= a * k + phase_offset(spec, k);
        // equivalently h *= total_balls_after(spec, k)
    }
    if (!is_integer(h)) throw std::logic_error("total_histories: non-integral value");
    return numerator(h);
}

// All of h_0..h_n in one sweep.
inline std::vector<BigInt> history_sequence(const UrnSpec& spec, std::int64_t n) {
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    Rational h = 1;
    Rational a(spec.p + spec.ell(), spec.p);
    for (std::int64_t k = 0; k <= n; ++k) {
        if (!is_integer(h)) throw std::logic_error("history_sequence: non-integral value");
        out.push_back(numerator(h));
        h *= a * k + phase_offset(spec, k);
    }
    return out;
}

// Hypergeometric closed form for the Young-Polya case, n = pm + i:
//   h_n = (p+l)^{pm} Gamma(s0+(p+l)m+i)/Gamma(s0+(p+l)m)
//         * prod_j Gamma(m+(s0+j)/(p+l)) / Gamma((s0+j)/(p+l)).
inline Real closed_form_total(const UrnSpec& spec, std::int64_t n) {
    if (!spec.is_young_polya())
        throw std::invalid_argument("closed_form_total: spec is not of Young-Polya form");
    if (n < 0) throw std::invalid_argument("closed_form_total: negative n");
    std::int64_t p = spec.p, q = spec.p + spec.ell(), s0 = spec.s0();
    std::int64_t m = n / p, i = n % p;
    Real logh = Real(p * m) * log(Real(q));
    logh += lgamma_real(Real(s0 + q * m + i)) - lgamma_real(Real(s0 + q * m));
    for (std::int64_t j = 0; j < p; ++j) {
        Real frac = Real(s0 + j) / q;
        logh += lgamma_real(Real(m) + frac) - lgamma_real(frac);
    }
    return exp(logh);
}

// L(r,j) = C(r-1, j-1) r!/j!
inline BigInt lah_number(unsigned r, unsigned j) {
    if (j < 1 || j > r) throw std::invalid_argument("lah_number: j out of range");
    return binomial(BigInt(r - 1), j - 1) * factorial(r) / factorial(j);
}

// Numerator h^{(r)}_n of the r-th factorial moment.
inline Rational factorial_moment_numerator(const UrnSpec& spec, unsigned r, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("factorial_moment_numerator: negative n");
    Rational a(spec.p + spec.ell(), spec.p);
    // h^{(j)}_k for j = 0..r, advanced jointly in k.
    std::vector<Rational> h(r + 1);
    for (unsigned j = 0; j <= r; ++j) h[j] = Rational(falling_factorial(BigInt(spec.b0), j));
    for (std::int64_t k = 0; k < n; ++k) {
        Rational base = a * k + phase_offset(spec, k);
        for (unsigned j = r + 1; j-- > 0;) {
            Rational v = (base + Rational(j)) * h[j];
            if (j >= 2) v += Rational(BigInt(j) * (j - 1)) * h[j - 1];
            h[j] = v;
        }
    }
    if (!is_integer(h[r])) throw std::logic_error("factorial_moment_numerator: non-integral value");
    return h[r];
}

// m_r(n) = h^{(r)}_n / h_n
inline Rational exact_factorial_moment(const UrnSpec& spec, unsigned r, std::int64_t n) {
    if (r == 0) return Rational(1);
    return factorial_moment_numerator(spec, r, n) / Rational(total_histories(spec, n));
}

struct MomentTable {
    UrnSpec spec;
    std::int64_t n = 0;
    std::vector<Rational> factorial_moments;  // m_1(n)..m_R(n)
};

inline MomentTable moment_table(const UrnSpec& spec, std::int64_t n, unsigned r_max) {
    MomentTable t;
    t.spec = spec;
    t.n = n;
    Rational h0 = Rational(total_histories(spec, n));
    for (unsigned r = 1; r <= r_max; ++r)
        t.factorial_moments.push_back(factorial_moment_numerator(spec, r, n) / h0);
    return t;
}

// Stirling numbers of the second kind, for factorial -> ordinary moments.
inline BigInt stirling2(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n == 0) return 1;
    std::vector<BigInt> row(n + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = std::min(i, n); j >= 1; --j) row[j] = row[j - 1] + BigInt(j) * row[j];
    // row built in place: after processing i, row[j] = S(i, j)
    return row[k];
}

// E[B_n^r] from the factorial moments.
inline Rational exact_ordinary_moment(const UrnSpec& spec, unsigned r, std::int64_t n) {
    Rational h0 = Rational(total_histories(spec, n));
    Rational sum = 0;
    for (unsigned j = 0; j <= r; ++j) {
        BigInt s2 = stirling2(r, j);
        if (s2 == 0) continue;
        Rational mj = (j == 0) ? Rational(1) : factorial_moment_numerator(spec, j, n) / h0;
        sum += Rational(s2) * mj;
    }
    return sum;
}

// gamma_r of the moment asymptotics m_r(n) = gamma_r n^{delta r} (1 + O(1/n)):
//   gamma_r = (b0 rising r) / p^{delta r}
//             * prod_{j=0}^{p-1} Gamma((s0+e_j)/(p+l)) / Gamma((s0+r+e_j)/(p+l)),
// with e_j = j + sum_{k<=j} l_k.
inline Real asymptotic_moment_constant(const UrnSpec& spec, unsigned r) {
    if (r == 0) return Real(1);
    std::int64_t p = spec.p, q = spec.p + spec.ell(), s0 = spec.s0();
    Real log_g = log(to_real(rising_factorial(BigInt(spec.b0), r)));
    log_g -= Real(spec.delta()) * r * log(Real(p));
    std::int64_t partial = 0;
    for (std::int64_t j = 0; j < p; ++j) {
        if (j > 0) partial += spec.ells[static_cast<std::size_t>(j - 1)];
        Real e = Real(s0 + j + partial) / q;
        log_g += lgamma_real(e) - lgamma_real(e + Real(r) / q);
    }
    return exp(log_g);
}

}  // namespace perioda
