#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>

#include "perioda/enumeration.hpp"
#include "perioda/urn.hpp"

using namespace perioda;

namespace {

UrnSpec yp21() { return validate_spec(UrnSpec::young_polya(2, 1, 1, 1)); }
UrnSpec staircase() { return validate_spec(UrnSpec{3, {0, 1, 2}, 1, 1}); }

// brute-force factorial moment from the exact state distribution
Rational moment_from_distribution(const UrnSpec& spec, unsigned r, std::int64_t n) {
    auto dist = exact_distribution(spec, n);
    Rational acc = 0;
    for (const auto& [b, w] : dist.weights)
        acc += Rational(w * falling_factorial(BigInt(b), r));
    return acc / Rational(dist.total);
}

// dense polynomial helpers over rationals for the Lah identity
using Poly = std::vector<Rational>;
Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}
Poly falling_poly(unsigned r) {
    Poly p{1};
    for (unsigned i = 0; i < r; ++i) p = mul(p, Poly{Rational(-static_cast<std::int64_t>(i)), 1});
    return p;
}
Poly rising_poly(unsigned r) {
    Poly p{1};
    for (unsigned i = 0; i < r; ++i) p = mul(p, Poly{Rational(static_cast<std::int64_t>(i)), 1});
    return p;
}

}  // namespace

TEST_CASE("history totals: closed sequences", "[enum]") {
    const std::int64_t a293653[9] = {1, 2, 6, 30, 180, 1440, 12960, 142560, 1710720};
    auto seq = history_sequence(yp21(), 8);
    for (int n = 0; n <= 8; ++n) CHECK(seq[static_cast<std::size_t>(n)] == a293653[n]);

    UrnSpec classical = validate_spec(UrnSpec{1, {0}, 1, 1});
    for (std::int64_t n = 0; n <= 12; ++n)
        CHECK(total_histories(classical, n) == factorial(static_cast<unsigned>(n + 1)));

    CHECK(total_histories(staircase(), 0) == 1);
}

TEST_CASE("hypergeometric period recurrence", "[enum]") {
    // h_{p(m+1)+i} = prod_{j<i} ((p+l)(m+1)+s0+j) prod_{j>=i} ((p+l)m+s0+j) h_{pm+i}
    for (const auto& spec :
         {yp21(), validate_spec(UrnSpec::young_polya(3, 2, 2, 1))}) {
        std::int64_t p = spec.p, q = spec.p + spec.ell(), s0 = spec.s0();
        auto h = history_sequence(spec, 4 * p);
        for (std::int64_t m = 0; m + 1 <= 3; ++m) {
            for (std::int64_t i = 0; i < p; ++i) {
                BigInt factor = 1;
                for (std::int64_t j = 0; j < i; ++j) factor *= q * (m + 1) + s0 + j;
                for (std::int64_t j = i; j < p; ++j) factor *= q * m + s0 + j;
                CHECK(h[static_cast<std::size_t>(p * (m + 1) + i)] ==
                      factor * h[static_cast<std::size_t>(p * m + i)]);
            }
        }
    }
}

TEST_CASE("closed form total agrees with the exact recurrence", "[enum]") {
    CHECK(abs(closed_form_total(yp21(), 4) - 180) / 180 < 1e-9);
    CHECK(abs(closed_form_total(yp21(), 0) - 1) < 1e-12);
    CHECK_THROWS_AS(closed_form_total(staircase(), 4), std::invalid_argument);

    // even-index closed form 3^n Gamma(n/2+1) Gamma(n/2+2/3) / Gamma(2/3)
    for (std::int64_t n : {2, 6, 10}) {
        Real direct = pow(Real(3), n) *
                      exp(lgamma_real(Real(n) / 2 + 1) + lgamma_real(Real(n) / 2 + Real(2) / 3) -
                          lgamma_real(Real(2) / 3));
        CHECK(abs(direct / closed_form_total(yp21(), n) - 1) < 1e-30);
    }

    for (const auto& spec : {yp21(), validate_spec(UrnSpec::young_polya(3, 2, 2, 1)),
                             validate_spec(UrnSpec::young_polya(1, 1, 1, 1))}) {
        Rational h = 1;
        Rational a(spec.p + spec.ell(), spec.p);
        for (std::int64_t n = 0; n <= 200; ++n) {
            if (n > 0) h *= a * (n - 1) + phase_offset(spec, n - 1);
            Real exact = to_real(h);
            CHECK(abs(closed_form_total(spec, n) / exact - 1) < 1e-10);
        }
    }
}

TEST_CASE("Lah numbers and the rising-falling identity", "[enum]") {
    CHECK(lah_number(3, 2) == 6);
    for (unsigned r = 1; r <= 8; ++r) CHECK(lah_number(r, r) == 1);
    CHECK_THROWS_AS(lah_number(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(lah_number(3, 0), std::invalid_argument);

    for (unsigned r = 1; r <= 20; ++r) {
        Poly sum(r + 1, Rational(0));
        for (unsigned j = 1; j <= r; ++j) {
            Poly f = falling_poly(j);
            Rational l = Rational(lah_number(r, j));
            for (std::size_t i = 0; i < f.size(); ++i) sum[i] += l * f[i];
        }
        Poly rise = rising_poly(r);
        rise.resize(r + 1, Rational(0));
        CHECK(sum == rise);
    }
}

TEST_CASE("factorial moment numerators", "[enum]") {
    CHECK(factorial_moment_numerator(yp21(), 1, 1) == 3);
    CHECK(factorial_moment_numerator(staircase(), 1, 0) == 1);
    CHECK(factorial_moment_numerator(validate_spec(UrnSpec{1, {0}, 2, 1}), 3, 0) == 0);
}

TEST_CASE("exact factorial moments against the distribution oracle", "[enum]") {
    CHECK(exact_factorial_moment(yp21(), 1, 2) == 2);
    CHECK(exact_factorial_moment(staircase(), 0, 17) == 1);
    for (const auto& spec : {yp21(), staircase(), validate_spec(UrnSpec{1, {1}, 2, 1})}) {
        for (std::int64_t n : {0, 1, 7, 25}) {
            for (unsigned r = 1; r <= 4; ++r)
                CHECK(exact_factorial_moment(spec, r, n) == moment_from_distribution(spec, r, n));
        }
    }
}

TEST_CASE("moment mean is monotone in n", "[enum]") {
    for (const auto& spec : {yp21(), staircase()}) {
        Rational prev = exact_factorial_moment(spec, 1, 0);
        for (std::int64_t n = 1; n <= 40; ++n) {
            Rational cur = exact_factorial_moment(spec, 1, n);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("homogeneous-plus-Lah decomposition of the moment numerators", "[enum]") {
    // h^{(r)}_n = u_n - sum_{j<r} L(r,j) h^{(j)}_n, where u follows the
    // homogeneous recurrence from the rising factorial of b0.
    for (const auto& spec : {yp21(), staircase()}) {
        Rational a(spec.p + spec.ell(), spec.p);
        for (unsigned r = 2; r <= 4; ++r) {
            Rational u = Rational(rising_factorial(BigInt(spec.b0), r));
            for (std::int64_t n = 0; n <= 20; ++n) {
                Rational expect = u;
                for (unsigned j = 1; j < r; ++j)
                    expect -= Rational(lah_number(r, j)) * factorial_moment_numerator(spec, j, n);
                CHECK(factorial_moment_numerator(spec, r, n) == expect);
                u *= a * n + phase_offset(spec, n) + Rational(r);
            }
        }
    }
}

TEST_CASE("exact mean matches the gamma-quotient closed form", "[enum]") {
    // Young-Polya: E B_{pm+i} = b0 G(s0/q)/G((s0+p)/q) (m+(s0+i)/q) G(m+(s0+p)/q)/G(m+1+s0/q)
    for (const auto& spec : {yp21(), validate_spec(UrnSpec::young_polya(3, 2, 2, 1))}) {
        std::int64_t p = spec.p, q = spec.p + spec.ell(), s0 = spec.s0();
        for (std::int64_t n = 0; n <= 30; ++n) {
            std::int64_t m = n / p, i = n % p;
            Real closed = Real(spec.b0) *
                          exp(lgamma_real(Real(s0) / q) - lgamma_real(Real(s0 + p) / q) +
                              lgamma_real(Real(m) + Real(s0 + p) / q) -
                              lgamma_real(Real(m) + 1 + Real(s0) / q)) *
                          (Real(m) + Real(s0 + i) / q);
            Real exact = to_real(exact_factorial_moment(spec, 1, n));
            CHECK(abs(closed / exact - 1) < 1e-30);
        }
    }
}

TEST_CASE("asymptotic moment constants", "[enum]") {
    UrnSpec spec = yp21();
    CHECK(abs(asymptotic_moment_constant(spec, 0) - 1) == 0);

    Real g1 = asymptotic_moment_constant(spec, 1);
    Real g1_closed = exp(lgamma_real(Real(2) / 3) - lgamma_real(Real(4) / 3)) *
                     pow(Real(2), -Real(2) / 3);
    CHECK(abs(g1 - g1_closed) < 1e-40);
    CHECK(abs(g1 - Real("0.9552")) < 1e-4);

    Real g2 = asymptotic_moment_constant(spec, 2);
    Real var_const = g2 - g1 * g1;
    // 27/(8 2^(1/3)) Gamma(2/3)^2 (3 Gamma(4/3) - Gamma(2/3)^2) / pi^2
    Real g23 = exp(lgamma_real(Real(2) / 3)), g43 = exp(lgamma_real(Real(4) / 3));
    Real pi = boost::math::constants::pi<Real>();
    Real closed = Real(27) / (8 * pow(Real(2), Real(1) / 3)) * g23 * g23 * (3 * g43 - g23 * g23) /
                  (pi * pi);
    CHECK(abs(var_const - closed) < 1e-40);
    CHECK(abs(var_const - Real("0.42068")) < 1e-4);
}

TEST_CASE("rescaled moments approach their constants", "[enum]") {
    for (const auto& spec : {yp21(), staircase()}) {
        double delta = Rational(spec.delta()).convert_to<double>();
        for (unsigned r = 1; r <= 3; ++r) {
            Real g = asymptotic_moment_constant(spec, r);
            auto dev = [&](std::int64_t n) {
                Real m = to_real(exact_factorial_moment(spec, r, n));
                return abs(m / (g * pow(Real(n), delta * r)) - 1).convert_to<double>();
            };
            double d200 = dev(200), d2000 = dev(2000);
            CHECK(d2000 < d200);
            CHECK(d2000 < 0.01);
        }
    }
}
