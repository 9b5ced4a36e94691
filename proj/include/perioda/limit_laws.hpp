#pragma once

// The limit distributions of periodic Polya urns and their analytics:
// generalized gamma distributions, the GenGammaProd product law, Mittag-
// Leffler moments, tail profiles, and the cyclic-shift factorization of
// gamma distributions.
//
// GenGammaProd([l_1..l_p]; b0, w0) is Beta(b0,w0) (the constant 1 when w0=0)
// times independent GenGamma(s0+i, p+l) over the index set
//   I = {1..p+l-1} \ {l_1+...+l_j + j : 1 <= j <= p-1}.
// No closed-form density is attempted; the law is represented by its exact
// moments plus the product sampler.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "perioda/numbers.hpp"
#include "perioda/rng.hpp"
#include "perioda/urn.hpp"

namespace perioda {

struct GenGammaParams {
    double alpha = 1.0;
    double beta = 1.0;
};

inline Real gengamma_density(double t, const GenGammaParams& p) {
    if (!(p.alpha > 0) || !(p.beta > 0))
        throw std::invalid_argument("gengamma: parameters must be positive");
    if (!(t > 0)) throw std::domain_error("gengamma_density: t must be positive");
    Real rt(t), a(p.alpha), b(p.beta);
    return b * pow(rt, a - 1) * exp(-pow(rt, b)) / exp(lgamma_real(a / b));
}

// E[X^r] = Gamma((alpha+r)/beta) / Gamma(alpha/beta)
inline Real gengamma_log_moment(double r, const GenGammaParams& p) {
    Real a(p.alpha), b(p.beta);
    return lgamma_real((a + r) / b) - lgamma_real(a / b);
}

inline Real gengamma_moment(unsigned r, const GenGammaParams& p) {
    return exp(gengamma_log_moment(static_cast<double>(r), p));
}

// X = G^{1/beta} with G ~ Gamma(alpha/beta, 1)
inline double gengamma_sample(const GenGammaParams& p, Rng& rng) {
    return std::pow(rng.gamma(p.alpha / p.beta), 1.0 / p.beta);
}

struct GenGammaProdSpec {
    std::vector<std::int64_t> ells;
    std::int64_t b0 = 1;
    std::int64_t w0 = 0;

    std::int64_t p() const { return static_cast<std::int64_t>(ells.size()); }
    std::int64_t ell() const {
        std::int64_t s = 0;
        for (auto l : ells) s += l;
        return s;
    }
    std::int64_t s0() const { return b0 + w0; }
    Rational delta() const { return Rational(p(), p() + ell()); }

    // {1..p+l-1} minus the partial sums l_1+...+l_j+j, j = 1..p-1
    std::vector<std::int64_t> index_set() const {
        std::vector<bool> excluded(static_cast<std::size_t>(p() + ell()), false);
        std::int64_t acc = 0;
        for (std::int64_t j = 1; j <= p() - 1; ++j) {
            acc += ells[static_cast<std::size_t>(j - 1)];
            excluded[static_cast<std::size_t>(acc + j)] = true;
        }
        std::vector<std::int64_t> idx;
        for (std::int64_t i = 1; i <= p() + ell() - 1; ++i)
            if (!excluded[static_cast<std::size_t>(i)]) idx.push_back(i);
        return idx;
    }

    static GenGammaProdSpec from_urn(const UrnSpec& u) { return {u.ells, u.b0, u.w0}; }
    static GenGammaProdSpec young_polya(std::int64_t p, std::int64_t l, std::int64_t b0,
                                        std::int64_t w0) {
        return from_urn(UrnSpec::young_polya(p, l, b0, w0));
    }
};

inline GenGammaProdSpec validate_law(GenGammaProdSpec s) {
    if (s.ells.empty()) throw std::invalid_argument("law: period must be at least 1");
    for (auto l : s.ells)
        if (l < 0) throw std::invalid_argument("law: negative pattern entry");
    if (s.b0 < 1) throw std::invalid_argument("law: b0 must be at least 1");
    if (s.w0 < 0) throw std::invalid_argument("law: w0 must be non-negative");
    return s;
}

// log E[X^r], r may be fractional (used by the tail profiles)
inline Real gengammaprod_log_moment(double r, const GenGammaProdSpec& spec) {
    std::int64_t q = spec.p() + spec.ell();
    Real b0(spec.b0), s0(spec.s0()), rr(r);
    Real lg = lgamma_real(b0 + rr) - lgamma_real(b0) + lgamma_real(s0) - lgamma_real(s0 + rr);
    for (auto i : spec.index_set())
        lg += lgamma_real((s0 + Real(i) + rr) / q) - lgamma_real((s0 + Real(i)) / q);
    return lg;
}

inline Real gengammaprod_moment(unsigned r, const GenGammaProdSpec& spec) {
    return exp(gengammaprod_log_moment(static_cast<double>(r), spec));
}

inline double gengammaprod_sample(const GenGammaProdSpec& spec, Rng& rng) {
    double x = 1.0;
    if (spec.w0 > 0)
        x = rng.beta(static_cast<double>(spec.b0), static_cast<double>(spec.w0));
    double q = static_cast<double>(spec.p() + spec.ell());
    double s0 = static_cast<double>(spec.s0());
    for (auto i : spec.index_set())
        x *= gengamma_sample({s0 + static_cast<double>(i), q}, rng);
    return x;
}

struct MittagLefflerParams {
    double alpha = 0.5;  // in (0,1)
    double beta = 0.5;   // > -alpha
};

// E[Y^r] = Gamma(beta+1) Gamma(beta/alpha+r+1) / (Gamma(beta/alpha+1) Gamma(beta+alpha r+1));
// alpha = 1 is the degenerate boundary case (all moments 1).
inline Real ml_log_moment(double r, const MittagLefflerParams& p) {
    if (!(p.alpha > 0 && p.alpha <= 1))
        throw std::invalid_argument("mittag-leffler: alpha must lie in (0,1]");
    if (!(p.beta > -p.alpha)) throw std::invalid_argument("mittag-leffler: beta must exceed -alpha");
    Real a(p.alpha), b(p.beta), rr(r);
    return lgamma_real(b + 1) + lgamma_real(b / a + rr + 1) - lgamma_real(b / a + 1) -
           lgamma_real(b + a * rr + 1);
}

inline Real ml_moment(unsigned r, const MittagLefflerParams& p) {
    return exp(ml_log_moment(static_cast<double>(r), p));
}

// s_r = (1/r) log[ E X^r / ((delta p^{delta-1})^r E Y^r) ]; X ~ GenGammaProd,
// Y ~ ML(delta, beta). Tends to 0 iff the tails are similar.
inline std::vector<Real> tail_similarity_profile(const GenGammaProdSpec& spec,
                                                 const MittagLefflerParams& ml, unsigned r_max) {
    double delta = Rational(spec.delta()).convert_to<double>();
    if (std::abs(ml.alpha - delta) > 1e-12)
        throw std::invalid_argument("tail_similarity_profile: ml.alpha must equal the spec's delta");
    Real log_scale = (Real(delta) - 1) * log(Real(spec.p())) + log(Real(delta));
    std::vector<Real> out;
    out.reserve(r_max);
    for (unsigned r = 1; r <= r_max; ++r) {
        Real s = gengammaprod_log_moment(r, spec) - Real(r) * log_scale - ml_log_moment(r, ml);
        out.push_back(s / r);
    }
    return out;
}

// q_r = (E X^r)^{1/r} / sqrt(r); bounded iff the law has subgaussian tails.
inline std::vector<Real> subgaussian_profile(const GenGammaProdSpec& spec, unsigned r_max) {
    std::vector<Real> out;
    out.reserve(r_max);
    for (unsigned r = 1; r <= r_max; ++r)
        out.push_back(exp(gengammaprod_log_moment(r, spec) / r) / sqrt(Real(r)));
    return out;
}

// (1/r) log(E X^r / E X'^r) for two product laws; tends to 0 when only the
// slope delta and period p agree.
inline std::vector<Real> mutual_tail_profile(const GenGammaProdSpec& a, const GenGammaProdSpec& b,
                                             unsigned r_max) {
    std::vector<Real> out;
    out.reserve(r_max);
    for (unsigned r = 1; r <= r_max; ++r)
        out.push_back((gengammaprod_log_moment(r, a) - gengammaprod_log_moment(r, b)) / r);
    return out;
}

// --- periodic patterns as shape paths, and their cyclic shift -------------
//
// A pattern (l_1..l_p) with l_p >= 1 encodes the staircase path of one period
// read from the north-west corner: (i_1, j_1; ...; i_m, j_m) with i_k right
// steps and j_k down steps. Concretely
//   (l_1,...,l_p) = (0^{j_m-1}, i_m, 0^{j_{m-1}-1}, i_{m-1}, ..., 0^{j_1-1}, i_1),
// so p = sum j_k and l = sum i_k. The cyclic shift rotates the path to
// (j_m, i_1; j_1, i_2; ...; j_{m-1}, i_m), swapping the roles of p and l.

struct ShapePath {
    std::vector<std::pair<std::int64_t, std::int64_t>> segments;  // (i_k, j_k)
};

inline ShapePath pattern_to_path(const std::vector<std::int64_t>& ells) {
    if (ells.empty() || ells.back() <= 0)
        throw std::invalid_argument("pattern_to_path: pattern must end with a positive entry");
    ShapePath path;
    // read (l_p, l_{p-1}, ..., l_1): i_1, then j_1-1 zeros, i_2, ...
    std::size_t pos = ells.size();
    while (pos > 0) {
        std::int64_t i = ells[pos - 1];
        if (i <= 0) throw std::invalid_argument("pattern_to_path: malformed pattern");
        --pos;
        std::int64_t zeros = 0;
        while (pos > 0 && ells[pos - 1] == 0) {
            ++zeros;
            --pos;
        }
        path.segments.emplace_back(i, zeros + 1);
    }
    return path;
}

inline std::vector<std::int64_t> path_to_pattern(const ShapePath& path) {
    std::vector<std::int64_t> ells;
    for (std::size_t k = path.segments.size(); k-- > 0;) {
        auto [i, j] = path.segments[k];
        for (std::int64_t z = 0; z < j - 1; ++z) ells.push_back(0);
        ells.push_back(i);
    }
    return ells;
}

inline ShapePath cyclic_shift(const ShapePath& path) {
    std::size_t m = path.segments.size();
    ShapePath out;
    out.segments.resize(m);
    out.segments[0] = {path.segments[m - 1].second, path.segments[0].first};
    for (std::size_t k = 1; k < m; ++k)
        out.segments[k] = {path.segments[k - 1].second, path.segments[k].first};
    return out;
}

inline std::vector<std::int64_t> cyclic_shift_pattern(const std::vector<std::int64_t>& ells) {
    return path_to_pattern(cyclic_shift(pattern_to_path(ells)));
}

// Y Y' = Gamma(b0)/(p+l) in law, with Y = GenGammaProd([l_1..l_p]; b0, w0) and
// Y' = GenGammaProd(shifted pattern; b0+w0, j_m), j_m the smallest index with
// l_{j_m} > 0. Returns max over r <= r_max of the relative moment defect.
inline Real gamma_factorization_check(const std::vector<std::int64_t>& ells, std::int64_t b0,
                                      std::int64_t w0, unsigned r_max) {
    bool any = false;
    for (auto l : ells) any |= (l > 0);
    if (!any) throw std::invalid_argument("gamma_factorization_check: all-zero pattern");
    std::int64_t jm = 0;
    for (std::size_t i = 0; i < ells.size(); ++i)
        if (ells[i] > 0) {
            jm = static_cast<std::int64_t>(i + 1);
            break;
        }
    GenGammaProdSpec y{ells, b0, w0};
    GenGammaProdSpec yshift{cyclic_shift_pattern(ells), b0 + w0, jm};
    std::int64_t q = y.p() + y.ell();
    Real worst = 0;
    for (unsigned r = 1; r <= r_max; ++r) {
        Real lhs = gengammaprod_log_moment(r, y) + gengammaprod_log_moment(r, yshift) +
                   Real(r) * log(Real(q));
        Real rhs = lgamma_real(Real(b0) + r) - lgamma_real(Real(b0));
        Real rel = abs(exp(lhs - rhs) - 1);
        if (rel > worst) worst = rel;
    }
    return worst;
}

}  // namespace perioda
