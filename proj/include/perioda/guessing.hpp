#pragma once

// Guessing linear recurrences with polynomial coefficients from an integer
// sequence prefix, by exact rational kernel computation on the ansatz system
//   sum_{k=0}^{K} P_k(n) a(n+k) = 0,   deg P_k <= D.
//
// Candidates are searched by minimal order, then minimal degree. A candidate
// must annihilate the whole prefix including the guard terms held out of the
// fitting window; otherwise the search continues.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "perioda/numbers.hpp"

namespace perioda {

struct PRecurrence {
    unsigned order = 0;
    // coeffs[k] = polynomial multiplying a(n+k), ascending powers of n,
    // normalized to coprime integers with positive leading coefficient of
    // the order-th polynomial.
    std::vector<std::vector<Rational>> coeffs;

    Rational eval_coeff(unsigned k, const BigInt& n) const {
        Rational v = 0;
        BigInt pw = 1;
        for (const auto& c : coeffs[k]) {
            v += c * Rational(pw);
            pw *= n;
        }
        return v;
    }

    bool annihilates(const std::vector<BigInt>& seq) const {
        if (seq.size() < order + 1) return false;
        for (std::size_t n = 0; n + order < seq.size(); ++n) {
            Rational acc = 0;
            for (unsigned k = 0; k <= order; ++k)
                acc += eval_coeff(k, BigInt(n)) * Rational(seq[n + k]);
            if (acc != 0) return false;
        }
        return true;
    }
};

namespace detail {

// Kernel basis of the column space of an m x c rational matrix.
inline std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> a,
                                                       std::size_t cols) {
    std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        Rational inv = a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline void normalize_integral(std::vector<std::vector<Rational>>& coeffs) {
    BigInt l = 1, g = 0;
    for (auto& poly : coeffs)
        for (auto& c : poly) l = boost::multiprecision::lcm(l, denominator(c));
    for (auto& poly : coeffs)
        for (auto& c : poly) {
            c *= Rational(l);
            g = boost::multiprecision::gcd(g, numerator(c));
        }
    if (g == 0) return;
    for (auto& poly : coeffs)
        for (auto& c : poly) c /= Rational(g);
    // positive leading coefficient of the leading polynomial
    const auto& lead = coeffs.back();
    for (std::size_t i = lead.size(); i-- > 0;) {
        if (lead[i] == 0) continue;
        if (lead[i] < 0)
            for (auto& poly : coeffs)
                for (auto& c : poly) c = -c;
        break;
    }
}

}  // namespace detail

// Returns the minimal-order, then minimal-degree recurrence annihilating the
// prefix, or nullopt if none exists within (max_order, max_degree).
inline std::optional<PRecurrence> guess_p_recurrence(const std::vector<BigInt>& prefix,
                                                     unsigned max_order, unsigned max_degree,
                                                     unsigned guard_terms = 5) {
    std::size_t need = static_cast<std::size_t>(max_order + 1) * (max_degree + 2) + guard_terms;
    if (prefix.size() < need)
        throw std::invalid_argument("guess_p_recurrence: prefix too short (need " +
                                    std::to_string(need) + " terms)");
    std::size_t fit_len = prefix.size() - guard_terms;

    for (unsigned order = 1; order <= max_order; ++order) {
        for (unsigned degree = 0; degree <= max_degree; ++degree) {
            std::size_t cols = static_cast<std::size_t>(order + 1) * (degree + 1);
            if (fit_len < order + 1) continue;
            std::size_t rows = fit_len - order;
            if (rows < cols + 1) continue;  // demand an overdetermined system
            std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(cols));
            for (std::size_t n = 0; n < rows; ++n) {
                std::size_t c = 0;
                for (unsigned k = 0; k <= order; ++k) {
                    BigInt pw = 1;
                    for (unsigned d = 0; d <= degree; ++d) {
                        mat[n][c++] = Rational(pw * prefix[n + k]);
                        pw *= BigInt(n);
                    }
                }
            }
            auto basis = detail::kernel_basis(std::move(mat), cols);
            for (const auto& v : basis) {
                PRecurrence rec;
                rec.order = order;
                rec.coeffs.assign(order + 1, std::vector<Rational>(degree + 1, Rational(0)));
                std::size_t c = 0;
                for (unsigned k = 0; k <= order; ++k)
                    for (unsigned d = 0; d <= degree; ++d) rec.coeffs[k][d] = v[c++];
                bool lead_zero = true;
                for (const auto& cf : rec.coeffs[order]) lead_zero &= (cf == 0);
                if (lead_zero) continue;  // really lower order; already handled
                detail::normalize_integral(rec.coeffs);
                if (rec.annihilates(prefix)) return rec;
            }
        }
    }
    return std::nullopt;
}

}  // namespace perioda
