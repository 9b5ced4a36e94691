#pragma once

// Young tableau shapes (French convention), hook lengths, exact SYT counting
// and enumeration, the hook-walk uniform sampler, corner-entry laws, order
// statistics, and the argmax-position law of triangular tableaux.
//
// Cells are addressed as (column, row), both 1-based, column 1 leftmost and
// row 1 at the bottom; fillings increase left-to-right along rows and
// bottom-to-top along columns.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "perioda/numbers.hpp"
#include "perioda/rng.hpp"

namespace perioda {

struct TableauShape {
    std::vector<std::int64_t> columns;  // weakly decreasing positive heights

    std::int64_t num_columns() const { return static_cast<std::int64_t>(columns.size()); }
    std::int64_t height(std::int64_t c) const { return columns[static_cast<std::size_t>(c - 1)]; }
    std::int64_t num_cells() const {
        std::int64_t n = 0;
        for (auto h : columns) n += h;
        return n;
    }
    std::int64_t row_length(std::int64_t r) const {
        std::int64_t len = 0;
        for (auto h : columns) {
            if (h >= r) ++len;
            else break;
        }
        return len;
    }
    bool contains(std::int64_t c, std::int64_t r) const {
        return c >= 1 && c <= num_columns() && r >= 1 && r <= height(c);
    }

    // distinct heights with multiplicities: lambda_1^{i_1} ... lambda_n^{i_n}
    std::vector<std::pair<std::int64_t, std::int64_t>> grouped() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> g;
        for (auto h : columns) {
            if (!g.empty() && g.back().first == h) ++g.back().second;
            else g.emplace_back(h, 1);
        }
        return g;
    }
};

inline TableauShape validate_shape(TableauShape s) {
    if (s.columns.empty()) throw std::invalid_argument("shape: needs at least one column");
    for (std::size_t i = 0; i < s.columns.size(); ++i) {
        if (s.columns[i] < 1) throw std::invalid_argument("shape: column heights must be positive");
        if (i > 0 && s.columns[i] > s.columns[i - 1])
            throw std::invalid_argument("shape: column heights must be weakly decreasing");
    }
    return s;
}

// First l columns of height np, next l of height (n-1)p, ..., last l of height p.
inline TableauShape triangular_shape(std::int64_t l, std::int64_t p, std::int64_t n) {
    if (l < 1 || p < 1 || n < 1) throw std::invalid_argument("triangular_shape: parameters must be >= 1");
    TableauShape s;
    s.columns.reserve(static_cast<std::size_t>(l * n));
    for (std::int64_t k = n; k >= 1; --k)
        for (std::int64_t c = 0; c < l; ++c) s.columns.push_back(k * p);
    return s;
}

// One period contributes heights bp with multiplicity l_p, bp-1 with l_{p-1},
// ..., bp-p+1 with l_1, for blocks b = n .. 1.
inline TableauShape periodic_pattern_shape(const std::vector<std::int64_t>& ells, std::int64_t n) {
    if (ells.empty()) throw std::invalid_argument("periodic_pattern_shape: empty pattern");
    std::int64_t p = static_cast<std::int64_t>(ells.size());
    TableauShape s;
    for (std::int64_t b = n; b >= 1; --b)
        for (std::int64_t j = p; j >= 1; --j) {
            std::int64_t mult = ells[static_cast<std::size_t>(j - 1)];
            for (std::int64_t c = 0; c < mult; ++c) s.columns.push_back(b * p - (p - j));
        }
    return validate_shape(s);
}

// Adds b0 to every height and appends w0 columns of height b0.
inline TableauShape shifted_by_block(TableauShape s, std::int64_t b0, std::int64_t w0) {
    for (auto& h : s.columns) h += b0;
    for (std::int64_t c = 0; c < w0; ++c) s.columns.push_back(b0);
    return validate_shape(s);
}

inline std::int64_t hook_length(const TableauShape& s, std::int64_t c, std::int64_t r) {
    return (s.height(c) - r) + (s.row_length(r) - c) + 1;
}

inline std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> hook_lengths(
    const TableauShape& s) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> out;
    for (std::int64_t c = 1; c <= s.num_columns(); ++c)
        for (std::int64_t r = 1; r <= s.height(c); ++r) out[{c, r}] = hook_length(s, c, r);
    return out;
}

inline BigInt count_syt(const TableauShape& s) {
    BigInt num = factorial(static_cast<unsigned>(s.num_cells()));
    for (std::int64_t c = 1; c <= s.num_columns(); ++c)
        for (std::int64_t r = 1; r <= s.height(c); ++r) num /= hook_length(s, c, r);
    return num;
}

// ---------------------------------------------------------------------------

struct StandardFilling {
    TableauShape shape;
    std::vector<std::int64_t> values;  // column-major: columns left to right, rows bottom up

    std::int64_t& at(std::int64_t c, std::int64_t r) { return values[index(c, r)]; }
    std::int64_t at(std::int64_t c, std::int64_t r) const { return values[index(c, r)]; }

    std::size_t index(std::int64_t c, std::int64_t r) const {
        std::size_t id = 0;
        for (std::int64_t cc = 1; cc < c; ++cc) id += static_cast<std::size_t>(shape.height(cc));
        return id + static_cast<std::size_t>(r - 1);
    }

    // rows bottom to top, each left to right
    std::vector<std::vector<std::int64_t>> rows() const {
        std::vector<std::vector<std::int64_t>> out;
        for (std::int64_t r = 1; r <= shape.height(1); ++r) {
            std::vector<std::int64_t> row;
            for (std::int64_t c = 1; c <= shape.row_length(r); ++c) row.push_back(at(c, r));
            out.push_back(std::move(row));
        }
        return out;
    }
};

namespace detail {

inline void enumerate_syt_rec(const TableauShape& shape, std::vector<std::int64_t>& next_row,
                              StandardFilling& partial, std::int64_t value,
                              std::vector<StandardFilling>& out) {
    std::int64_t n = shape.num_cells();
    if (value > n) {
        out.push_back(partial);
        return;
    }
    for (std::int64_t c = 1; c <= shape.num_columns(); ++c) {
        std::int64_t r = next_row[static_cast<std::size_t>(c - 1)];
        if (r > shape.height(c)) continue;
        if (c > 1 && next_row[static_cast<std::size_t>(c - 2)] <= r) continue;  // left cell unfilled
        partial.at(c, r) = value;
        next_row[static_cast<std::size_t>(c - 1)] = r + 1;
        enumerate_syt_rec(shape, next_row, partial, value + 1, out);
        next_row[static_cast<std::size_t>(c - 1)] = r;
    }
}

}  // namespace detail

inline std::vector<StandardFilling> brute_force_syt(const TableauShape& shape,
                                                    std::int64_t max_cells = 16) {
    if (shape.num_cells() > max_cells)
        throw std::invalid_argument("brute_force_syt: shape too large");
    StandardFilling partial{shape, std::vector<std::int64_t>(
                                       static_cast<std::size_t>(shape.num_cells()), 0)};
    std::vector<std::int64_t> next_row(shape.columns.size(), 1);
    std::vector<StandardFilling> out;
    detail::enumerate_syt_rec(shape, next_row, partial, 1, out);
    return out;
}

namespace detail {

// Mutable removal state shared by the full sampler and the corner sampler.
struct HookWalkState {
    std::vector<std::int64_t> heights;
    std::vector<std::int64_t> row_len;  // row_len[r-1] = #columns with height >= r
    std::int64_t remaining = 0;

    explicit HookWalkState(const TableauShape& s) : heights(s.columns) {
        std::int64_t top = heights.empty() ? 0 : heights.front();
        row_len.assign(static_cast<std::size_t>(top), 0);
        for (auto h : heights)
            for (std::int64_t r = 1; r <= h; ++r) ++row_len[static_cast<std::size_t>(r - 1)];
        remaining = 0;
        for (auto h : heights) remaining += h;
    }

    // one hook walk to a corner; removes it and returns its coordinates
    std::pair<std::int64_t, std::int64_t> remove_random_corner(Rng& rng) {
        std::int64_t cols = row_len[0];
        std::int64_t top = heights[0];
        std::int64_t c, r;
        do {  // uniform start cell by rejection from the bounding box
            c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cols))) + 1;
            r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(top))) + 1;
        } while (r > heights[static_cast<std::size_t>(c - 1)]);
        for (;;) {
            std::int64_t arm = row_len[static_cast<std::size_t>(r - 1)] - c;
            std::int64_t leg = heights[static_cast<std::size_t>(c - 1)] - r;
            std::int64_t t = arm + leg;
            if (t == 0) break;
            std::int64_t u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(t))) + 1;
            if (u <= arm) c += u;
            else r += u - arm;
        }
        heights[static_cast<std::size_t>(c - 1)] -= 1;
        row_len[static_cast<std::size_t>(r - 1)] -= 1;
        --remaining;
        return {c, r};
    }
};

}  // namespace detail

// Uniform standard filling: labels N, N-1, ... are assigned to hook-walk
// corners, removing each corner as it is labelled.
inline StandardFilling hook_walk_sample(const TableauShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    detail::HookWalkState st(shape);
    StandardFilling fill{shape, std::vector<std::int64_t>(
                                    static_cast<std::size_t>(shape.num_cells()), 0)};
    for (std::int64_t label = shape.num_cells(); label >= 1; --label) {
        auto [c, r] = st.remove_random_corner(rng);
        fill.at(c, r) = label;
    }
    return fill;
}

// Entry of the south-east corner cell (last column, row 1) under a uniform
// filling; stops as soon as that cell is removed.
inline std::int64_t corner_entry_sample(const TableauShape& shape, Rng& rng) {
    detail::HookWalkState st(shape);
    std::int64_t target_c = shape.num_columns();
    for (std::int64_t label = shape.num_cells(); label >= 1; --label) {
        auto [c, r] = st.remove_random_corner(rng);
        if (c == target_c && r == 1) return label;
    }
    throw std::logic_error("corner_entry_sample: corner never removed");
}

// Exact law of the south-east corner entry: brute force for small shapes,
// the binomial closed form for rectangles of any size.
inline std::map<std::int64_t, Rational> corner_distribution_exact(const TableauShape& shape,
                                                                  std::int64_t max_cells = 16) {
    auto groups = shape.grouped();
    std::int64_t n = shape.num_cells();
    if (groups.size() == 1) {
        std::int64_t lambda = groups[0].first, i1 = groups[0].second;
        std::map<std::int64_t, Rational> law;
        BigInt denom = binomial(BigInt(lambda * i1), static_cast<unsigned>(lambda + i1 - 1));
        for (std::int64_t k = 1; k <= n; ++k) {
            BigInt num = binomial(BigInt(k - 1), static_cast<unsigned>(i1 - 1)) *
                         binomial(BigInt(lambda * i1 - k), static_cast<unsigned>(lambda - 1));
            if (num != 0) law[k] = Rational(num, denom);
        }
        return law;
    }
    if (n > max_cells)
        throw std::invalid_argument("corner_distribution_exact: non-rectangular shape too large");
    auto fillings = brute_force_syt(shape, max_cells);
    std::map<std::int64_t, Rational> law;
    Rational w(1, static_cast<std::int64_t>(fillings.size()));
    for (const auto& f : fillings) law[f.at(shape.num_columns(), 1)] += w;
    return law;
}

// Lemma-level order statistics: Z ~ Beta(a, s+1-a), I = #{i <= N-s-1 : Z_i < Z}.
inline std::pair<Rational, Rational> order_statistic_moments(std::int64_t N, std::int64_t s,
                                                             std::int64_t a) {
    if (a < 1 || a > s || N < s + 1)
        throw std::invalid_argument("order_statistic_moments: need 1 <= a <= s and N >= s+1");
    Rational ei = Rational(a * (N - s - 1), s + 1);
    Rational ei2 = Rational(a * (N - s - 1)) * Rational((a + 1) * N - (s + 2) * a) /
                   Rational((s + 1) * (s + 2));
    return {ei, ei2};
}

// P(x-coordinate of the largest entry = k*l) for the triangular shape
// (l, p, n): remove the block-k corner and take the hook-ratio product.
// Products accumulate as separate big integers; one reduction per corner.
inline std::map<std::int64_t, Rational> argmax_position_distribution(std::int64_t l,
                                                                     std::int64_t p,
                                                                     std::int64_t n) {
    TableauShape shape = triangular_shape(l, p, n);
    std::int64_t N = shape.num_cells();
    std::int64_t top = shape.columns.front();
    std::vector<std::int64_t> row_len(static_cast<std::size_t>(top) + 1, 0);
    for (std::int64_t r = 1; r <= top; ++r) row_len[static_cast<std::size_t>(r)] = shape.row_length(r);
    auto hook = [&](std::int64_t c, std::int64_t r) {
        return (shape.height(c) - r) + (row_len[static_cast<std::size_t>(r)] - c) + 1;
    };
    std::map<std::int64_t, Rational> law;
    for (std::int64_t k = 1; k <= n; ++k) {
        std::int64_t c_star = k * l;
        std::int64_t r_star = shape.height(c_star);  // = (n-k+1)p
        BigInt num = 1, den = N;
        for (std::int64_t c = 1; c < c_star; ++c) {
            std::int64_t h = hook(c, r_star);
            num *= h;
            den *= h - 1;
        }
        for (std::int64_t r = 1; r < r_star; ++r) {
            std::int64_t h = hook(c_star, r);
            num *= h;
            den *= h - 1;
        }
        law[k] = Rational(num, den);
    }
    return law;
}

// Generalized arcsine density x^{delta-1}(1-x)^{-delta} / (Gamma(delta)Gamma(1-delta)).
inline Real arcsine_density(double x, double delta) {
    if (!(x > 0 && x < 1)) throw std::domain_error("arcsine_density: x must lie in (0,1)");
    Real xx(x), d(delta);
    Real norm = exp(lgamma_real(d) + lgamma_real(1 - d));
    return pow(xx, d - 1) * pow(1 - xx, -d) / norm;
}

}  // namespace perioda
