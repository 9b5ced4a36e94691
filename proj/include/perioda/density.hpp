#pragma once

// The density method, exactly: sparse rational polynomials, the diagonal
// slicing of a tableau with its four interlocking cases, the iterated-
// integral chain for the south-east corner density g_M, the tree analogue
// h_{v_m}, filament extensions, and the proportionality check between the
// two densities.
//
// Diagonals are the slope +1 lines of the shape; D_1 is the north-west
// corner, D_M the south-east corner, M = lambda_1 + (#columns) - 1. Between
// consecutive diagonals the cells interlock in one of four ways, each giving
// one pattern of integration bounds (every bound is 0, 1, or a single
// variable of the next diagonal).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "perioda/links.hpp"
#include "perioda/numbers.hpp"
#include "perioda/tableaux.hpp"
#include "perioda/trees.hpp"

namespace perioda {

class SparsePolynomial {
public:
    using Exponents = std::vector<int>;

    explicit SparsePolynomial(std::size_t arity = 0) : arity_(arity) {}

    static SparsePolynomial constant(std::size_t arity, const Rational& c) {
        SparsePolynomial p(arity);
        if (c != 0) p.terms_[Exponents(arity, 0)] = c;
        return p;
    }

    std::size_t arity() const { return arity_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePolynomial operator+(const SparsePolynomial& o) const {
        SparsePolynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    SparsePolynomial operator-(const SparsePolynomial& o) const {
        SparsePolynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    SparsePolynomial operator*(const SparsePolynomial& o) const {
        SparsePolynomial r(arity_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e = e1;
                for (std::size_t i = 0; i < arity_; ++i) e[i] += e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    SparsePolynomial scaled(const Rational& c) const {
        SparsePolynomial r(arity_);
        if (c == 0) return r;
        for (const auto& [e, cc] : terms_) r.terms_[e] = cc * c;
        return r;
    }

    SparsePolynomial antiderivative(std::size_t v) const {
        SparsePolynomial r(arity_);
        for (const auto& [e, c] : terms_) {
            Exponents e2 = e;
            e2[v] += 1;
            r.terms_[e2] = c / e2[v];
        }
        return r;
    }

    // v := 0 / 1 / variable w
    SparsePolynomial substituted_zero(std::size_t v) const {
        SparsePolynomial r(arity_);
        for (const auto& [e, c] : terms_)
            if (e[v] == 0) r.add_term(e, c);
        return r;
    }
    SparsePolynomial substituted_one(std::size_t v) const {
        SparsePolynomial r(arity_);
        for (const auto& [e, c] : terms_) {
            Exponents e2 = e;
            e2[v] = 0;
            r.add_term(e2, c);
        }
        return r;
    }
    SparsePolynomial substituted_var(std::size_t v, std::size_t w) const {
        SparsePolynomial r(arity_);
        for (const auto& [e, c] : terms_) {
            Exponents e2 = e;
            e2[w] += e2[v];
            e2[v] = 0;
            r.add_term(e2, c);
        }
        return r;
    }

    SparsePolynomial with_arity(std::size_t arity) const {
        SparsePolynomial r(arity);
        for (const auto& [e, c] : terms_) {
            Exponents e2(arity, 0);
            for (std::size_t i = 0; i < arity_ && i < arity; ++i) e2[i] = e[i];
            for (std::size_t i = arity; i < arity_; ++i)
                if (e[i] != 0) throw std::logic_error("with_arity: dropping a used variable");
            r.terms_[std::move(e2)] = c;
        }
        return r;
    }

    // variable remap; entries < 0 require the variable to be unused
    SparsePolynomial remapped(const std::vector<int>& where, std::size_t arity) const {
        SparsePolynomial r(arity);
        for (const auto& [e, c] : terms_) {
            Exponents e2(arity, 0);
            for (std::size_t i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                if (where[i] < 0) throw std::logic_error("remapped: dropping a used variable");
                e2[static_cast<std::size_t>(where[i])] += e[i];
            }
            r.add_term(e2, c);
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& x) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < arity_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    std::size_t term_count() const { return terms_.size(); }

private:
    std::size_t arity_;
    std::map<Exponents, Rational> terms_;
};

// univariate helpers
inline Rational integral01(const SparsePolynomial& p) {
    if (p.arity() != 1) throw std::invalid_argument("integral01: univariate only");
    Rational acc = 0;
    for (const auto& [e, c] : p.terms()) acc += c / (e[0] + 1);
    return acc;
}

inline std::vector<Rational> univariate_coeffs(const SparsePolynomial& p) {
    if (p.arity() != 1) throw std::invalid_argument("univariate_coeffs: univariate only");
    std::vector<Rational> out(static_cast<std::size_t>(p.degree()) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[0])] = c;
    return out;
}

// --- diagonal decomposition -------------------------------------------------

struct DiagonalDecomposition {
    // diagonals[k] = cells (column, row) in increasing poset order
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> diagonals;
    std::vector<int> case_tags;  // one of 1..4 per consecutive pair
};

inline DiagonalDecomposition decompose_diagonals(const TableauShape& shape) {
    std::int64_t lambda1 = shape.height(1);
    std::int64_t m = shape.num_columns();
    std::int64_t M = lambda1 + m - 1;
    DiagonalDecomposition dec;
    dec.diagonals.resize(static_cast<std::size_t>(M));
    for (std::int64_t c = 1; c <= m; ++c)
        for (std::int64_t r = 1; r <= shape.height(c); ++r)
            dec.diagonals[static_cast<std::size_t>(c - r + lambda1 - 1)].emplace_back(c, r);
    for (auto& d : dec.diagonals) {
        if (d.empty()) throw std::logic_error("decompose_diagonals: empty diagonal");
        // cells on a diagonal are generated column-ascending already
    }
    dec.case_tags.resize(static_cast<std::size_t>(M - 1));
    for (std::int64_t k = 0; k + 1 < M; ++k) {
        const auto& cur = dec.diagonals[static_cast<std::size_t>(k)];
        const auto& nxt = dec.diagonals[static_cast<std::size_t>(k + 1)];
        bool below = cur.front().second > 1;  // next diagonal starts under us
        auto [chi, rhi] = cur.back();
        bool beyond = shape.contains(chi + 1, rhi);  // and ends past our top cell
        int tag;
        std::size_t expect;
        if (!below && beyond) {
            tag = 1;
            expect = cur.size();
        } else if (below && !beyond) {
            tag = 2;
            expect = cur.size();
        } else if (!below && !beyond) {
            tag = 3;
            expect = cur.size() - 1;
        } else {
            tag = 4;
            expect = cur.size() + 1;
        }
        if (nxt.size() != expect)
            throw std::logic_error("decompose_diagonals: interlock case does not match sizes");
        dec.case_tags[static_cast<std::size_t>(k)] = tag;
    }
    return dec;
}

// --- the corner density chain ------------------------------------------------

struct CornerDensity {
    SparsePolynomial poly{1};  // g_M (or h_{v_m}), not normalized
    std::int64_t N = 0;        // poset size
    Rational normalization;    // integral of poly over [0,1]
};

namespace detail {

// One transition g_k -> g_{k+1}. The polynomial g lives on variables
// 0..j-1 (current diagonal); the result lives on 0..j2-1.
inline SparsePolynomial integrate_diagonal(const SparsePolynomial& g, std::size_t j,
                                           std::size_t j2, int tag) {
    // slots: y_i -> i, x_t -> j + t
    SparsePolynomial cur = g.with_arity(j + j2);
    auto xvar = [&](std::size_t t) { return j + t; };  // t is 0-based
    for (std::size_t i = 0; i < j; ++i) {
        // bounds of y_{i+1} per case; -1 encodes the constants
        int lower = -1, upper = -1;  // -1: 0 resp. 1
        switch (tag) {
            case 1:  // y_1<x_1<...<y_j<x_j
                if (i > 0) lower = static_cast<int>(xvar(i - 1));
                upper = static_cast<int>(xvar(i));
                break;
            case 2:  // x_1<y_1<...<x_j<y_j
                lower = static_cast<int>(xvar(i));
                if (i + 1 < j) upper = static_cast<int>(xvar(i + 1));
                break;
            case 3:  // y_1<x_1<...<x_{j-1}<y_j
                if (i > 0) lower = static_cast<int>(xvar(i - 1));
                if (i + 1 < j) upper = static_cast<int>(xvar(i));
                break;
            case 4:  // x_1<y_1<...<y_j<x_{j+1}
                lower = static_cast<int>(xvar(i));
                upper = static_cast<int>(xvar(i + 1));
                break;
            default:
                throw std::logic_error("integrate_diagonal: bad case tag");
        }
        SparsePolynomial anti = cur.antiderivative(i);
        SparsePolynomial at_upper =
            (upper < 0) ? anti.substituted_one(i) : anti.substituted_var(i, static_cast<std::size_t>(upper));
        SparsePolynomial at_lower =
            (lower < 0) ? anti.substituted_zero(i) : anti.substituted_var(i, static_cast<std::size_t>(lower));
        cur = at_upper - at_lower;
    }
    // drop the y slots, move x_t -> t
    std::vector<int> where(j + j2, -1);
    for (std::size_t t = 0; t < j2; ++t) where[j + t] = static_cast<int>(t);
    return cur.remapped(where, j2);
}

}  // namespace detail

inline CornerDensity corner_density_polynomial(const TableauShape& shape,
                                               std::int64_t max_diagonal = 8,
                                               std::int64_t max_cells = 30) {
    if (shape.num_cells() > max_cells)
        throw std::invalid_argument("corner_density_polynomial: shape exceeds the cell budget");
    DiagonalDecomposition dec = decompose_diagonals(shape);
    for (const auto& d : dec.diagonals)
        if (static_cast<std::int64_t>(d.size()) > max_diagonal)
            throw std::invalid_argument("corner_density_polynomial: diagonal exceeds the budget");
    SparsePolynomial g = SparsePolynomial::constant(dec.diagonals.front().size(), Rational(1));
    for (std::size_t k = 0; k + 1 < dec.diagonals.size(); ++k)
        g = detail::integrate_diagonal(g, dec.diagonals[k].size(), dec.diagonals[k + 1].size(),
                                       dec.case_tags[k]);
    CornerDensity d;
    d.poly = g;
    d.N = shape.num_cells();
    d.normalization = integral01(g);
    return d;
}

// Entry law from a corner density: solve for P(X=k) in
//   poly/normalization = sum_k P(X=k) k C(N,k) x^{k-1} (1-x)^{N-k}.
inline std::map<std::int64_t, Rational> entry_law_from_density(const CornerDensity& density) {
    std::size_t N = static_cast<std::size_t>(density.N);
    if (density.poly.degree() > density.N - 1)
        throw std::invalid_argument("entry_law_from_density: density degree exceeds N-1");
    if (density.normalization == 0)
        throw std::invalid_argument("entry_law_from_density: zero normalization");
    // A[d][k-1] = [x^d] k C(N,k) x^{k-1}(1-x)^{N-k}
    std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N + 1, Rational(0)));
    for (std::size_t k = 1; k <= N; ++k) {
        BigInt pref = BigInt(k) * binomial(BigInt(N), static_cast<unsigned>(k));
        for (std::size_t t = 0; t <= N - k; ++t) {
            std::size_t d = k - 1 + t;
            BigInt c = pref * binomial(BigInt(N - k), static_cast<unsigned>(t));
            a[d][k - 1] += Rational((t % 2 == 0) ? c : -c);
        }
    }
    auto coeffs = univariate_coeffs(density.poly);
    for (std::size_t d = 0; d < N; ++d) {
        Rational rhs = (d < coeffs.size()) ? coeffs[d] / density.normalization : Rational(0);
        a[d][N] = rhs;
    }
    // Gaussian elimination; the basis is invertible, so a singular system
    // signals corrupted input.
    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(N, 0);
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t sel = row;
        while (sel < N && a[sel][c] == 0) ++sel;
        if (sel == N) throw std::invalid_argument("entry_law_from_density: singular system");
        std::swap(a[sel], a[row]);
        Rational inv = a[row][c];
        for (std::size_t j = c; j <= N; ++j) a[row][j] /= inv;
        for (std::size_t i = 0; i < N; ++i) {
            if (i == row || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j <= N; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_of_col[c] = row++;
    }
    std::map<std::int64_t, Rational> law;
    Rational sum = 0;
    for (std::size_t k = 1; k <= N; ++k) {
        Rational p = a[pivot_of_col[k - 1]][N];
        if (p < 0) throw std::invalid_argument("entry_law_from_density: negative probability");
        if (p != 0) law[static_cast<std::int64_t>(k)] = p;
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("entry_law_from_density: probabilities do not sum to 1");
    return law;
}

// Tree-side density of the marked vertex of a comb: with L_q leaves at spine
// position q, h(x) = (1-x)^{L_m} I_{m-1}(x), I_q(x) = int_0^x I_{q-1}(1-y)^{L_q} dy.
// This is the marginal the iterated sibling integrals compute.
inline CornerDensity tree_corner_density(const CombTreeShape& shape_in,
                                         std::int64_t max_size = 64) {
    CombTreeShape shape = validate_comb(shape_in);
    if (shape.size() > max_size)
        throw std::invalid_argument("tree_corner_density: comb exceeds the budget");
    std::int64_t m = shape.spine_length();
    std::vector<std::int64_t> leaves(static_cast<std::size_t>(m) + 1, 0);
    for (std::size_t k = 0; k < shape.segments.size(); ++k)
        leaves[static_cast<std::size_t>(shape.junction_position(k))] = shape.segments[k].second;

    SparsePolynomial one_minus(1);
    one_minus.add_term({0}, Rational(1));
    one_minus.add_term({1}, Rational(-1));

    SparsePolynomial cur = SparsePolynomial::constant(1, Rational(1));
    for (std::int64_t q = 1; q <= m - 1; ++q) {
        for (std::int64_t t = 0; t < leaves[static_cast<std::size_t>(q)]; ++t)
            cur = cur * one_minus;
        SparsePolynomial anti = cur.antiderivative(0);
        cur = anti;  // lower bound 0 contributes nothing
    }
    for (std::int64_t t = 0; t < leaves[static_cast<std::size_t>(m)]; ++t) cur = cur * one_minus;

    CornerDensity d;
    d.poly = cur;
    d.N = shape.size();
    d.normalization = integral01(cur);
    return d;
}

// Filament extension: g_{M,L}(x) = g_M(x) (1-x)^L / L!, N grows by L.
inline CornerDensity filament_extension(const CornerDensity& density, std::int64_t L) {
    if (L < 0) throw std::invalid_argument("filament_extension: negative length");
    SparsePolynomial one_minus(1);
    one_minus.add_term({0}, Rational(1));
    one_minus.add_term({1}, Rational(-1));
    SparsePolynomial p = density.poly;
    for (std::int64_t t = 0; t < L; ++t) p = p * one_minus;
    p = p.scaled(Rational(1, factorial(static_cast<unsigned>(L))));
    CornerDensity d;
    d.poly = p;
    d.N = density.N + L;
    d.normalization = integral01(p);
    return d;
}

// G_L of the filament identity: with shape lambda_1^{i_1}...lambda_n^{i_n},
//   G_L = L! prod_k falling(i_1+..+i_k+L+lambda_k-1, i_k)
//              / falling(i_1+..+i_k+lambda_k-1, i_k).
inline Rational filament_constant_G(const TableauShape& shape, std::int64_t L) {
    auto groups = shape.grouped();
    Rational g = Rational(factorial(static_cast<unsigned>(L)));
    std::int64_t isum = 0;
    for (auto [lambda, mult] : groups) {
        isum += mult;
        g *= Rational(falling_factorial(BigInt(isum + L + lambda - 1), static_cast<unsigned>(mult)),
                      falling_factorial(BigInt(isum + lambda - 1), static_cast<unsigned>(mult)));
    }
    return g;
}

struct FilamentCheck {
    Rational constant;  // predicted c = |Y|!/|S|! ext(S)/ext(Y)
    bool proportional = false;
};

// Lemma-level check: h_{v_m} = c g_M coefficient-wise with the predicted c.
inline FilamentCheck filament_constant_check(const TableauShape& shape) {
    CornerDensity g = corner_density_polynomial(shape);
    CombTreeShape t = tableau_to_small_tree(shape);
    CornerDensity h = tree_corner_density(t);
    BigInt ext_y = count_syt(shape);
    BigInt ext_s = tree_ext_count(t);
    Rational c = Rational(factorial(static_cast<unsigned>(shape.num_cells())), 1) /
                 Rational(factorial(static_cast<unsigned>(t.size())), 1) *
                 Rational(ext_s, ext_y);
    FilamentCheck chk;
    chk.constant = c;
    SparsePolynomial diff = h.poly - g.poly.scaled(c);
    chk.proportional = diff.is_zero();
    return chk;
}

}  // namespace perioda
