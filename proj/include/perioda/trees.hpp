#pragma once

// Comb trees (only leftmost-branch vertices have children), their linear
// extensions, the tree hook-length formula, uniform extension sampling, and
// the exact law of the marked vertex's label.
//
// A comb of shape (i_1,j_1; ...; i_n,j_n) has a spine of m = sum i_k vertices;
// the vertex closing segment k carries j_k leaf children. The marked vertex
// v_m is the deepest spine vertex (the paper's "parent of the leftmost leaf",
// which is the leftmost leaf itself when j_n = 0).

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "perioda/numbers.hpp"
#include "perioda/rng.hpp"

namespace perioda {

struct CombTreeShape {
    std::vector<std::pair<std::int64_t, std::int64_t>> segments;  // (i_k, j_k)

    std::int64_t spine_length() const {
        std::int64_t m = 0;
        for (auto& [i, j] : segments) m += i;
        return m;
    }
    std::int64_t size() const {
        std::int64_t n = 0;
        for (auto& [i, j] : segments) n += i + j;
        return n;
    }
    // spine position (1-based) of the junction closing segment k (0-based k)
    std::int64_t junction_position(std::size_t k) const {
        std::int64_t pos = 0;
        for (std::size_t t = 0; t <= k; ++t) pos += segments[t].first;
        return pos;
    }
};

inline CombTreeShape validate_comb(CombTreeShape c) {
    if (c.segments.empty()) throw std::invalid_argument("comb: needs at least one segment");
    for (auto& [i, j] : c.segments) {
        if (i < 1) throw std::invalid_argument("comb: segment lengths must be positive");
        if (j < 0) throw std::invalid_argument("comb: leaf counts must be non-negative");
    }
    return c;
}

// Explicit rooted tree: parent[v] (-1 for the root). Spine vertices come
// first (ids 0..m-1, id = position-1), then leaves grouped by junction.
struct CombTree {
    CombTreeShape shape;
    std::vector<std::int64_t> parent;
    std::vector<std::int64_t> subtree_size;  // hook length of each vertex

    std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }
    std::int64_t marked_vertex() const { return shape.spine_length() - 1; }  // id of v_m
};

inline CombTree build_comb_tree(const CombTreeShape& shape_in) {
    CombTreeShape shape = validate_comb(shape_in);
    CombTree t;
    t.shape = shape;
    std::int64_t m = shape.spine_length();
    std::int64_t n = shape.size();
    t.parent.assign(static_cast<std::size_t>(n), -1);
    for (std::int64_t v = 1; v < m; ++v) t.parent[static_cast<std::size_t>(v)] = v - 1;
    std::int64_t next = m;
    for (std::size_t k = 0; k < shape.segments.size(); ++k) {
        std::int64_t junction = shape.junction_position(k) - 1;
        for (std::int64_t c = 0; c < shape.segments[k].second; ++c)
            t.parent[static_cast<std::size_t>(next++)] = junction;
    }
    t.subtree_size.assign(static_cast<std::size_t>(n), 1);
    for (std::int64_t v = n - 1; v >= 0; --v)
        if (t.parent[static_cast<std::size_t>(v)] >= 0)
            t.subtree_size[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])] +=
                t.subtree_size[static_cast<std::size_t>(v)];
    return t;
}

// ext(T) = |T|! / prod_v subtree_size(v)
inline BigInt tree_ext_count(const CombTreeShape& shape) {
    CombTree t = build_comb_tree(shape);
    BigInt e = factorial(static_cast<unsigned>(t.size()));
    for (auto s : t.subtree_size) e /= s;
    return e;
}

struct LinearExtension {
    std::vector<std::int64_t> labels;  // vertex id -> label in 1..|T|
};

namespace detail {

inline void enumerate_ext_rec(const CombTree& t, std::vector<std::int64_t>& labels,
                              std::vector<bool>& placed, std::int64_t value,
                              std::vector<LinearExtension>& out) {
    std::int64_t n = t.size();
    if (value > n) {
        out.push_back({labels});
        return;
    }
    for (std::int64_t v = 0; v < n; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        std::int64_t par = t.parent[static_cast<std::size_t>(v)];
        if (par >= 0 && !placed[static_cast<std::size_t>(par)]) continue;
        placed[static_cast<std::size_t>(v)] = true;
        labels[static_cast<std::size_t>(v)] = value;
        enumerate_ext_rec(t, labels, placed, value + 1, out);
        placed[static_cast<std::size_t>(v)] = false;
    }
}

}  // namespace detail

inline std::vector<LinearExtension> brute_force_linear_extensions(const CombTreeShape& shape,
                                                                  std::int64_t max_size = 12) {
    if (shape.size() > max_size)
        throw std::invalid_argument("brute_force_linear_extensions: tree too large");
    CombTree t = build_comb_tree(shape);
    std::vector<std::int64_t> labels(static_cast<std::size_t>(t.size()), 0);
    std::vector<bool> placed(static_cast<std::size_t>(t.size()), false);
    std::vector<LinearExtension> out;
    detail::enumerate_ext_rec(t, labels, placed, 1, out);
    return out;
}

// Uniform linear extension: grow from the root, picking the next vertex among
// the available forest roots with probability subtree_size / remaining.
inline LinearExtension sample_linear_extension(const CombTreeShape& shape, std::uint64_t seed) {
    CombTree t = build_comb_tree(shape);
    Rng rng(seed);
    std::int64_t n = t.size();
    std::vector<std::vector<std::int64_t>> children(static_cast<std::size_t>(n));
    std::int64_t root = -1;
    for (std::int64_t v = 0; v < n; ++v) {
        std::int64_t par = t.parent[static_cast<std::size_t>(v)];
        if (par < 0) root = v;
        else children[static_cast<std::size_t>(par)].push_back(v);
    }
    std::vector<std::int64_t> available{root};
    LinearExtension ext{std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
    for (std::int64_t value = 1; value <= n; ++value) {
        std::int64_t remaining = n - value + 1;
        std::int64_t u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(remaining)));
        std::size_t pick = 0;
        for (std::size_t i = 0; i < available.size(); ++i) {
            u -= t.subtree_size[static_cast<std::size_t>(available[i])];
            if (u < 0) {
                pick = i;
                break;
            }
        }
        std::int64_t v = available[pick];
        ext.labels[static_cast<std::size_t>(v)] = value;
        available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
        for (auto c : children[static_cast<std::size_t>(v)]) available.push_back(c);
    }
    return ext;
}

// Exact law of E(v_m) under a uniform linear extension, by dynamic programming
// over downsets. A downset is (spine prefix s, leaves taken per junction);
// leaves at a junction require its spine vertex. f counts extension prefixes
// reaching a downset, g counts completions; leaves of a junction are
// interchangeable, contributing multiplicities.
inline std::map<std::int64_t, Rational> linear_extension_entry_law(const CombTreeShape& shape_in) {
    CombTreeShape shape = validate_comb(shape_in);
    std::int64_t m = shape.spine_length();
    std::int64_t n = shape.size();
    std::size_t num_j = shape.segments.size();
    std::vector<std::int64_t> jpos(num_j), jcnt(num_j);
    for (std::size_t k = 0; k < num_j; ++k) {
        jpos[k] = shape.junction_position(k);
        jcnt[k] = shape.segments[k].second;
    }
    // mixed-radix state encoding: s in [0..m], t_k in [0..j_k]
    std::vector<std::int64_t> radix(num_j + 1);
    radix[0] = m + 1;
    for (std::size_t k = 0; k < num_j; ++k) radix[k + 1] = jcnt[k] + 1;
    std::int64_t num_states = 1;
    for (auto r : radix) {
        num_states *= r;
        if (num_states > 50'000'000)
            throw std::invalid_argument("linear_extension_entry_law: comb too large");
    }
    auto encode = [&](std::int64_t s, const std::vector<std::int64_t>& t) {
        std::int64_t id = s;
        for (std::size_t k = 0; k < num_j; ++k) id = id * radix[k + 1] + t[k];
        return id;
    };
    std::vector<BigInt> f(static_cast<std::size_t>(num_states), BigInt(0));
    std::vector<BigInt> g(static_cast<std::size_t>(num_states), BigInt(0));

    // enumerate all valid states, bucketed by total size
    std::vector<std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>> by_total(
        static_cast<std::size_t>(n) + 1);
    std::vector<std::int64_t> t(num_j, 0);
    for (;;) {
        for (std::int64_t s = 0; s <= m; ++s) {
            bool valid = true;
            std::int64_t total = s;
            for (std::size_t k = 0; k < num_j; ++k) {
                if (t[k] > 0 && jpos[k] > s) valid = false;
                total += t[k];
            }
            if (valid) by_total[static_cast<std::size_t>(total)].emplace_back(s, t);
        }
        std::size_t k = 0;
        while (k < num_j && t[k] == jcnt[k]) t[k++] = 0;
        if (k == num_j) break;
        ++t[k];
    }

    f[static_cast<std::size_t>(encode(0, std::vector<std::int64_t>(num_j, 0)))] = 1;
    for (std::int64_t total = 0; total < n; ++total) {
        for (const auto& [s, tt] : by_total[static_cast<std::size_t>(total)]) {
            const BigInt& fv = f[static_cast<std::size_t>(encode(s, tt))];
            if (fv == 0) continue;
            if (s < m) {
                auto id = encode(s + 1, tt);
                f[static_cast<std::size_t>(id)] += fv;
            }
            for (std::size_t k = 0; k < num_j; ++k) {
                if (jpos[k] > s || tt[k] == jcnt[k]) continue;
                auto t2 = tt;
                ++t2[k];
                f[static_cast<std::size_t>(encode(s, t2))] += fv * (jcnt[k] - tt[k]);
            }
        }
    }
    for (const auto& [s, tt] : by_total[static_cast<std::size_t>(n)])
        g[static_cast<std::size_t>(encode(s, tt))] = 1;
    for (std::int64_t total = n; total-- > 0;) {
        for (const auto& [s, tt] : by_total[static_cast<std::size_t>(total)]) {
            BigInt acc = 0;
            if (s < m) acc += g[static_cast<std::size_t>(encode(s + 1, tt))];
            for (std::size_t k = 0; k < num_j; ++k) {
                if (jpos[k] > s || tt[k] == jcnt[k]) continue;
                auto t2 = tt;
                ++t2[k];
                acc += g[static_cast<std::size_t>(encode(s, t2))] * (jcnt[k] - tt[k]);
            }
            g[static_cast<std::size_t>(encode(s, tt))] = acc;
        }
    }

    BigInt ext = f[static_cast<std::size_t>(encode(m, jcnt))];
    // g at the empty state must agree
    if (g[static_cast<std::size_t>(encode(0, std::vector<std::int64_t>(num_j, 0)))] != ext)
        throw std::logic_error("linear_extension_entry_law: forward/backward count mismatch");

    // v_m enters when the spine grows from m-1 to m
    std::map<std::int64_t, Rational> law;
    for (std::int64_t total = m - 1; total <= n - 1; ++total) {
        BigInt ways = 0;
        for (const auto& [s, tt] : by_total[static_cast<std::size_t>(total)]) {
            if (s != m - 1) continue;
            ways += f[static_cast<std::size_t>(encode(s, tt))] *
                    g[static_cast<std::size_t>(encode(m, tt))];
        }
        if (ways != 0) law[total + 1] = Rational(ways, ext);
    }
    return law;
}

}  // namespace perioda
