#pragma once

// The two reductions behind the corner limit law: a tableau's south-east
// corner entry matches a marked-vertex label in a comb tree (shifted by one),
// and the marked-vertex label in a comb matches a generalized Polya urn
// schedule. Both transfers are exact at finite size and are used as such.

#include <cstdint>
#include <map>
#include <vector>

#include "perioda/limit_laws.hpp"
#include "perioda/numbers.hpp"
#include "perioda/parallel.hpp"
#include "perioda/rng.hpp"
#include "perioda/tableaux.hpp"
#include "perioda/trees.hpp"
#include "perioda/urn.hpp"

namespace perioda {

// Tableau of shape lambda_1^{i_1}...lambda_n^{i_n} -> comb tree of shape
// (1, N-m-lambda_1+1; i_1, lambda_1-lambda_2; ...; i_n, lambda_n-1); the
// marked vertex is the deepest spine vertex (spine position 1+m). Under
// uniform laws, E_T(v_m) = 1 + (south-east corner entry of the tableau).
inline CombTreeShape tableau_to_tree(const TableauShape& shape) {
    auto groups = shape.grouped();
    std::int64_t N = shape.num_cells();
    std::int64_t m = shape.num_columns();
    std::int64_t lambda1 = groups.front().first;
    CombTreeShape comb;
    comb.segments.emplace_back(1, N - m - lambda1 + 1);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        std::int64_t lambda = groups[k].first;
        std::int64_t next = (k + 1 < groups.size()) ? groups[k + 1].first : 1;
        comb.segments.emplace_back(groups[k].second, lambda - next);
    }
    return validate_comb(comb);
}

// The comb without the root segment: S = (i_1, lambda_1-lambda_2; ...;
// i_n, lambda_n-1). Its deepest spine vertex carries the corner density on
// the tree side.
inline CombTreeShape tableau_to_small_tree(const TableauShape& shape) {
    CombTreeShape t = tableau_to_tree(shape);
    CombTreeShape s;
    s.segments.assign(t.segments.begin() + 1, t.segments.end());
    return validate_comb(s);
}

// Law of E_T(v_m) minus 1: the exact corner-entry law transported through the
// tree side.
inline std::map<std::int64_t, Rational> corner_law_via_tree(const TableauShape& shape) {
    auto law = linear_extension_entry_law(tableau_to_tree(shape));
    std::map<std::int64_t, Rational> out;
    for (const auto& [pos, pr] : law) out[pos - 1] = pr;
    return out;
}

// Urn schedule equivalent to a comb: start with b0 = j_n+1 black, w0 = i_n
// white; per junction k = n-1..1 with j_k >= 1, j_k - 1 plain Polya draws and
// one draw adding i_k extra whites; a junction with j_k = 0 contributes its
// i_k whites deterministically. The final black count B satisfies
//   |S| - E_S(v_m) = B - black_offset   in law (black_offset = 1: the urn's
// initial composition counts the marked vertex itself on the black side).
struct UrnSchedule {
    std::int64_t b0 = 1;
    std::int64_t w0 = 0;
    std::vector<ScheduleStep> steps;
    std::int64_t black_offset = 1;
};

inline UrnSchedule tree_to_urn(const CombTreeShape& shape_in) {
    CombTreeShape shape = validate_comb(shape_in);
    std::size_t n = shape.segments.size();
    UrnSchedule sched;
    sched.b0 = shape.segments[n - 1].second + 1;
    sched.w0 = shape.segments[n - 1].first;
    for (std::size_t k = n - 1; k-- > 0;) {
        auto [i, j] = shape.segments[k];
        if (j >= 1) {
            for (std::int64_t d = 0; d < j - 1; ++d) sched.steps.push_back({true, 0});
            sched.steps.push_back({true, i});
        } else {
            sched.steps.push_back({false, i});
        }
    }
    return sched;
}

// Exact law of |S| - E_S(v_m) computed through the urn schedule.
inline std::map<std::int64_t, Rational> tree_deficiency_law_via_urn(const CombTreeShape& shape) {
    UrnSchedule sched = tree_to_urn(shape);
    auto dist = exact_distribution_for_schedule(sched.b0, sched.w0, sched.steps);
    std::map<std::int64_t, Rational> out;
    for (const auto& [b, w] : dist.weights)
        out[b - sched.black_offset] = Rational(w, dist.total);
    return out;
}

// Exact law of |S| - E_S(v_m) computed on the tree side (downset DP oracle
// lives in trees.hpp; this is just the complement).
inline std::map<std::int64_t, Rational> tree_deficiency_law(const CombTreeShape& shape) {
    auto law = linear_extension_entry_law(shape);
    std::int64_t total = shape.size();
    std::map<std::int64_t, Rational> out;
    for (const auto& [pos, pr] : law) out[total - pos] = pr;
    return out;
}

// --- corner fluctuation experiment -----------------------------------------

struct CornerExperiment {
    TableauShape shape;
    std::int64_t p = 0, ell = 0, n = 0;
    std::vector<std::int64_t> corner_entries;  // one per run
    std::vector<double> rescaled;              // (2/(p l)) (N - Y) / n^{1+delta}

    double empirical_moment(unsigned r) const {
        double acc = 0;
        for (double x : rescaled) acc += std::pow(x, static_cast<double>(r));
        return acc / static_cast<double>(rescaled.size());
    }
    double empirical_stderr(unsigned r) const {
        double m1 = empirical_moment(r), m2 = empirical_moment(2 * r);
        double var = std::max(0.0, m2 - m1 * m1);
        return std::sqrt(var / static_cast<double>(rescaled.size()));
    }
};

// Hook-walk sampling of the rescaled south-east corner statistic for the
// periodic-pattern shape (ells; n), optionally shifted by a block b0^{w0}.
inline CornerExperiment corner_statistic_experiment(const std::vector<std::int64_t>& ells,
                                                    std::int64_t n, std::int64_t shift_b0,
                                                    std::int64_t shift_w0, std::uint64_t runs,
                                                    std::uint64_t seed) {
    TableauShape shape = periodic_pattern_shape(ells, n);
    if (shift_b0 > 0) shape = shifted_by_block(shape, shift_b0, shift_w0);
    std::int64_t p = static_cast<std::int64_t>(ells.size());
    std::int64_t ell = 0;
    for (auto l : ells) ell += l;
    std::int64_t N = shape.num_cells();
    double delta = static_cast<double>(p) / static_cast<double>(p + ell);
    double scale = 2.0 / (static_cast<double>(p) * static_cast<double>(ell) *
                          std::pow(static_cast<double>(n), 1.0 + delta));

    struct Block {
        std::vector<std::pair<std::uint64_t, std::int64_t>> entries;
    };
    auto acc = run_blocks<Block>(
        runs,
        [&](std::uint64_t run, Block& b) {
            Rng rng(derive_seed(seed, run));
            b.entries.emplace_back(run, corner_entry_sample(shape, rng));
        },
        [](Block& total, Block& part) {
            total.entries.insert(total.entries.end(), part.entries.begin(), part.entries.end());
        },
        256);

    CornerExperiment ex;
    ex.shape = shape;
    ex.p = p;
    ex.ell = ell;
    ex.n = n;
    ex.corner_entries.resize(runs);
    ex.rescaled.resize(runs);
    for (auto& [run, y] : acc.entries) {
        ex.corner_entries[run] = y;
        ex.rescaled[run] = scale * static_cast<double>(N - y);
    }
    return ex;
}

inline CornerExperiment corner_statistic_experiment_triangular(std::int64_t l, std::int64_t p,
                                                               std::int64_t n, std::uint64_t runs,
                                                               std::uint64_t seed) {
    std::vector<std::int64_t> ells(static_cast<std::size_t>(p), 0);
    ells.back() = l;
    return corner_statistic_experiment(ells, n, 0, 0, runs, seed);
}

}  // namespace perioda
