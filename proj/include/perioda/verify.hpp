#pragma once

// The full verification suite behind `perioda verify all` and the acceptance
// test binary: one check per numbered criterion, each with its tolerance and
// wall-clock budget pinned in code.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "perioda/density.hpp"
#include "perioda/enumeration.hpp"
#include "perioda/guessing.hpp"
#include "perioda/limit_laws.hpp"
#include "perioda/links.hpp"
#include "perioda/report.hpp"
#include "perioda/tableaux.hpp"
#include "perioda/trees.hpp"
#include "perioda/urn.hpp"

namespace perioda::verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;
};

namespace detail {

inline const std::vector<TableauShape>& shape_corpus() {
    static const std::vector<TableauShape> corpus = {
        TableauShape{{1, 1}},       TableauShape{{2, 1}},       TableauShape{{3}},
        TableauShape{{1, 1, 1}},    TableauShape{{2, 2}},       TableauShape{{3, 2}},
        TableauShape{{4, 2}},       TableauShape{{2, 2, 2}},    TableauShape{{3, 2, 1}},
        TableauShape{{3, 3}},       TableauShape{{5, 3}},       TableauShape{{3, 3, 2}},
        TableauShape{{4, 3, 2}},    TableauShape{{2, 2, 2, 2}}, TableauShape{{4, 4, 2}},
    };
    return corpus;
}

inline const std::vector<CombTreeShape>& comb_corpus() {
    static const std::vector<CombTreeShape> corpus = {
        CombTreeShape{{{1, 2}, {1, 1}}},
        CombTreeShape{{{1, 0}, {1, 1}, {1, 0}}},
        CombTreeShape{{{2, 1}, {1, 2}}},
        CombTreeShape{{{1, 3}, {2, 2}}},
        CombTreeShape{{{2, 2}, {2, 1}, {1, 1}}},
        CombTreeShape{{{1, 2}, {1, 2}, {1, 1}}},
        CombTreeShape{{{1, 1}, {1, 1}, {1, 1}, {1, 1}}},
        CombTreeShape{{{3, 2}, {2, 3}}},
        CombTreeShape{{{1, 5}}},
        CombTreeShape{{{4, 0}}},
        CombTreeShape{{{2, 0}, {2, 2}, {1, 1}}},
        CombTreeShape{{{1, 1}, {2, 0}, {1, 2}}},
    };
    return corpus;
}

template <typename K>
bool laws_equal(const std::map<K, Rational>& a, const std::map<K, Rational>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || it->second != v) return false;
    }
    return true;
}

inline CheckResult timed(int id, std::string name, double budget,
                         const std::function<bool(std::string&)>& body) {
    CheckResult res;
    res.id = id;
    res.name = std::move(name);
    res.budget_seconds = budget;
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.seconds >= budget) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    res.passed = ok;
    res.detail = detail;
    return res;
}

}  // namespace detail

// 1. history totals of the period-2 Young-Polya urn
inline CheckResult check_history_totals() {
    return detail::timed(1, "history totals 1,2,6,30,...,1710720", 1.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        const std::int64_t expect[9] = {1, 2, 6, 30, 180, 1440, 12960, 142560, 1710720};
        auto seq = history_sequence(spec, 8);
        for (int n = 0; n <= 8; ++n)
            if (seq[static_cast<std::size_t>(n)] != expect[n]) {
                d = "mismatch at n=" + std::to_string(n);
                return false;
            }
        d = "n=0..8 exact";
        return true;
    });
}

// 2. state polynomials h_1, h_2, h_3
inline CheckResult check_state_polynomials() {
    return detail::timed(2, "state polynomials h1,h2,h3", 1.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        auto same = [&](std::int64_t n, std::map<std::int64_t, std::int64_t> want) {
            auto dist = exact_distribution(spec, n);
            if (dist.weights.size() != want.size()) return false;
            for (const auto& [b, w] : want)
                if (dist.weights.count(b) == 0 || dist.weights.at(b) != w) return false;
            return true;
        };
        bool ok = same(1, {{2, 1}, {1, 1}}) && same(2, {{3, 2}, {2, 2}, {1, 2}}) &&
                  same(3, {{4, 6}, {3, 8}, {2, 8}, {1, 8}});
        d = ok ? "coefficients exact" : "coefficient mismatch";
        return ok;
    });
}

// 3. recurrence guessing on 30 terms
inline CheckResult check_recurrence_guess() {
    return detail::timed(3, "P-recurrence of the history counts", 5.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        auto prefix = history_sequence(spec, 29);  // 30 terms
        auto rec = guess_p_recurrence(prefix, 2, 2);
        if (!rec) {
            d = "no recurrence found";
            return false;
        }
        // canonical integer form of h(n+2) = 3/2 h(n+1) + (9n^2+21n+12)/4 h(n)
        bool ok = rec->order == 2 && rec->coeffs[2] == std::vector<Rational>{4, 0, 0} &&
                  rec->coeffs[1] == std::vector<Rational>{-6, 0, 0} &&
                  rec->coeffs[0] == std::vector<Rational>{-12, -21, -9};
        d = ok ? "4h(n+2)-6h(n+1)-(9n^2+21n+12)h(n)=0" : "unexpected recurrence";
        return ok;
    });
}

// 4. mean constant at n = 10^4
inline CheckResult check_mean_constant() {
    return detail::timed(4, "mean constant 0.9552", 5.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        Rational m1 = exact_factorial_moment(spec, 1, 10000);
        double v = to_real(m1).convert_to<double>() / std::pow(1e4, 2.0 / 3.0);
        double err = std::abs(v / 0.9552 - 1.0);
        d = "m1/n^(2/3) = " + format_float(v) + ", rel err " + format_float(err);
        return err < 0.01;
    });
}

// 5. variance constant at n = 10^4
inline CheckResult check_variance_constant() {
    return detail::timed(5, "variance constant 0.42068", 5.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        Rational m1 = exact_factorial_moment(spec, 1, 10000);
        Rational m2 = exact_factorial_moment(spec, 2, 10000);
        Rational var = m2 + m1 - m1 * m1;  // E B^2 - (E B)^2
        double v = to_real(var).convert_to<double>() / std::pow(1e4, 4.0 / 3.0);
        double err = std::abs(v / 0.42068 - 1.0);
        d = "var/n^(4/3) = " + format_float(v) + ", rel err " + format_float(err);
        return err < 0.02;
    });
}

// 6. limit-law moments and exact-moment convergence
inline CheckResult check_limit_law_moments() {
    return detail::timed(6, "limit moments and convergence", 30.0, [](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        GenGammaProdSpec law = GenGammaProdSpec::from_urn(spec);
        Real m3 = gengammaprod_moment(3, law);
        if (abs(m3 - Real(1) / 3) > 1e-12) {
            d = "m3 != 1/3";
            return false;
        }
        auto rep = exact_convergence_report(spec, {1000, 10000}, 3);
        std::ostringstream ss;
        for (unsigned r = 1; r <= 3; ++r) {
            double e3 = 0, e4 = 0;
            for (const auto& row : rep.rows) {
                if (row.r != r) continue;
                if (row.n == 1000) e3 = row.relative_error;
                if (row.n == 10000) e4 = row.relative_error;
            }
            ss << "r=" << r << ": " << format_float(e3) << " -> " << format_float(e4) << "  ";
            if (!(e4 < e3)) {
                d = "relative error not decreasing at r=" + std::to_string(r);
                return false;
            }
        }
        d = "m3 = 1/3; " + ss.str();
        return true;
    });
}

// 7. Monte Carlo concordance at n = 10^4
inline CheckResult check_mc_concordance(std::uint64_t seed) {
    return detail::timed(7, "Monte Carlo urn moments", 120.0, [seed](std::string& d) {
        UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
        auto rep = urn_mc_moment_report(spec, 10000, 3, 100000, seed);
        std::ostringstream ss;
        for (const auto& row : rep.rows) {
            double allowed = 3.0 * row.stderr_ + 0.02 * row.limit;
            double dev = std::abs(row.value - row.limit);
            ss << "r=" << row.r << " dev " << format_float(dev) << " vs " << format_float(allowed)
               << "  ";
            if (dev > allowed) {
                d = ss.str();
                return false;
            }
        }
        d = ss.str();
        return true;
    });
}

// 8. exact law transfers (tableau -> tree, tree -> urn)
inline CheckResult check_law_transfers() {
    return detail::timed(8, "exact law transfers", 60.0, [](std::string& d) {
        int shapes = 0, combs = 0;
        for (const auto& shape : detail::shape_corpus()) {
            if (shape.num_cells() > 10) continue;
            auto direct = corner_distribution_exact(shape);
            auto via_tree = corner_law_via_tree(shape);
            if (!detail::laws_equal(direct, via_tree)) {
                d = "corner law mismatch on a corpus shape";
                return false;
            }
            ++shapes;
        }
        for (const auto& comb : detail::comb_corpus()) {
            if (comb.size() > 12) continue;
            auto tree_side = tree_deficiency_law(comb);
            auto urn_side = tree_deficiency_law_via_urn(comb);
            if (!detail::laws_equal(tree_side, urn_side)) {
                d = "urn transfer mismatch on a corpus comb";
                return false;
            }
            ++combs;
        }
        d = std::to_string(shapes) + " shapes, " + std::to_string(combs) + " combs, all exact";
        return true;
    });
}

// 9. density-method round trips
inline CheckResult check_density_roundtrips() {
    return detail::timed(9, "density-method identities", 120.0, [](std::string& d) {
        for (const auto& shape : detail::shape_corpus()) {
            auto cd = corner_density_polynomial(shape);
            BigInt ext = count_syt(shape);
            if (Rational(factorial(static_cast<unsigned>(shape.num_cells()))) * cd.normalization !=
                Rational(ext)) {
                d = "ext normalization identity failed";
                return false;
            }
            if (shape.num_cells() <= 10) {
                auto law = entry_law_from_density(cd);
                if (!detail::laws_equal(law, corner_distribution_exact(shape))) {
                    d = "density law round trip failed";
                    return false;
                }
            }
            auto chk = filament_constant_check(shape);
            if (!chk.proportional) {
                d = "filament proportionality failed";
                return false;
            }
            for (std::int64_t L = 0; L <= 4; ++L) {
                auto ext_density = filament_extension(cd, L);
                Rational lhs = ext_density.normalization * Rational(factorial(static_cast<unsigned>(L)));
                Rational rhs = Rational(factorial(static_cast<unsigned>(L))) /
                               filament_constant_G(shape, L) * Rational(ext) /
                               Rational(factorial(static_cast<unsigned>(shape.num_cells())));
                if (lhs != rhs) {
                    d = "filament integral identity failed";
                    return false;
                }
            }
        }
        d = std::to_string(detail::shape_corpus().size()) + " shapes, all identities exact";
        return true;
    });
}

// 10. order-statistics lemma vs exhaustive enumeration
inline CheckResult check_order_statistics() {
    return detail::timed(10, "order-statistics moments", 10.0, [](std::string& d) {
        int cases = 0;
        for (std::int64_t N = 2; N <= 8; ++N) {
            for (std::int64_t s = 1; s < N; ++s) {
                for (std::int64_t a = 1; a <= s; ++a) {
                    // uniform s-subset of ranks {1..N-1}; I = rank of the a-th
                    // chosen element minus a
                    std::int64_t total = N - 1;
                    BigInt count = 0, sum_i = 0, sum_i2 = 0;
                    std::vector<std::int64_t> pick(static_cast<std::size_t>(s));
                    std::function<void(std::int64_t, std::int64_t)> rec =
                        [&](std::int64_t start, std::int64_t chosen) {
                            if (chosen == s) {
                                std::int64_t ra = pick[static_cast<std::size_t>(a - 1)];
                                std::int64_t i = ra - a;
                                ++count;
                                sum_i += i;
                                sum_i2 += i * i;
                                return;
                            }
                            for (std::int64_t v = start; v <= total; ++v) {
                                pick[static_cast<std::size_t>(chosen)] = v;
                                rec(v + 1, chosen + 1);
                            }
                        };
                    rec(1, 0);
                    auto [ei, ei2] = order_statistic_moments(N, s, a);
                    if (ei != Rational(sum_i, count) || ei2 != Rational(sum_i2, count)) {
                        d = "mismatch at N=" + std::to_string(N) + " s=" + std::to_string(s) +
                            " a=" + std::to_string(a);
                        return false;
                    }
                    ++cases;
                }
            }
        }
        d = std::to_string(cases) + " parameter triples exact";
        return true;
    });
}

// 11. arcsine law of the argmax position
inline CheckResult check_arcsine_law() {
    return detail::timed(11, "argmax arcsine law", 30.0, [](std::string& d) {
        const std::vector<std::array<std::int64_t, 3>> corpus = {
            {1, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 1, 3}, {2, 2, 3}};
        for (auto [l, p, n] : corpus) {
            auto law = argmax_position_distribution(l, p, n);
            Rational sum = 0;
            for (const auto& [k, pr] : law) sum += pr;
            if (sum != 1) {
                d = "law does not sum to 1";
                return false;
            }
        }
        std::int64_t n = 2000;
        auto law = argmax_position_distribution(1, 1, n);
        double l1 = 0;
        for (const auto& [k, pr] : law) {
            double x = (static_cast<double>(k) - 0.5) / static_cast<double>(n);
            if (x < 0.05 || x > 0.95) continue;
            double density = static_cast<double>(n) * to_real(pr).convert_to<double>();
            double target = arcsine_density(x, 0.5).convert_to<double>();
            l1 += std::abs(density - target) / static_cast<double>(n);
        }
        d = "L1 deviation on [0.05,0.95] = " + format_float(l1);
        return l1 < 0.02;
    });
}

// 12. gamma factorization via the cyclic shift
inline CheckResult check_gamma_factorization() {
    return detail::timed(12, "gamma factorization", 5.0, [](std::string& d) {
        Real e1 = gamma_factorization_check({0, 1}, 1, 1, 50);
        Real e2 = gamma_factorization_check({0, 1, 2}, 1, 1, 50);
        d = "max rel errors " + format_float(e1) + ", " + format_float(e2);
        return e1 < 1e-9 && e2 < 1e-9;
    });
}

// 13. tail dichotomy and Mittag-Leffler similarity
inline CheckResult check_tail_dichotomy() {
    return detail::timed(13, "tail dichotomy and similarity", 10.0, [](std::string& d) {
        auto sub = subgaussian_profile(GenGammaProdSpec::young_polya(2, 1, 1, 1), 500);
        auto super = subgaussian_profile(GenGammaProdSpec::young_polya(1, 2, 1, 1), 500);
        // p >= l: the profile decays beyond its early maximum
        for (std::size_t r = 100; r < 500; ++r)
            if (sub[r] > sub[r - 1] + 1e-12) {
                d = "subgaussian profile not eventually decreasing for p >= l";
                return false;
            }
        if (!(sub[499] < sub[49])) {
            d = "subgaussian profile did not decay";
            return false;
        }
        // p < l: increasing without bound at desk scale
        for (std::size_t r = 100; r < 500; ++r)
            if (super[r] < super[r - 1]) {
                d = "profile not increasing for p < l";
                return false;
            }
        if (!(super[499] > super[49] * Real(1.25))) {
            d = "profile growth too small for p < l";
            return false;
        }
        GenGammaProdSpec yp = GenGammaProdSpec::young_polya(2, 1, 1, 1);
        MittagLefflerParams ml{Rational(yp.delta()).convert_to<double>(), 1.0};
        auto prof = tail_similarity_profile(yp, ml, 200);
        bool ok = abs(prof[199]) < abs(prof[49]);
        d = ok ? "profiles behave as required; |s_200| = " + format_float(abs(prof[199]))
               : "similarity profile magnitude not decreasing";
        return ok;
    });
}

// 14. hook-walk corner statistic vs the limit law
inline CheckResult check_corner_experiment(std::uint64_t seed) {
    return detail::timed(14, "corner fluctuation experiment", 300.0, [seed](std::string& d) {
        GenGammaProdSpec limit = GenGammaProdSpec::young_polya(2, 1, 2, 1);
        double target = gengammaprod_moment(1, limit).convert_to<double>();
        auto run = [&](std::int64_t n) {
            auto ex = corner_statistic_experiment_triangular(1, 2, n, 10000, seed);
            return std::abs(ex.empirical_moment(1) / target - 1.0);
        };
        double err120 = run(120);
        double err30 = run(30);
        d = "rel errs n=30: " + format_float(err30) + ", n=120: " + format_float(err120);
        return err120 < 0.05 && err120 < err30;
    });
}

inline std::vector<CheckResult> run_all(std::uint64_t seed) {
    std::vector<CheckResult> results;
    results.push_back(check_history_totals());
    results.push_back(check_state_polynomials());
    results.push_back(check_recurrence_guess());
    results.push_back(check_mean_constant());
    results.push_back(check_variance_constant());
    results.push_back(check_limit_law_moments());
    results.push_back(check_mc_concordance(seed));
    results.push_back(check_law_transfers());
    results.push_back(check_density_roundtrips());
    results.push_back(check_order_statistics());
    results.push_back(check_arcsine_law());
    results.push_back(check_gamma_factorization());
    results.push_back(check_tail_dichotomy());
    results.push_back(check_corner_experiment(seed));
    return results;
}

inline int report(const std::vector<CheckResult>& results, std::ostream& out) {
    int failures = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
            << format_float(r.seconds) << " s of " << format_float(r.budget_seconds) << ")";
        if (!r.detail.empty()) out << " - " << r.detail;
        out << "\n";
        if (!r.passed) ++failures;
    }
    return failures;
}

}  // namespace perioda::verify
