#pragma once

// Periodic Polya urns: model definition, trajectory simulation, and the exact
// distribution of black-ball counts via weighted big-integer DP over histories.
//
// A spec of period p with column increments (l_1..l_p) uses, at draw t, the
// balanced replacement matrix [[1, l_k],[0, 1+l_k]] with k = ((t-1) mod p)+1:
// a drawn black ball comes back with one extra black and l_k whites, a drawn
// white comes back with 1+l_k whites.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "perioda/numbers.hpp"
#include "perioda/rng.hpp"

namespace perioda {

struct UrnSpec {
    std::int64_t p = 0;                // period (= ells.size())
    std::vector<std::int64_t> ells;    // l_1..l_p, extra whites per phase
    std::int64_t b0 = 0;               // initial black balls, >= 1
    std::int64_t w0 = 0;               // initial white balls, >= 0

    std::int64_t ell() const {
        std::int64_t s = 0;
        for (auto l : ells) s += l;
        return s;
    }
    std::int64_t s0() const { return b0 + w0; }
    Rational delta() const { return Rational(p, p + ell()); }

    // Young-Polya form: identity phases followed by one l-phase, i.e. all
    // increments zero except possibly the last.
    bool is_young_polya() const {
        for (std::size_t i = 0; i + 1 < ells.size(); ++i)
            if (ells[i] != 0) return false;
        return true;
    }

    static UrnSpec young_polya(std::int64_t p, std::int64_t l, std::int64_t b0, std::int64_t w0) {
        UrnSpec s;
        s.p = p;
        s.ells.assign(static_cast<std::size_t>(p > 0 ? p : 0), 0);
        if (p > 0) s.ells.back() = l;
        s.b0 = b0;
        s.w0 = w0;
        return s;
    }
};

inline UrnSpec validate_spec(UrnSpec spec) {
    if (spec.ells.empty()) throw std::invalid_argument("urn spec: period must be at least 1");
    if (spec.p == 0) spec.p = static_cast<std::int64_t>(spec.ells.size());
    if (spec.p != static_cast<std::int64_t>(spec.ells.size()))
        throw std::invalid_argument("urn spec: p does not match ells length");
    for (auto l : spec.ells)
        if (l < 0) throw std::invalid_argument("urn spec: negative column increment");
    if (spec.b0 < 1) throw std::invalid_argument("urn spec: b0 must be at least 1");
    if (spec.w0 < 0) throw std::invalid_argument("urn spec: w0 must be non-negative");
    return spec;
}

// 1-indexed phase for draw t >= 1: matrix M_k serves draws t with t = np+k.
inline std::int64_t matrix_index_for_draw(const UrnSpec& spec, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("draw index must be at least 1");
    return (t - 1) % spec.p + 1;
}

inline std::int64_t extra_whites_for_draw(const UrnSpec& spec, std::int64_t t) {
    return spec.ells[static_cast<std::size_t>(matrix_index_for_draw(spec, t) - 1)];
}

// Deterministic ball count after n draws: s0 + n + sum of phase increments.
inline std::int64_t total_balls_after(const UrnSpec& spec, std::int64_t n) {
    std::int64_t cycles = n / spec.p, rest = n % spec.p;
    std::int64_t total = spec.s0() + n + cycles * spec.ell();
    for (std::int64_t j = 0; j < rest; ++j) total += spec.ells[static_cast<std::size_t>(j)];
    return total;
}

struct UrnState {
    std::int64_t black = 0;
    std::int64_t white = 0;
    std::int64_t step = 0;
};

inline std::vector<UrnState> simulate_trajectory(const UrnSpec& spec, std::int64_t steps,
                                                 std::uint64_t seed) {
    Rng rng(seed);
    std::vector<UrnState> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    UrnState st{spec.b0, spec.w0, 0};
    out.push_back(st);
    for (std::int64_t t = 1; t <= steps; ++t) {
        std::int64_t e = extra_whites_for_draw(spec, t);
        double pr = static_cast<double>(st.black) / static_cast<double>(st.black + st.white);
        if (rng.bernoulli(pr)) {
            st.black += 1;
            st.white += e;
        } else {
            st.white += 1 + e;
        }
        st.step = t;
        out.push_back(st);
    }
    return out;
}

// Final black count only; the workhorse of the Monte Carlo paths.
inline std::int64_t simulate_final_black(const UrnSpec& spec, std::int64_t steps, Rng& rng) {
    std::int64_t black = spec.b0, white = spec.w0;
    std::int64_t p = spec.p;
    const std::int64_t* ells = spec.ells.data();
    std::int64_t phase = 0;
    for (std::int64_t t = 0; t < steps; ++t) {
        std::int64_t e = ells[phase];
        if (++phase == p) phase = 0;
        double pr = static_cast<double>(black) / static_cast<double>(black + white);
        if (rng.u01() < pr) {
            black += 1;
            white += e;
        } else {
            white += 1 + e;
        }
    }
    return black;
}

// One draw-or-add step of a generalized schedule. A periodic urn is the
// all-draw schedule; the tree reduction also needs pure white additions.
struct ScheduleStep {
    bool draw = true;
    std::int64_t whites = 0;  // extra whites on a draw, added whites otherwise
};

struct ExactStateDistribution {
    std::int64_t step = 0;
    std::map<std::int64_t, BigInt> weights;  // black count -> history weight
    BigInt total = 0;

    Rational probability(std::int64_t black) const {
        auto it = weights.find(black);
        if (it == weights.end()) return Rational(0);
        return Rational(it->second, total);
    }
};

// Weighted history DP: a state (b, w) with weight h branches into b copies of
// the black transition and w copies of the white transition.
inline ExactStateDistribution exact_distribution_for_schedule(
    std::int64_t b0, std::int64_t w0, const std::vector<ScheduleStep>& schedule) {
    std::map<std::int64_t, BigInt> cur;
    cur[b0] = 1;
    std::int64_t balls = b0 + w0;
    std::int64_t steps_done = 0;
    for (const auto& s : schedule) {
        if (!s.draw) {
            balls += s.whites;
            continue;
        }
        std::map<std::int64_t, BigInt> next;
        for (const auto& [b, h] : cur) {
            std::int64_t w = balls - b;
            if (b > 0) next[b + 1] += h * b;
            if (w > 0) next[b] += h * w;
        }
        cur = std::move(next);
        balls += 1 + s.whites;
        ++steps_done;
    }
    ExactStateDistribution dist;
    dist.step = steps_done;
    dist.weights = std::move(cur);
    for (const auto& [b, h] : dist.weights) dist.total += h;
    return dist;
}

inline std::vector<ScheduleStep> periodic_schedule(const UrnSpec& spec, std::int64_t n) {
    std::vector<ScheduleStep> sched(static_cast<std::size_t>(n));
    for (std::int64_t t = 1; t <= n; ++t)
        sched[static_cast<std::size_t>(t - 1)] = {true, extra_whites_for_draw(spec, t)};
    return sched;
}

inline ExactStateDistribution exact_distribution(const UrnSpec& spec, std::int64_t n,
                                                 std::int64_t limit = 2000) {
    if (n < 0) throw std::invalid_argument("exact_distribution: negative step count");
    if (n > limit)
        throw std::invalid_argument("exact_distribution: n exceeds the step limit (" +
                                    std::to_string(limit) + ")");
    auto dist = exact_distribution_for_schedule(spec.b0, spec.w0, periodic_schedule(spec, n));
    dist.step = n;
    return dist;
}

}  // namespace perioda
