#pragma once

// Machine-readable I/O: the JSON schemas for specs, shapes, laws, fillings,
// polynomials and recurrences, the CSV formats of the tabular outputs, and
// the Monte Carlo moment reports. Floats print with 15 significant digits,
// '.' separator; exact rationals print as "num/den".

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "perioda/density.hpp"
#include "perioda/enumeration.hpp"
#include "perioda/guessing.hpp"
#include "perioda/limit_laws.hpp"
#include "perioda/links.hpp"
#include "perioda/numbers.hpp"
#include "perioda/parallel.hpp"
#include "perioda/tableaux.hpp"
#include "perioda/urn.hpp"

namespace perioda {

using nlohmann::json;

// --- JSON -------------------------------------------------------------------

inline json urn_spec_to_json(const UrnSpec& s) {
    return json{{"p", s.p}, {"ells", s.ells}, {"b0", s.b0}, {"w0", s.w0}};
}

inline UrnSpec urn_spec_from_json(const json& j) {
    UrnSpec s;
    s.ells = j.at("ells").get<std::vector<std::int64_t>>();
    s.p = j.contains("p") ? j.at("p").get<std::int64_t>()
                          : static_cast<std::int64_t>(s.ells.size());
    s.b0 = j.at("b0").get<std::int64_t>();
    s.w0 = j.at("w0").get<std::int64_t>();
    return validate_spec(s);
}

// law JSON mirrors the urn spec plus a discriminator
inline json law_to_json(const GenGammaProdSpec& s) {
    return json{{"law", "gengammaprod"}, {"ells", s.ells}, {"b0", s.b0}, {"w0", s.w0}};
}

inline GenGammaProdSpec law_from_json(const json& j) {
    if (j.contains("law") && j.at("law").get<std::string>() != "gengammaprod")
        throw std::invalid_argument("law json: unknown discriminator");
    GenGammaProdSpec s;
    s.ells = j.at("ells").get<std::vector<std::int64_t>>();
    s.b0 = j.at("b0").get<std::int64_t>();
    s.w0 = j.at("w0").get<std::int64_t>();
    return validate_law(s);
}

// {"columns":[...]} or {"pattern":{"ells":[...],"n":...,"shift":{"b0":...,"w0":...}}}
inline TableauShape shape_from_json(const json& j) {
    if (j.contains("columns"))
        return validate_shape({j.at("columns").get<std::vector<std::int64_t>>()});
    const json& p = j.at("pattern");
    TableauShape s = periodic_pattern_shape(p.at("ells").get<std::vector<std::int64_t>>(),
                                            p.at("n").get<std::int64_t>());
    if (p.contains("shift"))
        s = shifted_by_block(s, p.at("shift").at("b0").get<std::int64_t>(),
                             p.at("shift").at("w0").get<std::int64_t>());
    return s;
}

inline json shape_to_json(const TableauShape& s) { return json{{"columns", s.columns}}; }

inline json comb_to_json(const CombTreeShape& c) {
    json segs = json::array();
    for (auto& [i, j] : c.segments) segs.push_back(json::array({i, j}));
    return json{{"segments", segs}};
}

inline CombTreeShape comb_from_json(const json& j) {
    CombTreeShape c;
    for (const auto& seg : j.at("segments"))
        c.segments.emplace_back(seg.at(0).get<std::int64_t>(), seg.at(1).get<std::int64_t>());
    return validate_comb(c);
}

inline json filling_to_json(const StandardFilling& f) {
    json rows = json::array();
    for (const auto& row : f.rows()) rows.push_back(row);
    return json{{"rows", rows}};
}

inline json precurrence_to_json(const PRecurrence& r) {
    json coeffs = json::array();
    for (const auto& poly : r.coeffs) {
        json p = json::array();
        for (const auto& c : poly) p.push_back(rational_to_string(c));
        coeffs.push_back(p);
    }
    return json{{"order", r.order}, {"coeffs", coeffs}};
}

inline PRecurrence precurrence_from_json(const json& j) {
    PRecurrence r;
    r.order = j.at("order").get<unsigned>();
    for (const auto& poly : j.at("coeffs")) {
        std::vector<Rational> p;
        for (const auto& c : poly) p.push_back(rational_from_string(c.get<std::string>()));
        r.coeffs.push_back(std::move(p));
    }
    if (r.coeffs.size() != r.order + 1)
        throw std::invalid_argument("recurrence json: order/coeffs mismatch");
    return r;
}

inline json polynomial_to_json(const SparsePolynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back(json{{"exp", e}, {"coef", rational_to_string(c)}});
    return json{{"arity", p.arity()}, {"terms", terms}};
}

inline SparsePolynomial polynomial_from_json(const json& j) {
    SparsePolynomial p(j.at("arity").get<std::size_t>());
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exp").get<std::vector<int>>(),
                   rational_from_string(t.at("coef").get<std::string>()));
    return p;
}

// --- CSV ----------------------------------------------------------------------

inline std::string exact_distribution_csv(const ExactStateDistribution& d) {
    std::ostringstream out;
    out << "black,weight,probability\n";
    for (const auto& [b, w] : d.weights) {
        Rational pr(w, d.total);
        out << b << "," << w.str() << "," << format_float(to_real(pr)) << "\n";
    }
    return out.str();
}

inline std::string law_csv(const std::map<std::int64_t, Rational>& law) {
    std::ostringstream out;
    out << "k,prob_num,prob_den\n";
    for (const auto& [k, pr] : law)
        out << k << "," << numerator(pr).str() << "," << denominator(pr).str() << "\n";
    return out.str();
}

inline std::string sequence_lines(const std::vector<BigInt>& seq) {
    std::ostringstream out;
    for (const auto& v : seq) out << v.str() << "\n";
    return out.str();
}

inline std::vector<BigInt> sequence_from_lines(std::istream& in) {
    std::vector<BigInt> seq;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        seq.emplace_back(line);
    }
    return seq;
}

// --- Monte Carlo moment reports -------------------------------------------------

struct ConvergenceRow {
    std::int64_t n = 0;
    unsigned r = 0;
    double value = 0;       // exact or empirical
    double limit = 0;       // analytic limit value
    double relative_error = 0;
    double stderr_ = 0;     // 0 for exact rows
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // sorted by (r, n)

    void sort() {
        std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.r != b.r ? a.r < b.r : a.n < b.n;
        });
    }
    std::string csv() const {
        std::ostringstream out;
        out << "n,r,value,limit,relative_error,stderr\n";
        for (const auto& row : rows)
            out << row.n << "," << row.r << "," << format_float(row.value) << ","
                << format_float(row.limit) << "," << format_float(row.relative_error) << ","
                << format_float(row.stderr_) << "\n";
        return out.str();
    }
};

namespace detail {

struct MomentSums {
    std::vector<double> pw;  // sums of x^r, r = 1..2*r_max
};

template <typename Sampler>
ConvergenceReport mc_report(std::int64_t n_label, unsigned r_max, std::uint64_t runs,
                            std::uint64_t seed, Sampler sample,
                            const std::vector<double>& limits) {
    unsigned top = 2 * r_max;
    auto sums = run_blocks<MomentSums>(
        runs,
        [&](std::uint64_t run, MomentSums& acc) {
            if (acc.pw.empty()) acc.pw.assign(top, 0.0);
            Rng rng(derive_seed(seed, run));
            double x = sample(rng);
            double p = 1;
            for (unsigned r = 0; r < top; ++r) {
                p *= x;
                acc.pw[r] += p;
            }
        },
        [&](MomentSums& total, MomentSums& part) {
            if (total.pw.empty()) total.pw.assign(top, 0.0);
            if (part.pw.empty()) return;
            for (unsigned r = 0; r < top; ++r) total.pw[r] += part.pw[r];
        });
    ConvergenceReport rep;
    for (unsigned r = 1; r <= r_max; ++r) {
        double m = sums.pw[r - 1] / static_cast<double>(runs);
        double m2 = sums.pw[2 * r - 1] / static_cast<double>(runs);
        double se = std::sqrt(std::max(0.0, m2 - m * m) / static_cast<double>(runs));
        double lim = limits[r - 1];
        rep.rows.push_back({n_label, r, m, lim, std::abs(m / lim - 1.0), se});
    }
    rep.sort();
    return rep;
}

}  // namespace detail

// Empirical moments of B_n* = (p^delta/(p+l)) B_n / n^delta against the
// GenGammaProd limit moments.
inline ConvergenceReport urn_mc_moment_report(const UrnSpec& spec, std::int64_t n, unsigned r_max,
                                              std::uint64_t runs, std::uint64_t seed) {
    if (r_max > 6) throw std::invalid_argument("mc_moment_report: r_max capped at 6");
    GenGammaProdSpec law = GenGammaProdSpec::from_urn(spec);
    double delta = Rational(spec.delta()).convert_to<double>();
    double scale = std::pow(static_cast<double>(spec.p), delta) /
                   static_cast<double>(spec.p + spec.ell()) /
                   std::pow(static_cast<double>(n), delta);
    std::vector<double> limits;
    for (unsigned r = 1; r <= r_max; ++r)
        limits.push_back(gengammaprod_moment(r, law).convert_to<double>());
    return detail::mc_report(
        n, r_max, runs, seed,
        [&](Rng& rng) { return scale * static_cast<double>(simulate_final_black(spec, n, rng)); },
        limits);
}

// The product sampler against its own analytic moments.
inline ConvergenceReport law_mc_moment_report(const GenGammaProdSpec& law, unsigned r_max,
                                              std::uint64_t runs, std::uint64_t seed) {
    if (r_max > 6) throw std::invalid_argument("mc_moment_report: r_max capped at 6");
    std::vector<double> limits;
    for (unsigned r = 1; r <= r_max; ++r)
        limits.push_back(gengammaprod_moment(r, law).convert_to<double>());
    return detail::mc_report(
        0, r_max, runs, seed, [&](Rng& rng) { return gengammaprod_sample(law, rng); }, limits);
}

// Exact rescaled ordinary urn moments against the limit, one row per (r, n).
inline ConvergenceReport exact_convergence_report(const UrnSpec& spec,
                                                  const std::vector<std::int64_t>& ns,
                                                  unsigned r_max) {
    GenGammaProdSpec law = GenGammaProdSpec::from_urn(spec);
    double delta = Rational(spec.delta()).convert_to<double>();
    ConvergenceReport rep;
    for (unsigned r = 1; r <= r_max; ++r) {
        Real lim = gengammaprod_moment(r, law);
        for (auto n : ns) {
            Rational mom = exact_ordinary_moment(spec, r, n);
            double scale = std::pow(
                std::pow(static_cast<double>(spec.p), delta) /
                    static_cast<double>(spec.p + spec.ell()) / std::pow(static_cast<double>(n), delta),
                static_cast<double>(r));
            double value = to_real(mom).convert_to<double>() * scale;
            double l = lim.convert_to<double>();
            rep.rows.push_back({n, r, value, l, std::abs(value / l - 1.0), 0.0});
        }
    }
    rep.sort();
    return rep;
}

inline std::string corner_experiment_csv(const CornerExperiment& ex) {
    std::ostringstream out;
    out << "run,corner_entry,rescaled\n";
    for (std::size_t i = 0; i < ex.corner_entries.size(); ++i)
        out << i << "," << ex.corner_entries[i] << "," << format_float(ex.rescaled[i]) << "\n";
    return out.str();
}

// moment tables: r, analytic, empirical, stderr
inline std::string moment_table_csv(const ConvergenceReport& rep) {
    std::ostringstream out;
    out << "r,analytic,empirical,stderr\n";
    for (const auto& row : rep.rows)
        out << row.r << "," << format_float(row.limit) << "," << format_float(row.value) << ","
            << format_float(row.stderr_) << "\n";
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace perioda
