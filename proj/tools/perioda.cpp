// perioda: exact and stochastic computations for periodic Polya urns,
// generalized gamma product limit laws, Young tableaux, and the density
// method.
//
// Grammar: perioda <group> <command> [--flag value]...
// Groups: urn, enum, limits, tableau, density, verify.
// Exit codes: 0 success, 1 usage/validation error, 2 verification failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "perioda/density.hpp"
#include "perioda/enumeration.hpp"
#include "perioda/guessing.hpp"
#include "perioda/limit_laws.hpp"
#include "perioda/links.hpp"
#include "perioda/report.hpp"
#include "perioda/tableaux.hpp"
#include "perioda/urn.hpp"
#include "perioda/verify.hpp"

namespace {

using namespace perioda;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) std::cout << content;
    else write_text_file(out_path, content);
}

json load_json(const std::string& path) { return json::parse(read_text_file(path)); }

UrnSpec load_spec(const std::string& path) { return urn_spec_from_json(load_json(path)); }

std::string report_as(const ConvergenceReport& rep, const std::string& format) {
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back(json{{"n", r.n},
                                {"r", r.r},
                                {"value", r.value},
                                {"limit", r.limit},
                                {"relative_error", r.relative_error},
                                {"stderr", r.stderr_}});
        return json{{"rows", rows}}.dump(2) + "\n";
    }
    return rep.csv();
}

}  // namespace

int main(int argc, char** argv) {
    unsigned digits = 50;
    if (const char* env = std::getenv("PERIODA_PRECISION")) {
        int v = std::atoi(env);
        if (v > 0) digits = static_cast<unsigned>(v);
    }
    set_real_precision(digits);

    CLI::App app{"periodic Polya urns, limit laws, Young tableaux, and the density method"};
    app.require_subcommand(1);

    std::string spec_path, law_path, shape_path, comb_path, input_path, out_path;
    std::string format = "csv";
    std::int64_t n = 0, steps = 0, runs = 1, r_max = 3, L = 0;
    std::int64_t tri_l = 1, tri_p = 1, tri_n = 1;
    std::uint64_t seed = 0;
    unsigned max_order = 2, max_degree = 2;
    double beta = 1.0;
    bool seed_set = false;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (required)")->required()->each([&](std::string) {
            seed_set = true;
        });
    };

    // --- urn ---------------------------------------------------------------
    auto* urn = app.add_subcommand("urn", "urn model commands");
    urn->require_subcommand(1);

    auto* urn_validate = urn->add_subcommand("validate", "validate a spec file");
    urn_validate->add_option("--spec", spec_path)->required();

    auto* urn_dist = urn->add_subcommand("exact-dist", "exact black-count distribution");
    urn_dist->add_option("--spec", spec_path)->required();
    urn_dist->add_option("--n", n)->required();
    urn_dist->add_option("--out", out_path);
    urn_dist->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* urn_sim = urn->add_subcommand("simulate", "simulate trajectories");
    urn_sim->add_option("--spec", spec_path)->required();
    urn_sim->add_option("--steps", steps)->required();
    urn_sim->add_option("--runs", runs);
    add_seed(urn_sim);
    urn_sim->add_option("--out", out_path);

    auto* urn_mc = urn->add_subcommand("mc-moments", "rescaled moments vs the limit law");
    urn_mc->add_option("--spec", spec_path)->required();
    urn_mc->add_option("--n", n)->required();
    urn_mc->add_option("--runs", runs)->required();
    urn_mc->add_option("--rmax", r_max);
    add_seed(urn_mc);
    urn_mc->add_option("--out", out_path);
    urn_mc->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // --- enum --------------------------------------------------------------
    auto* en = app.add_subcommand("enum", "exact enumeration commands");
    en->require_subcommand(1);

    auto* en_hist = en->add_subcommand("histories", "history totals h_0..h_n");
    en_hist->add_option("--spec", spec_path)->required();
    en_hist->add_option("--n", n)->required();
    en_hist->add_option("--out", out_path);

    auto* en_closed = en->add_subcommand("closed-form", "closed form vs exact total");
    en_closed->add_option("--spec", spec_path)->required();
    en_closed->add_option("--n", n)->required();

    auto* en_mom = en->add_subcommand("moments", "exact factorial moments at n");
    en_mom->add_option("--spec", spec_path)->required();
    en_mom->add_option("--n", n)->required();
    en_mom->add_option("--rmax", r_max);
    en_mom->add_option("--out", out_path);

    auto* en_conv = en->add_subcommand("convergence", "rescaled exact moments vs limit");
    en_conv->add_option("--spec", spec_path)->required();
    std::vector<std::int64_t> ns;
    en_conv->add_option("--n", ns, "one or more step counts")->required();
    en_conv->add_option("--rmax", r_max);
    en_conv->add_option("--out", out_path);
    en_conv->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* en_guess = en->add_subcommand("guess", "guess a P-recurrence from a sequence file");
    en_guess->add_option("--input", input_path, "newline-delimited integers")->required();
    en_guess->add_option("--max-order", max_order);
    en_guess->add_option("--max-degree", max_degree);
    en_guess->add_option("--out", out_path);

    // --- limits ------------------------------------------------------------
    auto* lim = app.add_subcommand("limits", "limit-law commands");
    lim->require_subcommand(1);

    auto* lim_mom = lim->add_subcommand("moments", "analytic moments of a product law");
    lim_mom->add_option("--law", law_path)->required();
    lim_mom->add_option("--rmax", r_max);
    lim_mom->add_option("--out", out_path);

    auto* lim_sample = lim->add_subcommand("sample", "empirical vs analytic moments");
    lim_sample->add_option("--law", law_path)->required();
    lim_sample->add_option("--runs", runs)->required();
    lim_sample->add_option("--rmax", r_max);
    add_seed(lim_sample);
    lim_sample->add_option("--out", out_path);

    auto* lim_tails = lim->add_subcommand("tails", "subgaussian and similarity profiles");
    lim_tails->add_option("--law", law_path)->required();
    lim_tails->add_option("--rmax", r_max);
    lim_tails->add_option("--beta", beta, "Mittag-Leffler beta parameter");
    lim_tails->add_option("--out", out_path);

    auto* lim_fact = lim->add_subcommand("factorization", "cyclic-shift gamma factorization");
    lim_fact->add_option("--law", law_path)->required();
    lim_fact->add_option("--rmax", r_max);

    // --- tableau -----------------------------------------------------------
    auto* tab = app.add_subcommand("tableau", "Young tableau commands");
    tab->require_subcommand(1);

    auto* tab_info = tab->add_subcommand("info", "cells, hooks, filling count");
    tab_info->add_option("--shape", shape_path)->required();

    auto* tab_sample = tab->add_subcommand("sample", "one uniform filling via the hook walk");
    tab_sample->add_option("--shape", shape_path)->required();
    add_seed(tab_sample);
    tab_sample->add_option("--out", out_path);

    auto* tab_corner = tab->add_subcommand("corner", "rescaled corner-statistic experiment");
    tab_corner->add_option("--shape", shape_path, "pattern-form shape json")->required();
    tab_corner->add_option("--runs", runs)->required();
    add_seed(tab_corner);
    tab_corner->add_option("--out", out_path);

    auto* tab_argmax = tab->add_subcommand("argmax", "exact argmax-position law");
    tab_argmax->add_option("--ell", tri_l)->required();
    tab_argmax->add_option("--p", tri_p)->required();
    tab_argmax->add_option("--n", tri_n)->required();
    tab_argmax->add_option("--out", out_path);

    auto* tab_tree = tab->add_subcommand("tree", "comb tree and urn schedule of a shape");
    tab_tree->add_option("--shape", shape_path)->required();

    // --- density -----------------------------------------------------------
    auto* den = app.add_subcommand("density", "density-method commands");
    den->require_subcommand(1);

    auto* den_law = den->add_subcommand("corner-law", "entry law from the density chain");
    den_law->add_option("--shape", shape_path)->required();
    den_law->add_option("--out", out_path);

    auto* den_poly = den->add_subcommand("poly", "the corner density polynomial g_M");
    den_poly->add_option("--shape", shape_path)->required();
    den_poly->add_option("--out", out_path);

    auto* den_tree = den->add_subcommand("tree-law", "marked-vertex law of a comb");
    den_tree->add_option("--comb", comb_path)->required();
    den_tree->add_option("--out", out_path);

    auto* den_fil = den->add_subcommand("filament", "filament identity check");
    den_fil->add_option("--shape", shape_path)->required();
    den_fil->add_option("--L", L)->required();

    // --- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "verification suite");
    ver->require_subcommand(1);
    auto* ver_all = ver->add_subcommand("all", "run every acceptance check");
    add_seed(ver_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*urn_validate) {
            UrnSpec spec = load_spec(spec_path);
            std::cout << "ok: p=" << spec.p << " l=" << spec.ell() << " s0=" << spec.s0()
                      << " delta=" << rational_to_string(spec.delta()) << "\n";
        } else if (*urn_dist) {
            UrnSpec spec = load_spec(spec_path);
            auto dist = exact_distribution(spec, n);
            if (format == "json") {
                json weights = json::object();
                for (const auto& [b, w] : dist.weights) weights[std::to_string(b)] = w.str();
                emit(json{{"n", n}, {"total", dist.total.str()}, {"weights", weights}}.dump(2) +
                         "\n",
                     out_path);
            } else {
                emit(exact_distribution_csv(dist), out_path);
            }
        } else if (*urn_sim) {
            UrnSpec spec = load_spec(spec_path);
            std::ostringstream out;
            if (runs == 1) {
                out << "step,black,white\n";
                for (const auto& st : simulate_trajectory(spec, steps, seed))
                    out << st.step << "," << st.black << "," << st.white << "\n";
            } else {
                out << "run,black\n";
                for (std::int64_t i = 0; i < runs; ++i) {
                    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
                    out << i << "," << simulate_final_black(spec, steps, rng) << "\n";
                }
            }
            emit(out.str(), out_path);
        } else if (*urn_mc) {
            UrnSpec spec = load_spec(spec_path);
            auto rep = urn_mc_moment_report(spec, n, static_cast<unsigned>(r_max),
                                            static_cast<std::uint64_t>(runs), seed);
            emit(report_as(rep, format), out_path);
        } else if (*en_hist) {
            UrnSpec spec = load_spec(spec_path);
            emit(sequence_lines(history_sequence(spec, n)), out_path);
        } else if (*en_closed) {
            UrnSpec spec = load_spec(spec_path);
            Real cf = closed_form_total(spec, n);
            BigInt exact = total_histories(spec, n);
            Real rel = abs(cf / to_real(exact) - 1);
            std::cout << "closed_form=" << cf.str(20) << "\nexact=" << exact.str()
                      << "\nrelative_error=" << format_float(rel) << "\n";
        } else if (*en_mom) {
            UrnSpec spec = load_spec(spec_path);
            auto table = moment_table(spec, n, static_cast<unsigned>(r_max));
            std::ostringstream out;
            out << "r,factorial_moment,normalized\n";
            double delta = Rational(spec.delta()).convert_to<double>();
            for (unsigned r = 1; r <= table.factorial_moments.size(); ++r) {
                const Rational& m = table.factorial_moments[r - 1];
                double normalized = to_real(m).convert_to<double>() /
                                    std::pow(static_cast<double>(n), delta * r);
                out << r << "," << rational_to_string(m) << "," << format_float(normalized)
                    << "\n";
            }
            emit(out.str(), out_path);
        } else if (*en_conv) {
            UrnSpec spec = load_spec(spec_path);
            auto rep = exact_convergence_report(spec, ns, static_cast<unsigned>(r_max));
            emit(report_as(rep, format), out_path);
        } else if (*en_guess) {
            std::ifstream in(input_path);
            if (!in) throw std::runtime_error("cannot open " + input_path);
            auto seq = sequence_from_lines(in);
            auto rec = guess_p_recurrence(seq, max_order, max_degree);
            if (!rec) {
                std::cout << "no recurrence found within (order " << max_order << ", degree "
                          << max_degree << ")\n";
                return 2;
            }
            emit(precurrence_to_json(*rec).dump(2) + "\n", out_path);
        } else if (*lim_mom) {
            GenGammaProdSpec law = law_from_json(load_json(law_path));
            std::ostringstream out;
            out << "r,analytic\n";
            for (std::int64_t r = 0; r <= r_max; ++r)
                out << r << ","
                    << format_float(gengammaprod_moment(static_cast<unsigned>(r), law)) << "\n";
            emit(out.str(), out_path);
        } else if (*lim_sample) {
            GenGammaProdSpec law = law_from_json(load_json(law_path));
            auto rep = law_mc_moment_report(law, static_cast<unsigned>(r_max),
                                            static_cast<std::uint64_t>(runs), seed);
            emit(moment_table_csv(rep), out_path);
        } else if (*lim_tails) {
            GenGammaProdSpec law = law_from_json(load_json(law_path));
            auto sub = subgaussian_profile(law, static_cast<unsigned>(r_max));
            MittagLefflerParams ml{Rational(law.delta()).convert_to<double>(), beta};
            auto sim = tail_similarity_profile(law, ml, static_cast<unsigned>(r_max));
            std::ostringstream out;
            out << "r,subgaussian_q,similarity_s\n";
            for (std::size_t r = 1; r <= static_cast<std::size_t>(r_max); ++r)
                out << r << "," << format_float(sub[r - 1]) << "," << format_float(sim[r - 1])
                    << "\n";
            emit(out.str(), out_path);
        } else if (*lim_fact) {
            GenGammaProdSpec law = law_from_json(load_json(law_path));
            Real err = gamma_factorization_check(law.ells, law.b0, law.w0, static_cast<unsigned>(r_max));
            json shifted = cyclic_shift_pattern(law.ells);
            std::cout << "shifted_pattern=" << shifted.dump() << "\nmax_relative_error="
                      << format_float(err) << "\n";
        } else if (*tab_info) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            std::cout << "columns=" << json(shape.columns).dump() << "\ncells=" << shape.num_cells()
                      << "\nfillings=" << count_syt(shape).str() << "\n";
        } else if (*tab_sample) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            emit(filling_to_json(hook_walk_sample(shape, seed)).dump(2) + "\n", out_path);
        } else if (*tab_corner) {
            json j = load_json(shape_path);
            if (!j.contains("pattern"))
                throw std::invalid_argument("tableau corner: shape must be in pattern form");
            const json& p = j.at("pattern");
            std::int64_t b0 = 0, w0 = 0;
            if (p.contains("shift")) {
                b0 = p.at("shift").at("b0").get<std::int64_t>();
                w0 = p.at("shift").at("w0").get<std::int64_t>();
            }
            auto ex = corner_statistic_experiment(p.at("ells").get<std::vector<std::int64_t>>(),
                                                  p.at("n").get<std::int64_t>(), b0, w0,
                                                  static_cast<std::uint64_t>(runs), seed);
            emit(corner_experiment_csv(ex), out_path);
            std::ostringstream note;
            note << "# empirical mean " << format_float(ex.empirical_moment(1)) << ", stderr "
                 << format_float(ex.empirical_stderr(1)) << "\n";
            std::cerr << note.str();
        } else if (*tab_argmax) {
            auto law = argmax_position_distribution(tri_l, tri_p, tri_n);
            emit(law_csv(law), out_path);
        } else if (*tab_tree) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            CombTreeShape tree = tableau_to_tree(shape);
            UrnSchedule sched = tree_to_urn(tableau_to_small_tree(shape));
            json steps_json = json::array();
            for (const auto& s : sched.steps)
                steps_json.push_back(json{{"draw", s.draw}, {"whites", s.whites}});
            std::cout << json{{"tree", comb_to_json(tree)},
                              {"urn", {{"b0", sched.b0},
                                       {"w0", sched.w0},
                                       {"black_offset", sched.black_offset},
                                       {"steps", steps_json}}}}
                             .dump(2)
                      << "\n";
        } else if (*den_law) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            emit(law_csv(entry_law_from_density(corner_density_polynomial(shape))), out_path);
        } else if (*den_poly) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            emit(polynomial_to_json(corner_density_polynomial(shape).poly).dump(2) + "\n",
                 out_path);
        } else if (*den_tree) {
            CombTreeShape comb = comb_from_json(load_json(comb_path));
            auto density = tree_corner_density(comb);
            emit(law_csv(entry_law_from_density(density)), out_path);
        } else if (*den_fil) {
            TableauShape shape = shape_from_json(load_json(shape_path));
            auto cd = corner_density_polynomial(shape);
            auto ext_density = filament_extension(cd, L);
            Rational lhs = ext_density.normalization *
                           Rational(factorial(static_cast<unsigned>(L)));
            Rational rhs = Rational(factorial(static_cast<unsigned>(L))) /
                           filament_constant_G(shape, L) * Rational(count_syt(shape)) /
                           Rational(factorial(static_cast<unsigned>(shape.num_cells())));
            std::cout << "int g_M (1-y)^L dy = " << rational_to_string(lhs)
                      << "\n(L!/G_L) ext/N!   = " << rational_to_string(rhs) << "\n"
                      << (lhs == rhs ? "identity holds\n" : "IDENTITY VIOLATED\n");
            if (lhs != rhs) return 2;
        } else if (*ver_all) {
            auto results = verify::run_all(seed);
            int failures = verify::report(results, std::cout);
            return failures == 0 ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
