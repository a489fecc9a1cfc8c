// dynlab: command-line front end for the finite-scale shadowing and
// specification checks.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynlab/app/battery.hpp"
#include "dynlab/app/io.hpp"
#include "dynlab/app/report.hpp"
#include "dynlab/expansive.hpp"
#include "dynlab/gallery.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/specification.hpp"

using namespace dynlab;
using namespace dynlab::app;

namespace {

struct Common {
    std::string output = "-";
    bool no_timing = false;
};

struct SystemArgs {
    std::string path;
    std::size_t window = 2;
};

void add_system(CLI::App* cmd, SystemArgs& args) {
    cmd->add_option("--system", args.path, "System file (finite or sft JSON)")->required();
    cmd->add_option("--window", args.window, "Window radius for sft files")->check(CLI::PositiveNumber);
}

struct Loaded {
    FiniteSystem sys;
    std::string digest;
    Json parameters;
};

Loaded load(const SystemArgs& args) {
    const auto file = parse_system_file(args.path);
    Json params;
    params["system"] = args.path;
    if (file.is_sft()) params["window"] = args.window;
    return {resolve(file, args.window), digest(file.canonical), params};
}

Rational rational_arg(const std::string& text, const char* name) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw SchemaError("", std::string("malformed rational for --") + name);
    }
}

std::vector<std::size_t> size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(item)));
        } catch (const std::exception&) {
            throw SchemaError("", "malformed integer list '" + text + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

int check_shadowing(const SystemArgs& sa, const std::string& eps_text, const std::optional<std::string>& delta_text,
                    std::optional<std::size_t> period_bound, Report& report) {
    const auto [sys, dig, params] = load(sa);
    const auto options = options_from_env();
    report.digest = dig;
    report.parameters = params;
    const auto eps = rational_arg(eps_text, "epsilon");
    report.parameters["epsilon"] = rational_text(eps);
    int code = ok;
    if (!delta_text) {
        const auto modulus = shadowing_modulus(sys, eps, options);
        report.results["shadowing_modulus"] = optional_rational(modulus);
        if (!modulus) code = violation;
        if (period_bound) {
            report.parameters["period_bound"] = *period_bound;
            const auto periodic = periodic_shadowing_modulus(sys, eps, *period_bound, false, options);
            const auto strong = periodic_shadowing_modulus(sys, eps, *period_bound, true, options);
            report.results["periodic_modulus"] = optional_rational(periodic);
            report.results["strong_periodic_modulus"] = optional_rational(strong);
            if (!periodic || !strong) code = violation;
        }
        return code;
    }
    const auto delta = rational_arg(*delta_text, "delta");
    report.parameters["delta"] = rational_text(delta);
    const auto result = shadowing_holds(sys, delta, eps, options);
    Json shadow{{"holds", result.holds}, {"states_explored", result.states_explored}};
    if (result.counterexample) {
        shadow["counterexample"] = lasso_json(sys, *result.counterexample);
        shadow["dies_at"] = result.dies_at;
        code = violation;
    }
    report.results["shadowing"] = shadow;
    if (period_bound) {
        report.parameters["period_bound"] = *period_bound;
        for (const bool strong : {false, true}) {
            const auto r = strong ? strong_periodic_shadowing_holds(sys, delta, eps, *period_bound, options)
                                  : periodic_shadowing_holds(sys, delta, eps, *period_bound, options);
            Json j{{"holds", r.holds}, {"bound_too_small", r.bound_too_small}, {"states_explored", r.states_explored}};
            if (r.counterexample) j["counterexample"] = lasso_json(sys, *r.counterexample);
            if (!r.holds) code = violation;
            report.results[strong ? "strong_periodic_shadowing" : "periodic_shadowing"] = j;
        }
    }
    return code;
}

struct SpecArgs {
    std::string variant = "weak";
    std::string epsilon;
    std::optional<std::string> delta;
    std::size_t N = 1;
    std::size_t k_bound = 3;
    std::size_t N_max = 3;
    std::string stem, cycle, past;
};

int check_spec(const SystemArgs& sa, const SpecArgs& a, Report& report) {
    const auto [sys, dig, params] = load(sa);
    const auto options = options_from_env();
    report.digest = dig;
    report.parameters = params;
    report.parameters["variant"] = a.variant;

    if (a.variant == "weak" || a.variant == "full") {
        const auto eps = rational_arg(a.epsilon, "epsilon");
        report.parameters["epsilon"] = rational_text(eps);
        report.parameters["N"] = a.N;
        if (a.variant == "full") report.parameters["k_bound"] = a.k_bound;
        auto run = [&](const Rational& delta) {
            return a.variant == "weak" ? local_weak_spec_holds(sys, eps, a.N, delta, options)
                                       : local_spec_holds(sys, eps, a.N, delta, a.k_bound, std::nullopt, options);
        };
        if (!a.delta) {
            std::optional<Rational> best;
            const auto grid = threshold_grid(sys).candidates();
            for (auto it = grid.rbegin(); it != grid.rend() && !best; ++it) {
                if (run(*it).holds) best = *it;
            }
            report.results["modulus"] = optional_rational(best);
            return best ? ok : violation;
        }
        const auto delta = rational_arg(*a.delta, "delta");
        report.parameters["delta"] = rational_text(delta);
        const auto r = run(delta);
        Json j{{"holds", r.holds}, {"gap_bound", r.gap_bound}, {"bound_too_small", r.bound_too_small},
               {"states_explored", r.states_explored}};
        if (r.failing_gap) {
            j["failing_gap"] = *r.failing_gap;
            j["failing_chain"] = point_names(sys, r.failing_chain);
        }
        report.results["specification"] = j;
        return r.holds ? ok : violation;
    }
    if (a.variant == "lipschitz") {
        report.parameters["N_max"] = a.N_max;
        const auto fit = lipschitz_spec_constants(sys, a.N_max, options);
        report.results["lipschitz"] =
            fit ? Json{{"L", rational_text(fit->L)}, {"d0", rational_text(fit->d0)}} : Json(nullptr);
        return fit ? ok : violation;
    }
    if (a.variant == "limit" || a.variant == "two-sided") {
        const auto stem = parse_points(sys, a.stem);
        const auto cycle = parse_points(sys, a.cycle);
        if (cycle.empty()) throw SchemaError("", "--cycle is required for the limit variants");
        report.parameters["N"] = a.N;
        report.parameters["stem"] = point_names(sys, stem);
        report.parameters["cycle"] = point_names(sys, cycle);
        std::optional<PointId> tracer;
        if (a.variant == "limit") {
            tracer = limit_spec_check(sys, Lasso::one_sided(stem, cycle), a.N);
        } else {
            std::optional<std::vector<PointId>> past;
            if (!a.past.empty()) {
                past = parse_points(sys, a.past);
                report.parameters["past"] = point_names(sys, *past);
            }
            tracer = two_sided_limit_spec_check(sys, Lasso::two_sided(stem, cycle, past), a.N);
        }
        report.results["tracer"] = tracer ? Json(sys.name(*tracer)) : Json(nullptr);
        return tracer ? ok : violation;
    }
    throw SchemaError("", "unknown spec variant '" + a.variant + "'");
}

int check_expansive(const SystemArgs& sa, const std::string& variant, const std::string& delta_text, std::size_t n,
                    Report& report) {
    const auto [sys, dig, params] = load(sa);
    report.digest = dig;
    report.parameters = params;
    report.parameters["variant"] = variant;
    const auto delta = rational_arg(delta_text, "delta");
    report.parameters["delta"] = rational_text(delta);
    if (variant == "n") {
        report.parameters["n"] = n;
        const bool holds = is_n_expansive(sys, n, delta);
        report.results["holds"] = holds;
        report.results["constant"] = optional_rational(n_expansive_constant(sys, n));
        Json largest = nullptr;
        for (PointId x = 0; x < sys.size(); ++x) {
            const auto g = gamma_set(sys, x, delta);
            if (g.members.count() > n) {
                std::vector<PointId> members;
                for (PointId y = 0; y < sys.size(); ++y) {
                    if (g.members.test(y)) members.push_back(y);
                }
                largest = Json{{"center", sys.name(x)}, {"gamma", point_names(sys, members)}};
                break;
            }
        }
        report.results["witness"] = largest;
        return holds ? ok : violation;
    }
    if (variant == "strong-measure") {
        const auto r = strong_measure_expansive_holds(sys, delta);
        report.results["holds"] = r.holds;
        report.results["constant"] = optional_rational(strong_measure_expansive_constant(sys));
        if (!r.holds) {
            Json weights = Json::object();
            for (PointId x = 0; x < sys.size(); ++x) {
                if (r.measure->weights[x] != 0) weights[sys.name(x)] = rational_text(r.measure->weights[x]);
            }
            report.results["witness"] = Json{{"point", sys.name(*r.point)}, {"measure", weights}};
        }
        return r.holds ? ok : violation;
    }
    if (variant == "measure") {
        const auto r = measure_expansive_holds(sys, delta);
        report.results["holds"] = r.holds;
        report.results["vacuous"] = r.vacuous;
        return ok;
    }
    if (variant == "per") {
        const auto pair = expansive_on_per_violation(sys, delta);
        report.results["holds"] = !pair.has_value();
        if (pair) report.results["witness"] = point_names(sys, {pair->first, pair->second});
        return pair ? violation : ok;
    }
    throw SchemaError("", "unknown expansive variant '" + variant + "'");
}

int spectral(const SystemArgs& sa, const std::string& emit, Report& report) {
    const auto [sys, dig, params] = load(sa);
    report.digest = dig;
    report.parameters = params;
    const auto hypotheses = diagnose_spectral_hypotheses(sys);
    const auto oracle = spectral_decomposition(sys);
    const auto construction = spectral_decomposition_cp(sys);
    const auto issues = verify_decomposition(sys, oracle);
    Json decomposition{{"scc_oracle", decomposition_json(sys, oracle)},
                       {"cp_construction", decomposition_json(sys, construction)},
                       {"partitions_agree", same_partition(oracle, construction)},
                       {"invariant_violations", issues},
                       {"hypotheses", hypothesis_json(hypotheses)}};
    if (!emit.empty()) {
        report.parameters["emit"] = emit;
        write_text(emit, decomposition.dump(2) + "\n");
    }
    report.results = decomposition;
    report.hypotheses = hypothesis_json(hypotheses);
    if (!issues.empty()) return violation;
    return hypotheses.state_cap_hit ? resource_cap : ok;
}

Json sft_summary(const Sft& sft) {
    Json traces = Json::array();
    std::optional<std::size_t> min_period;
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto t = adjacency_trace(sft, n);
        traces.push_back(t);
        if (t > 0 && !min_period) min_period = n;
    }
    return Json{{"symbols", sft.size()},
                {"edges", sft.edge_count()},
                {"periodic_point_counts", traces},
                {"min_period_up_to_8", min_period ? Json(*min_period) : Json(nullptr)}};
}

int gallery(const std::string& which, std::size_t p, std::size_t q, std::size_t lattice, std::size_t K,
            const std::string& primes_text, std::size_t factors, std::optional<std::size_t> window,
            const std::string& emit, Report& report) {
    Json system;
    if (which == "xpq" || which == "product") {
        Sft sft;
        if (which == "xpq") {
            report.parameters = Json{{"p", p}, {"q", q}};
            sft = build_xpq(p, q);
        } else {
            report.parameters = Json{{"primes", size_list(primes_text)}, {"factors", factors}};
            sft = build_product_truncation(size_list(primes_text), factors);
        }
        report.results["shift"] = sft_summary(sft);
        system = to_json(sft);
        if (window) {
            report.parameters["window"] = *window;
            const auto sys = window_system(sft, *window);
            report.results["window_points"] = sys.size();
            system = to_json(sys);
        }
    } else if (which == "myex") {
        report.parameters = Json{{"lattice", lattice}, {"K", K}};
        const auto m = build_myex(lattice, K);
        Json anchors = Json::array();
        for (std::size_t k = 0; k < m.K; ++k) {
            anchors.push_back(Json{{"k", k + 1},
                                   {"anchor", m.system.name(m.anchors[k])},
                                   {"period", m.system.period(m.anchors[k])},
                                   {"satellites", point_names(m.system, m.satellites[k])}});
        }
        report.results["points"] = m.system.size();
        report.results["anchors"] = anchors;
        system = to_json(m.system);
    } else {
        throw SchemaError("", "unknown gallery entry '" + which + "'");
    }
    report.digest = digest(system);
    if (!emit.empty()) {
        report.parameters["emit"] = emit;
        write_text(emit, system.dump(2) + "\n");
    } else {
        report.results["system"] = system;
    }
    return ok;
}

int battery(const SystemArgs& sa, std::vector<std::string> ids, const BatteryOptions& options, Report& report) {
    const auto [sys, dig, params] = load(sa);
    report.digest = dig;
    report.parameters = params;
    if (ids.empty()) ids = battery_ids();
    report.parameters["batteries"] = ids;
    report.parameters["N_max"] = options.N_max;
    report.parameters["period_bound"] = options.period_bound;
    report.parameters["k_bound"] = options.k_bound;
    bool violated = false, cap = false;
    Json out = Json::array();
    for (const auto& id : ids) {
        auto r = run_theorem_battery(sys, id, options);
        violated = violated || r.violated;
        cap = cap || r.cap_hit;
        out.push_back(std::move(r.report));
    }
    report.results["batteries"] = out;
    if (violated) return violation;
    return cap ? resource_cap : ok;
}

int modulus(const SystemArgs& sa, const std::string& property, const std::string& csv, std::size_t period_bound,
            std::size_t N_max, std::size_t k_bound, Report& report) {
    const auto [sys, dig, params] = load(sa);
    const auto options = options_from_env();
    report.digest = dig;
    report.parameters = params;
    report.parameters["property"] = property;
    ModulusTable table;
    if (property == "shadowing") {
        table = shadowing_table(sys, options);
    } else if (property == "periodic" || property == "strong-periodic") {
        report.parameters["period_bound"] = period_bound;
        table = periodic_table(sys, period_bound, property == "strong-periodic", options);
    } else if (property == "local-weak-spec" || property == "local-spec") {
        report.parameters["N_max"] = N_max;
        const bool full = property == "local-spec";
        if (full) report.parameters["k_bound"] = k_bound;
        table = modulus_table_for_spec(sys, full ? SpecKind::full : SpecKind::weak, N_max, k_bound, options);
    } else {
        throw SchemaError("", "unknown property '" + property + "'");
    }
    report.results["table"] = modulus_json(table);
    if (!csv.empty()) {
        report.parameters["csv"] = csv;
        write_text(csv, modulus_csv(table));
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-scale shadowing, specification and expansiveness checks"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    // Subcommands inherit this, so --output and --no-timing work anywhere on the line.
    app.fallthrough();
    Common common;
    app.add_option("--output,-o", common.output, "Report destination ('-' for stdout)");
    app.add_flag("--no-timing", common.no_timing, "Leave wall time out of the report");

    Report report;
    std::function<int()> action;

    auto* check = app.add_subcommand("check", "Check one property");
    check->require_subcommand(1);

    SystemArgs shadow_sys;
    std::string shadow_eps;
    std::optional<std::string> shadow_delta;
    std::optional<std::size_t> shadow_bound;
    auto* shadow = check->add_subcommand("shadowing", "Shadowing, periodic and strong periodic shadowing");
    add_system(shadow, shadow_sys);
    shadow->add_option("--epsilon", shadow_eps)->required();
    shadow->add_option("--delta", shadow_delta);
    shadow->add_option("--period-bound", shadow_bound)->check(CLI::PositiveNumber);
    shadow->callback([&] {
        report.command = "check shadowing";
        action = [&] { return check_shadowing(shadow_sys, shadow_eps, shadow_delta, shadow_bound, report); };
    });

    SystemArgs spec_sys;
    SpecArgs spec_args;
    auto* spec = check->add_subcommand("spec", "Local (weak) specification and its variants");
    add_system(spec, spec_sys);
    spec->add_option("--variant", spec_args.variant)
        ->check(CLI::IsMember({"weak", "full", "limit", "lipschitz", "two-sided"}));
    spec->add_option("--epsilon", spec_args.epsilon);
    spec->add_option("--delta", spec_args.delta);
    spec->add_option("--N", spec_args.N)->check(CLI::PositiveNumber);
    spec->add_option("--k-bound", spec_args.k_bound)->check(CLI::PositiveNumber);
    spec->add_option("--N-max", spec_args.N_max)->check(CLI::PositiveNumber);
    spec->add_option("--stem", spec_args.stem, "Comma-separated point names");
    spec->add_option("--cycle", spec_args.cycle, "Comma-separated point names");
    spec->add_option("--past", spec_args.past, "Comma-separated point names");
    spec->callback([&] {
        report.command = "check spec";
        if ((spec_args.variant == "weak" || spec_args.variant == "full") && spec_args.epsilon.empty()) {
            throw CLI::ValidationError("--epsilon", "required for the weak and full variants");
        }
        action = [&] { return check_spec(spec_sys, spec_args, report); };
    });

    SystemArgs exp_sys;
    std::string exp_variant = "n", exp_delta;
    std::size_t exp_n = 1;
    auto* exp = check->add_subcommand("expansive", "Expansiveness notions");
    add_system(exp, exp_sys);
    exp->add_option("--variant", exp_variant)->check(CLI::IsMember({"n", "strong-measure", "measure", "per"}));
    exp->add_option("--delta", exp_delta)->required();
    exp->add_option("--n", exp_n)->check(CLI::PositiveNumber);
    exp->callback([&] {
        report.command = "check expansive";
        action = [&] { return check_expansive(exp_sys, exp_variant, exp_delta, exp_n, report); };
    });

    SystemArgs spectral_sys;
    std::string spectral_emit;
    auto* spec_cmd = app.add_subcommand("spectral", "Spectral decomposition with hypothesis report");
    add_system(spec_cmd, spectral_sys);
    spec_cmd->add_option("--emit", spectral_emit, "Write the decomposition JSON here");
    spec_cmd->callback([&] {
        report.command = "spectral";
        action = [&] { return spectral(spectral_sys, spectral_emit, report); };
    });

    std::size_t g_p = 3, g_q = 2, g_lattice = 5, g_K = 3, g_factors = 2;
    std::string g_primes = "2,3,5", g_emit;
    std::optional<std::size_t> g_window;
    auto* gal = app.add_subcommand("gallery", "Build a gallery system");
    gal->require_subcommand(1);
    auto* xpq = gal->add_subcommand("xpq", "Two-loop shift X(p,q)");
    xpq->add_option("--p", g_p)->check(CLI::PositiveNumber);
    xpq->add_option("--q", g_q)->check(CLI::PositiveNumber);
    auto* myex = gal->add_subcommand("myex", "Cat map lattice with satellite orbits");
    myex->add_option("--lattice", g_lattice);
    myex->add_option("--K", g_K);
    auto* product = gal->add_subcommand("product", "Finite product of X(p_{i+1},p_i) shifts");
    product->add_option("--primes", g_primes);
    product->add_option("--factors", g_factors);
    for (auto* sub : {xpq, myex, product}) {
        sub->add_option("--emit", g_emit, "Write the system JSON here");
        if (sub != myex) sub->add_option("--window", g_window, "Emit the window system")->check(CLI::PositiveNumber);
        sub->callback([&, sub] {
            report.command = "gallery " + sub->get_name();
            const auto which = sub->get_name();
            action = [&, which] {
                return gallery(which, g_p, g_q, g_lattice, g_K, g_primes, g_factors, g_window, g_emit, report);
            };
        });
    }

    SystemArgs bat_sys;
    std::vector<std::string> bat_ids;
    BatteryOptions bat_opts;
    auto* bat = app.add_subcommand("battery", "Run theorem batteries");
    add_system(bat, bat_sys);
    bat->add_option("--id", bat_ids, "thmA, thmB, thmC, thmD, hierarchy (default: all)")
        ->check(CLI::IsMember(battery_ids()));
    bat->add_option("--N-max", bat_opts.N_max)->check(CLI::PositiveNumber);
    bat->add_option("--period-bound", bat_opts.period_bound)->check(CLI::PositiveNumber);
    bat->add_option("--k-bound", bat_opts.k_bound)->check(CLI::PositiveNumber);
    bat->callback([&] {
        report.command = "battery";
        action = [&] {
            bat_opts.search = options_from_env();
            return battery(bat_sys, bat_ids, bat_opts, report);
        };
    });

    SystemArgs mod_sys;
    std::string mod_property = "shadowing", mod_csv;
    std::size_t mod_bound = 6, mod_N_max = 2, mod_k = 3;
    auto* mod = app.add_subcommand("modulus", "Modulus table over the threshold grid");
    add_system(mod, mod_sys);
    mod->add_option("--property", mod_property)
        ->check(CLI::IsMember({"shadowing", "periodic", "strong-periodic", "local-weak-spec", "local-spec"}));
    mod->add_option("--csv", mod_csv, "Also write the table as CSV");
    mod->add_option("--period-bound", mod_bound)->check(CLI::PositiveNumber);
    mod->add_option("--N-max", mod_N_max)->check(CLI::PositiveNumber);
    mod->add_option("--k-bound", mod_k)->check(CLI::PositiveNumber);
    mod->callback([&] {
        report.command = "modulus";
        action = [&] { return modulus(mod_sys, mod_property, mod_csv, mod_bound, mod_N_max, mod_k, report); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = ok;
    try {
        code = action();
    } catch (const StateExplosion& e) {
        std::cerr << "dynlab: state cap hit after " << e.explored << " states: " << e.what() << "\n";
        return resource_cap;
    } catch (const HorizonExceeded& e) {
        std::cerr << "dynlab: " << e.what() << "\n";
        return resource_cap;
    } catch (const std::exception& e) {
        std::cerr << "dynlab: " << e.what() << "\n";
        return input_error;
    }
    if (!common.no_timing) {
        report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    try {
        emit_report(report, common.output);
    } catch (const Error& e) {
        std::cerr << "dynlab: " << e.what() << "\n";
        return input_error;
    }
    return code;
}
