#include "dynlab/app/battery.hpp"

#include <algorithm>
#include <functional>

#include "dynlab/app/report.hpp"
#include "dynlab/expansive.hpp"
#include "dynlab/specification.hpp"

namespace dynlab::app {

namespace {

/// Records laws; `check` returns a witness when the law is violated, null otherwise.
class Laws {
public:
    explicit Laws(BatteryOutcome& out) : out_(out) {}

    void run(const std::string& name, bool asserted, const std::function<Json()>& check) {
        Json law;
        law["law"] = name;
        law["asserted"] = asserted;
        try {
            const auto witness = check();
            law["status"] = witness.is_null() ? "pass" : "fail";
            if (!witness.is_null()) {
                law["witness"] = witness;
                if (asserted) out_.violated = true;
            }
        } catch (const StateExplosion& e) {
            law["status"] = "cap";
            law["explored"] = e.explored;
            out_.cap_hit = true;
        }
        list_.push_back(std::move(law));
    }

    Json list() const { return list_; }

private:
    BatteryOutcome& out_;
    Json list_ = Json::array();
};

Json populated_row_mismatch(const ModulusTable& a, const ModulusTable& b) {
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].delta.has_value() != b.rows[i].delta.has_value()) {
            return Json{{"epsilon", rational_text(a.rows[i].epsilon)},
                        {to_string(a.property), optional_rational(a.rows[i].delta)},
                        {to_string(b.property), optional_rational(b.rows[i].delta)}};
        }
    }
    return nullptr;
}

Json fit_json(const std::optional<LipschitzFit>& fit) {
    if (!fit) return nullptr;
    return Json{{"L", rational_text(fit->L)}, {"d0", rational_text(fit->d0)}};
}

/// Largest grid index j with holds(j), assuming holds is downward closed and
/// at least `from` already holds (from = -1 for none).
std::ptrdiff_t climb(std::ptrdiff_t from, std::size_t size, const std::function<bool(std::size_t)>& holds) {
    auto j = from;
    while (j + 1 < static_cast<std::ptrdiff_t>(size) && holds(static_cast<std::size_t>(j + 1))) ++j;
    return j;
}

BatteryOutcome theorem_a(const FiniteSystem& sys, const BatteryOptions& o) {
    BatteryOutcome out;
    Laws laws(out);
    Json tables = Json::object();
    laws.run("shadowing row populated iff local weak specification row populated", true, [&]() -> Json {
        const auto shadow = shadowing_table(sys, o.search);
        const auto lws = modulus_table_for_spec(sys, SpecKind::weak, o.N_max, o.k_bound, o.search);
        tables["shadowing"] = modulus_json(shadow);
        tables["local_weak_spec"] = modulus_json(lws);
        return populated_row_mismatch(shadow, lws);
    });
    laws.run("local weak specification with N = 1 agrees with shadowing at every grid pair", true, [&]() -> Json {
        const auto grid = threshold_grid(sys).candidates();
        for (const auto& eps : grid) {
            for (const auto& delta : grid) {
                const bool a = local_weak_spec_holds(sys, eps, 1, delta, o.search).holds;
                const bool b = shadowing_holds(sys, delta, eps, o.search).holds;
                if (a != b) {
                    return Json{{"epsilon", rational_text(eps)}, {"delta", rational_text(delta)},
                                {"local_weak_spec", a}, {"shadowing", b}};
                }
            }
        }
        return nullptr;
    });
    Json fits;
    laws.run("Lipschitz shadowing fit exists iff Lipschitz specification fit exists", true, [&]() -> Json {
        const auto shadow = lipschitz_constants(sys, o.search);
        const auto spec = lipschitz_spec_constants(sys, o.N_max, o.search);
        fits = Json{{"shadowing", fit_json(shadow)}, {"specification", fit_json(spec)}};
        return shadow.has_value() == spec.has_value() ? Json(nullptr) : fits;
    });
    out.report["laws"] = laws.list();
    out.report["tables"] = tables;
    out.report["lipschitz"] = fits;
    return out;
}

BatteryOutcome theorem_b(const FiniteSystem& sys, const BatteryOptions& o) {
    BatteryOutcome out;
    Laws laws(out);
    const auto grid = threshold_grid(sys).candidates();
    Json chain = Json::array();
    laws.run("local specification at (eps/2, N, delta) yields periodic shadowing at (delta_1, eps)", true,
             [&]() -> Json {
                 Json witness = nullptr;
                 for (std::size_t N = 1; N <= o.N_max; ++N) {
                     std::ptrdiff_t best = -1;
                     for (const auto& eps : grid) {
                         best = climb(best, grid.size(), [&](std::size_t j) {
                             return local_spec_holds(sys, half(eps), N, grid[j], o.k_bound, std::nullopt, o.search).holds;
                         });
                         if (best < 0) continue;
                         const auto& delta = grid[static_cast<std::size_t>(best)];
                         const auto delta1 = derived_delta(sys, N, delta);
                         const auto periodic = periodic_shadowing_holds(sys, delta1, eps, o.period_bound, o.search);
                         chain.push_back(Json{{"epsilon", rational_text(eps)},
                                              {"N", N},
                                              {"delta", rational_text(delta)},
                                              {"delta_1", rational_text(delta1)},
                                              {"periodic_shadowing", periodic.holds},
                                              {"bound_too_small", periodic.bound_too_small}});
                         if (!periodic.holds && witness.is_null()) {
                             witness = chain.back();
                             witness["counterexample"] = lasso_json(sys, *periodic.counterexample);
                         }
                     }
                 }
                 return witness;
             });

    // Closed chains with gap 1 are exactly the periodic pseudo orbits, so the
    // bounds line up: k_bound = period_bound, gaps capped at 1.
    const auto P = o.period_bound;
    laws.run("strong periodic shadowing implies local specification with N = 1", true, [&]() -> Json {
        for (const auto& eps : grid) {
            for (const auto& delta : grid) {
                if (!strong_periodic_shadowing_holds(sys, delta, eps, P, o.search).holds) continue;
                if (!local_spec_holds(sys, eps, 1, delta, P, 1, o.search).holds) {
                    return Json{{"epsilon", rational_text(eps)}, {"delta", rational_text(delta)}};
                }
            }
        }
        return nullptr;
    });
    laws.run("local specification with N = 1 implies periodic shadowing", true, [&]() -> Json {
        for (const auto& eps : grid) {
            for (const auto& delta : grid) {
                if (!local_spec_holds(sys, eps, 1, delta, P, 1, o.search).holds) continue;
                if (!periodic_shadowing_holds(sys, delta, eps, P, o.search).holds) {
                    return Json{{"epsilon", rational_text(eps)}, {"delta", rational_text(delta)}};
                }
            }
        }
        return nullptr;
    });
    out.report["laws"] = laws.list();
    out.report["chain"] = chain;
    return out;
}

BatteryOutcome theorem_c(const FiniteSystem& sys, const BatteryOptions& o) {
    BatteryOutcome out;
    std::vector<PointId> everything(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) everything[x] = x;
    const bool transitive = is_transitive(sys, everything);
    const auto sme = strong_measure_expansive_constant(sys);
    const bool hypotheses = transitive && sme.has_value();
    out.report["hypotheses"] = Json{{"transitive", transitive},
                                    {"strong_measure_expansive_constant", optional_rational(sme)},
                                    {"pass", hypotheses}};

    Laws laws(out);
    Json matrix = Json::array();
    laws.run("the six shadowing and specification properties are equivalent", hypotheses, [&]() -> Json {
        const auto spec = modulus_table_for_spec(sys, SpecKind::full, o.N_max, o.k_bound, o.search);
        const auto weak = modulus_table_for_spec(sys, SpecKind::weak, o.N_max, o.k_bound, o.search);
        const auto shadow = shadowing_table(sys, o.search);
        const auto strong = periodic_table(sys, o.period_bound, true, o.search);
        const auto periodic = periodic_table(sys, o.period_bound, false, o.search);
        Json witness = nullptr;
        for (std::size_t i = 0; i < shadow.rows.size(); ++i) {
            std::optional<Rational> special;
            if (shadow.rows[i].delta && periodic.rows[i].delta) {
                special = std::min(*shadow.rows[i].delta, *periodic.rows[i].delta);
            }
            const std::vector<std::optional<Rational>> cells{spec.rows[i].delta, weak.rows[i].delta,
                                                             shadow.rows[i].delta, strong.rows[i].delta,
                                                             periodic.rows[i].delta, special};
            Json row{{"epsilon", rational_text(shadow.rows[i].epsilon)},
                     {"local_spec", optional_rational(cells[0])},
                     {"local_weak_spec", optional_rational(cells[1])},
                     {"shadowing", optional_rational(cells[2])},
                     {"strong_periodic", optional_rational(cells[3])},
                     {"periodic", optional_rational(cells[4])},
                     {"special", optional_rational(cells[5])}};
            const bool first = cells[0].has_value();
            const bool agree = std::all_of(cells.begin(), cells.end(), [&](const auto& c) { return c.has_value() == first; });
            if (!agree && witness.is_null()) witness = row;
            matrix.push_back(std::move(row));
        }
        return witness;
    });
    out.report["laws"] = laws.list();
    out.report["matrix"] = matrix;
    return out;
}

BatteryOutcome theorem_d(const FiniteSystem& sys, const BatteryOptions&) {
    BatteryOutcome out;
    Laws laws(out);
    const auto hypotheses = diagnose_spectral_hypotheses(sys);
    if (hypotheses.state_cap_hit) out.cap_hit = true;
    const auto oracle = spectral_decomposition(sys);
    const auto construction = spectral_decomposition_cp(sys);
    laws.run("decomposition invariants re-verify", true, [&]() -> Json {
        const auto issues = verify_decomposition(sys, oracle);
        return issues.empty() ? Json(nullptr) : Json(issues);
    });
    laws.run("C_p construction matches the cyclic decomposition", hypotheses.passes(), [&]() -> Json {
        return same_partition(oracle, construction) ? Json(nullptr) : decomposition_json(sys, construction);
    });
    laws.run("chain recurrent set equals the non-wandering set", hypotheses.shadowing_populated, [&]() -> Json {
        const auto cr = chain_recurrent_set(sys).set;
        const auto omega = nonwandering_set(sys);
        if (cr == omega) return nullptr;
        std::vector<PointId> a, b;
        for (PointId x = 0; x < sys.size(); ++x) {
            if (cr.test(x)) a.push_back(x);
            if (omega.test(x)) b.push_back(x);
        }
        return Json{{"chain_recurrent", point_names(sys, a)}, {"nonwandering", point_names(sys, b)}};
    });
    out.report["hypotheses"] = hypothesis_json(hypotheses);
    out.report["laws"] = laws.list();
    out.report["decomposition"] = decomposition_json(sys, oracle);
    out.report["construction"] = decomposition_json(sys, construction);
    return out;
}

BatteryOutcome hierarchy(const FiniteSystem& sys, const BatteryOptions&) {
    BatteryOutcome out;
    Laws laws(out);
    const auto grid = threshold_grid(sys).candidates();
    laws.run("1-expansive implies strong measure expansive", true, [&]() -> Json {
        for (const auto& delta : grid) {
            if (is_n_expansive(sys, 1, delta) && !strong_measure_expansive_holds(sys, delta).holds) {
                return Json{{"delta", rational_text(delta)}};
            }
        }
        return nullptr;
    });
    laws.run("strong measure expansive implies measure expansive", true, [&]() -> Json {
        for (const auto& delta : grid) {
            if (strong_measure_expansive_holds(sys, delta).holds && !measure_expansive_holds(sys, delta).holds) {
                return Json{{"delta", rational_text(delta)}};
            }
        }
        return nullptr;
    });
    laws.run("n-expansive implies (n+1)-expansive", true, [&]() -> Json {
        for (const auto& delta : grid) {
            for (std::size_t n = 1; n < sys.size(); ++n) {
                if (is_n_expansive(sys, n, delta) && !is_n_expansive(sys, n + 1, delta)) {
                    return Json{{"delta", rational_text(delta)}, {"n", n}};
                }
            }
        }
        return nullptr;
    });
    Json constants = Json::object();
    for (std::size_t n = 1; n <= std::min<std::size_t>(sys.size(), 4); ++n) {
        constants[std::to_string(n) + "-expansive"] = optional_rational(n_expansive_constant(sys, n));
    }
    constants["strong_measure_expansive"] = optional_rational(strong_measure_expansive_constant(sys));
    Json rows = Json::array();
    for (const auto& delta : grid) {
        const auto sme = strong_measure_expansive_holds(sys, delta);
        const auto per = expansive_on_per_violation(sys, delta);
        Json row{{"delta", rational_text(delta)},
                 {"expansive_1", is_n_expansive(sys, 1, delta)},
                 {"strong_measure_expansive", sme.holds},
                 {"measure_expansive", "vacuous"},
                 {"expansive_on_per", !per.has_value()}};
        if (per) row["per_pair"] = point_names(sys, {per->first, per->second});
        if (!sme.holds) row["sme_witness"] = Json{{"point", sys.name(*sme.point)}, {"cycle", point_names(sys, sys.cycles()[*sme.cycle])}};
        const auto escape = stableset_violation(sys, delta);
        row["stable_sets_contained"] = !escape.has_value();
        rows.push_back(std::move(row));
    }
    out.report["laws"] = laws.list();
    out.report["constants"] = constants;
    out.report["rows"] = rows;
    return out;
}

}  // namespace

const std::vector<std::string>& battery_ids() {
    static const std::vector<std::string> ids{"thmA", "thmB", "thmC", "thmD", "hierarchy"};
    return ids;
}

Json hypothesis_json(const HypothesisReport& report) {
    return Json{{"homeomorphism", report.homeomorphism},
                {"strong_measure_expansive_constant", optional_rational(report.sme_constant)},
                {"strong_measure_expansive_fails_from", optional_rational(report.sme_fails_from)},
                {"shadowing_populated", report.shadowing_populated},
                {"state_cap_hit", report.state_cap_hit},
                {"note", "at a finite scale the hypotheses hold below the smallest positive distance; the failing "
                         "threshold shows where they break"},
                {"pass", report.passes()}};
}

Json decomposition_json(const FiniteSystem& sys, const Decomposition& decomposition) {
    Json sets = Json::array();
    for (const auto& b : decomposition.basic_sets) {
        Json parts = Json::array();
        for (const auto& part : b.cyclic.parts) parts.push_back(point_names(sys, part));
        Json mixing = Json::array();
        for (const bool m : b.mixing) mixing.push_back(m);
        sets.push_back(Json{{"points", point_names(sys, b.points)},
                            {"period", b.cyclic.period},
                            {"parts", parts},
                            {"mixing", mixing},
                            {"transitive", b.transitive}});
    }
    std::vector<PointId> omega;
    for (PointId x = 0; x < sys.size(); ++x) {
        if (decomposition.nonwandering.test(x)) omega.push_back(x);
    }
    return Json{{"provenance", decomposition.provenance},
                {"nonwandering", point_names(sys, omega)},
                {"basic_sets", sets}};
}

BatteryOutcome run_theorem_battery(const FiniteSystem& sys, const std::string& id, const BatteryOptions& options) {
    BatteryOutcome out;
    if (id == "thmA") out = theorem_a(sys, options);
    else if (id == "thmB") out = theorem_b(sys, options);
    else if (id == "thmC") out = theorem_c(sys, options);
    else if (id == "thmD") out = theorem_d(sys, options);
    else if (id == "hierarchy") out = hierarchy(sys, options);
    else throw Error("unknown battery '" + id + "'");
    Json report;
    report["battery"] = id;
    for (auto& [key, value] : out.report.items()) report[key] = value;
    out.report = std::move(report);
    return out;
}

}  // namespace dynlab::app
