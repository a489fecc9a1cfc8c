#include "dynlab/shadowing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dynlab/errors.hpp"
#include "search.hpp"

namespace dynlab {

namespace {

std::vector<PointSet> open_balls(const FiniteSystem& sys, const Rational& radius) {
    std::vector<PointSet> balls;
    balls.reserve(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) balls.push_back(sys.ball(x, radius));
    return balls;
}

void require_positive(const Rational& value, const char* what) {
    if (value <= 0) throw Error(std::string(what) + " must be positive");
}

/// Completes a finite delta-walk into an infinite pseudo orbit by following the
/// true orbit of its last point.
Lasso complete_walk(const FiniteSystem& sys, std::vector<PointId> walk) {
    const PointId last = walk.back();
    walk.pop_back();
    const auto tail = orbit_lasso(sys, last);
    walk.insert(walk.end(), tail.stem().begin(), tail.stem().end());
    if (!sys.invertible()) return Lasso::one_sided(std::move(walk), tail.cycle());
    // The past is the backward orbit of x_0, so x_{-1} = f^{-1}(x_0).
    const auto past = orbit_lasso(sys, walk.empty() ? last : walk.front()).cycle();
    return Lasso::two_sided(std::move(walk), tail.cycle(), past);
}

}  // namespace

Digraph delta_graph(const FiniteSystem& sys, const Rational& delta) {
    Digraph g(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        const auto& row = sys.dist()[sys.image(x)];
        for (PointId y = 0; y < sys.size(); ++y) {
            if (row[y] < delta) g[x].push_back(y);
        }
    }
    return g;
}

ShadowResult shadowing_holds(const FiniteSystem& sys, const Rational& delta, const Rational& epsilon,
                             const SearchOptions& options) {
    require_positive(delta, "delta");
    require_positive(epsilon, "epsilon");
    // Candidates are the images of the points still epsilon-close to the
    // pseudo orbit; the property fails iff some walk empties them.
    const auto graph = delta_graph(sys, delta);
    const auto balls = open_balls(sys, epsilon);
    const auto dead = detail::find_dead_walk({sys.map(), graph, balls}, options.subset_cap);
    ShadowResult result;
    result.states_explored = dead.states;
    if (dead.walk) {
        result.holds = false;
        result.dies_at = dead.walk->size() - 1;
        result.counterexample = complete_walk(sys, *dead.walk);
    }
    return result;
}

std::optional<Rational> shadowing_modulus(const FiniteSystem& sys, const Rational& epsilon,
                                          const SearchOptions& options) {
    const auto candidates = threshold_grid(sys).candidates();
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        if (shadowing_holds(sys, *it, epsilon, options).holds) return *it;
    }
    return std::nullopt;
}

ConstructResult construct_shadow_point(const FiniteSystem& sys, const Lasso& lasso,
                                       const Rational& epsilon) {
    require_positive(epsilon, "epsilon");
    if (lasso.two_sided() && !sys.invertible()) {
        throw NotInvertible("two-sided lasso on a non-invertible system");
    }
    // A window valid for every candidate at once.
    const auto hi = static_cast<std::int64_t>(std::max(lasso.stem().size(), sys.max_preperiod()) +
                                              lcm_u64(lasso.cycle().size(), sys.cycle_lcm()));
    const std::int64_t lo =
        lasso.two_sided() ? -static_cast<std::int64_t>(lcm_u64(lasso.past().size(), sys.cycle_lcm())) : 0;

    const std::size_t n = sys.size();
    std::vector<PointId> pos(n);
    std::vector<bool> alive(n, true);
    std::size_t count = n;
    ConstructResult result;

    auto sweep = [&](std::int64_t i) {
        const PointId target = lasso.at(i);
        for (PointId z = 0; z < n; ++z) {
            if (alive[z] && !(sys.distance(pos[z], target) < epsilon)) {
                alive[z] = false;
                --count;
            }
        }
        return count > 0;
    };

    for (PointId z = 0; z < n; ++z) pos[z] = z;
    for (std::int64_t i = 0; i < hi; ++i) {
        if (!sweep(i)) {
            result.failing_index = i;
            return result;
        }
        for (PointId z = 0; z < n; ++z) pos[z] = sys.image(pos[z]);
    }
    for (PointId z = 0; z < n; ++z) pos[z] = z;
    for (std::int64_t i = -1; i >= lo; --i) {
        for (PointId z = 0; z < n; ++z) pos[z] = sys.preimage(pos[z]);
        if (!sweep(i)) {
            result.failing_index = i;
            return result;
        }
    }

    PointId chosen = lasso.at(0);
    if (!alive[chosen]) {
        chosen = static_cast<PointId>(std::find(alive.begin(), alive.end(), true) - alive.begin());
    }
    ShadowCertificate cert{lasso, chosen, epsilon, 0, {}};
    const auto [wlo, whi] = synchronized_window(sys, chosen, lasso);
    cert.lo = wlo;
    for (auto i = wlo; i < whi; ++i) cert.witnesses.push_back(sys.distance(sys.iterate(chosen, i), lasso.at(i)));
    result.certificate = std::move(cert);
    return result;
}

bool verify_certificate(const FiniteSystem& sys, const ShadowCertificate& certificate) {
    const auto [lo, hi] = synchronized_window(sys, certificate.point, certificate.pseudo_orbit);
    if (lo != certificate.lo || certificate.witnesses.size() != static_cast<std::size_t>(hi - lo)) return false;
    for (auto i = lo; i < hi; ++i) {
        const auto d = sys.distance(sys.iterate(certificate.point, i), certificate.pseudo_orbit.at(i));
        const auto& w = certificate.witnesses[static_cast<std::size_t>(i - lo)];
        if (d != w || !(w < certificate.epsilon)) return false;
    }
    return shadows(sys, certificate.point, certificate.pseudo_orbit, certificate.epsilon);
}

// ---------------------------------------------------------------------------

namespace {

PeriodicShadowResult periodic_search(const FiniteSystem& sys, const Rational& delta, const Rational& epsilon,
                                     std::size_t bound, bool strong, const SearchOptions& options) {
    require_positive(delta, "delta");
    require_positive(epsilon, "epsilon");
    const auto graph = delta_graph(sys, delta);
    const auto balls = open_balls(sys, epsilon);
    const auto per = sys.periodic_points();
    const auto bad = detail::find_untraced_cycle({sys.map(), graph, balls}, per, bound, strong, options.subset_cap);
    PeriodicShadowResult result;
    result.states_explored = bad.states;
    result.bound_too_small = detail::may_have_long_cycle(graph, bound);
    if (bad.cycle) {
        result.holds = false;
        result.counterexample =
            Lasso::periodic(*bad.cycle, sys.invertible() ? Sidedness::two_sided : Sidedness::one_sided);
    }
    return result;
}

}  // namespace

PeriodicShadowResult periodic_shadowing_holds(const FiniteSystem& sys, const Rational& delta,
                                              const Rational& epsilon, std::size_t period_bound,
                                              const SearchOptions& options) {
    return periodic_search(sys, delta, epsilon, period_bound, false, options);
}

PeriodicShadowResult strong_periodic_shadowing_holds(const FiniteSystem& sys, const Rational& delta,
                                                     const Rational& epsilon, std::size_t period_bound,
                                                     const SearchOptions& options) {
    return periodic_search(sys, delta, epsilon, period_bound, true, options);
}

std::optional<Rational> periodic_shadowing_modulus(const FiniteSystem& sys, const Rational& epsilon,
                                                   std::size_t period_bound, bool strong,
                                                   const SearchOptions& options) {
    const auto candidates = threshold_grid(sys).candidates();
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        if (periodic_search(sys, *it, epsilon, period_bound, strong, options).holds) return *it;
    }
    return std::nullopt;
}

bool special_shadowing_holds(const FiniteSystem& sys, const Rational& delta, const Rational& epsilon,
                             std::size_t period_bound, const SearchOptions& options) {
    return shadowing_holds(sys, delta, epsilon, options).holds &&
           periodic_shadowing_holds(sys, delta, epsilon, period_bound, options).holds;
}

bool special_shadowing_holds(const FiniteSystem& sys, const Rational& epsilon, std::size_t period_bound,
                             const SearchOptions& options) {
    return shadowing_modulus(sys, epsilon, options).has_value() &&
           periodic_shadowing_modulus(sys, epsilon, period_bound, false, options).has_value();
}

// ---------------------------------------------------------------------------

namespace {

void require_exact_cycle(const FiniteSystem& sys, const std::vector<PointId>& cycle, const char* which) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (sys.image(cycle[i]) != cycle[(i + 1) % cycle.size()]) {
            throw NotDecaying(std::string(which) + " cycle is not an exact orbit segment");
        }
    }
}

}  // namespace

std::optional<PointId> limit_shadowing_check(const FiniteSystem& sys, const Lasso& decaying) {
    require_exact_cycle(sys, decaying.cycle(), "tail");
    const auto s = decaying.stem().size();
    // Once both have entered their cycles, agreeing at one index means agreeing forever.
    auto works = [&](PointId x) {
        const auto i = std::max(s, sys.preperiod(x));
        return sys.iterate(x, static_cast<std::int64_t>(i)) == decaying.at(static_cast<std::int64_t>(i));
    };
    if (works(decaying.at(0))) return decaying.at(0);
    for (PointId x = 0; x < sys.size(); ++x) {
        if (works(x)) return x;
    }
    return std::nullopt;
}

std::optional<PointId> two_sided_limit_shadowing_check(const FiniteSystem& sys, const Lasso& decaying) {
    if (!sys.invertible()) throw NotInvertible("two-sided limit shadowing needs an invertible system");
    if (!decaying.two_sided()) throw Error("two-sided limit shadowing needs a two-sided lasso");
    require_exact_cycle(sys, decaying.cycle(), "future");
    require_exact_cycle(sys, decaying.past(), "past");
    // A bijection's orbit is pinned by the future tail; the past must then match.
    const auto s = static_cast<std::int64_t>(decaying.stem().size());
    const PointId x = sys.iterate(decaying.at(s), -s);
    if (sys.preimage(x) != decaying.at(-1)) return std::nullopt;
    return x;
}

// ---------------------------------------------------------------------------

Rational effective_epsilon(const ThresholdGrid& grid, const Rational& bound) {
    const auto it = std::upper_bound(grid.values.begin(), grid.values.end(), bound);
    return it == grid.values.end() ? grid.sentinel : *it;
}

std::optional<LipschitzFit> lipschitz_constants(const FiniteSystem& sys, const SearchOptions& options) {
    const auto grid = threshold_grid(sys);
    std::vector<Rational> positives;
    for (const auto& v : grid.values) {
        if (v > 0) positives.push_back(v);
    }
    if (sys.size() == 1) return LipschitzFit{Rational(1), grid.sentinel};

    std::map<std::pair<Rational, Rational>, bool> cache;
    auto holds = [&](const Rational& delta, const Rational& epsilon) {
        const auto key = std::make_pair(delta, epsilon);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, shadowing_holds(sys, delta, epsilon, options).holds).first;
        return it->second;
    };

    // d in (v_{i-1}, v_i] sees the same pseudo orbits as delta = v_i and needs
    // epsilon just above L * v_{i-1}.
    auto feasible = [&](const Rational& L) {
        Rational lower = 0;
        for (const auto& v : positives) {
            if (!holds(v, effective_epsilon(grid, L * lower))) return false;
            lower = v;
        }
        return true;
    };

    std::set<Rational> ratios;
    auto numerators = positives;
    numerators.push_back(grid.sentinel);
    for (const auto& g : numerators) {
        for (const auto& v : positives) ratios.insert(g / v);
    }
    for (const auto& L : ratios) {
        if (feasible(L)) return LipschitzFit{L, positives.back()};
    }
    return std::nullopt;
}

std::string to_string(ModulusProperty property) {
    switch (property) {
        case ModulusProperty::shadowing: return "shadowing";
        case ModulusProperty::periodic: return "periodic";
        case ModulusProperty::strong_periodic: return "strong-periodic";
        case ModulusProperty::local_weak_spec: return "local-weak-spec";
        case ModulusProperty::local_spec: return "local-spec";
    }
    return "unknown";
}

ModulusTable shadowing_table(const FiniteSystem& sys, const SearchOptions& options) {
    ModulusTable table{ModulusProperty::shadowing, {}};
    for (const auto& eps : threshold_grid(sys).candidates()) {
        table.rows.push_back({eps, shadowing_modulus(sys, eps, options), 1});
    }
    return table;
}

ModulusTable periodic_table(const FiniteSystem& sys, std::size_t period_bound, bool strong,
                            const SearchOptions& options) {
    ModulusTable table{strong ? ModulusProperty::strong_periodic : ModulusProperty::periodic, {}};
    for (const auto& eps : threshold_grid(sys).candidates()) {
        table.rows.push_back({eps, periodic_shadowing_modulus(sys, eps, period_bound, strong, options), 1});
    }
    return table;
}

}  // namespace dynlab
