#include "dynlab/recurrence.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "dynlab/errors.hpp"
#include "dynlab/expansive.hpp"
#include "dynlab/shadowing.hpp"

namespace dynlab {

namespace {

PointSet as_set(std::size_t n, const std::vector<PointId>& points) {
    PointSet out(n);
    for (const auto p : points) out.set(p);
    return out;
}

std::vector<PointId> as_list(const PointSet& set) {
    std::vector<PointId> out;
    for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) out.push_back(static_cast<PointId>(i));
    return out;
}

/// Successors inside `inside`.
PointSet restricted_step(const Digraph& dyn, const PointSet& from, const PointSet& inside) {
    PointSet out(dyn.size());
    for (auto i = from.find_first(); i != PointSet::npos; i = from.find_next(i)) {
        for (const auto s : dyn[i]) {
            if (inside.test(s)) out.set(s);
        }
    }
    return out;
}

CyclicDecomposition cyclic_of(const Digraph& graph, const std::vector<PointId>& vertices) {
    CyclicDecomposition out;
    if (vertices.empty()) return out;
    const auto local = induced_subgraph(graph, vertices);
    out.period = graph_period(local);
    const auto phase = phase_classes(local, out.period);
    out.parts.assign(out.period, {});
    for (std::size_t i = 0; i < vertices.size(); ++i) out.parts[phase[i]].push_back(vertices[i]);
    return out;
}

bool mixing_of(const Digraph& graph, const std::vector<PointId>& vertices, const std::vector<PointId>& part,
               std::size_t a) {
    const auto local = induced_subgraph(graph, vertices);
    std::vector<PointId> local_part;
    for (const auto p : part) {
        const auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
        if (it == vertices.end() || *it != p) return false;
        local_part.push_back(static_cast<PointId>(it - vertices.begin()));
    }
    std::sort(local_part.begin(), local_part.end());
    return is_primitive(induced_subgraph(graph_power(local, a), local_part));
}

/// Points of B from which some walk inside B of length t lands on orbit[t mod m].
PointSet cp_with_orbit(const FiniteSystem& sys, const std::vector<PointId>& basic_set,
                       const std::vector<PointId>& orbit) {
    PointSet out(sys.size());
    if (orbit.empty()) return out;
    const auto local = induced_subgraph(dynamics_graph(sys), basic_set);
    const auto n = basic_set.size();
    const auto m = orbit.size();
    std::vector<std::vector<PointId>> reverse(n);
    for (PointId u = 0; u < n; ++u) {
        for (const auto v : local[u]) reverse[v].push_back(u);
    }
    auto local_index = [&](PointId p) {
        return static_cast<std::size_t>(std::lower_bound(basic_set.begin(), basic_set.end(), p) - basic_set.begin());
    };
    // Backward search over (vertex, time mod m).
    std::vector<char> seen(n * m, 0);
    std::deque<std::size_t> queue;
    for (std::size_t r = 0; r < m; ++r) {
        const auto state = local_index(orbit[r]) * m + r;
        if (!seen[state]) {
            seen[state] = 1;
            queue.push_back(state);
        }
    }
    while (!queue.empty()) {
        const auto state = queue.front();
        queue.pop_front();
        const auto v = state / m;
        const auto t = state % m;
        const auto prev_t = (t + m - 1) % m;
        for (const auto u : reverse[v]) {
            const auto prev = u * m + prev_t;
            if (!seen[prev]) {
                seen[prev] = 1;
                queue.push_back(prev);
            }
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (seen[u * m]) out.set(basic_set[u]);
    }
    return out;
}

std::vector<BasicSet> describe(const FiniteSystem& sys, bool use_cp) {
    const auto dyn = dynamics_graph(sys);
    std::vector<BasicSet> out;
    for (auto& points : basic_sets(sys)) {
        BasicSet b;
        b.points = std::move(points);
        b.cyclic = use_cp ? cp_partition(sys, b.points) : cyclic_of(dyn, b.points);
        for (const auto& part : b.cyclic.parts) b.mixing.push_back(mixing_of(dyn, b.points, part, b.cyclic.period));
        b.transitive = is_transitive(sys, b.points);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<std::vector<PointId>> sorted_parts(const CyclicDecomposition& c) {
    auto parts = c.parts;
    std::sort(parts.begin(), parts.end());
    return parts;
}

}  // namespace

Digraph dynamics_graph(const FiniteSystem& sys) {
    Digraph out(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) out[x] = sys.successors(x);
    return out;
}

Digraph chain_graph(const FiniteSystem& sys, const Rational& delta) {
    Digraph out(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        PointSet targets(sys.size());
        for (const auto s : sys.successors(x)) targets |= sys.ball(s, delta);
        out[x] = as_list(targets);
    }
    return out;
}

PointSet on_cycles(const Digraph& graph) {
    const auto comps = strongly_connected_components(graph);
    PointSet out(graph.size());
    for (const auto& members : comps.members) {
        if (has_internal_cycle(graph, members)) {
            for (const auto p : members) out.set(p);
        }
    }
    return out;
}

ChainRecurrence chain_recurrent_set(const FiniteSystem& sys) {
    ChainRecurrence out;
    out.set = PointSet(sys.size());
    out.set.set();
    for (const auto& delta : threshold_grid(sys).candidates()) {
        auto level = on_cycles(chain_graph(sys, delta));
        out.set &= level;
        out.per_delta.emplace_back(delta, std::move(level));
    }
    return out;
}

PointSet nonwandering_set(const FiniteSystem& sys) {
    const auto dyn = dynamics_graph(sys);
    PointSet out(sys.size());
    out.set();
    for (const auto& eps : threshold_grid(sys).candidates()) {
        for (PointId x = 0; x < sys.size(); ++x) {
            if (!out.test(x)) continue;
            const auto ball = sys.ball(x, eps);
            PointSet first(sys.size());
            for (auto b = ball.find_first(); b != PointSet::npos; b = ball.find_next(b)) {
                for (const auto s : dyn[b]) first.set(s);
            }
            // Union over n >= 1 of the n-step images of the ball.
            if (!reachable(dyn, first).intersects(ball)) out.reset(x);
        }
    }
    return out;
}

std::vector<std::vector<PointId>> basic_sets(const FiniteSystem& sys) {
    const auto cr = chain_recurrent_set(sys);
    std::vector<Components> levels;
    for (const auto& [delta, level] : cr.per_delta) levels.push_back(strongly_connected_components(chain_graph(sys, delta)));
    std::map<std::vector<std::size_t>, std::vector<PointId>> classes;
    for (const auto x : as_list(cr.set)) {
        std::vector<std::size_t> key;
        for (const auto& comps : levels) key.push_back(comps.of[x]);
        classes[key].push_back(x);
    }
    std::vector<std::vector<PointId>> out;
    for (auto& [key, members] : classes) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

CyclicDecomposition cyclic_decomposition(const FiniteSystem& sys, const std::vector<PointId>& basic_set) {
    return cyclic_of(dynamics_graph(sys), basic_set);
}

bool is_mixing(const FiniteSystem& sys, const std::vector<PointId>& basic_set, const std::vector<PointId>& part,
               std::size_t a) {
    return mixing_of(dynamics_graph(sys), basic_set, part, a);
}

bool is_transitive(const FiniteSystem& sys, const std::vector<PointId>& subset) {
    if (subset.empty()) return false;
    if (sys.has_relation()) {
        return strongly_connected_components(induced_subgraph(dynamics_graph(sys), subset)).members.size() == 1;
    }
    const auto target = as_set(sys.size(), subset);
    const auto steps = sys.max_preperiod() + sys.cycle_lcm();
    for (const auto x : subset) {
        PointSet seen(sys.size());
        PointId y = x;
        for (std::size_t i = 0; i <= steps; ++i) {
            seen.set(y);
            y = sys.image(y);
        }
        if (target.is_subset_of(seen)) return true;
    }
    return false;
}

std::vector<PointId> periodic_orbit_in(const FiniteSystem& sys, const std::vector<PointId>& basic_set, PointId p) {
    const auto inside = as_set(sys.size(), basic_set);
    if (p >= sys.size() || !inside.test(p)) return {};
    if (!sys.has_relation()) {
        if (!sys.is_periodic(p)) return {};
        std::vector<PointId> orbit{p};
        for (auto y = sys.image(p); y != p; y = sys.image(y)) orbit.push_back(y);
        for (const auto y : orbit) {
            if (!inside.test(y)) return {};
        }
        return orbit;
    }
    // Shortest closed walk through p inside B.
    const auto dyn = dynamics_graph(sys);
    std::vector<std::int64_t> parent(sys.size(), -1);
    std::deque<PointId> queue;
    for (const auto s : dyn[p]) {
        if (!inside.test(s)) continue;
        if (s == p) return {p};
        if (parent[s] < 0) {
            parent[s] = p;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (const auto v : dyn[u]) {
            if (!inside.test(v)) continue;
            if (v == p) {
                std::vector<PointId> walk;
                for (auto w = u; w != p; w = static_cast<PointId>(parent[w])) walk.push_back(w);
                walk.push_back(p);
                std::reverse(walk.begin(), walk.end());
                return walk;
            }
            if (parent[v] < 0) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    return {};
}

PointSet cp_construction(const FiniteSystem& sys, const std::vector<PointId>& basic_set, PointId p) {
    return cp_with_orbit(sys, basic_set, periodic_orbit_in(sys, basic_set, p));
}

CyclicDecomposition cp_partition(const FiniteSystem& sys, const std::vector<PointId>& basic_set) {
    CyclicDecomposition out;
    if (basic_set.empty()) return out;
    auto orbit = periodic_orbit_in(sys, basic_set, basic_set.front());
    if (orbit.empty()) {
        out.parts.push_back(basic_set);
        return out;
    }
    const auto first = cp_with_orbit(sys, basic_set, orbit);
    out.parts.push_back(as_list(first));
    for (std::size_t shift = 1; shift <= orbit.size(); ++shift) {
        std::rotate(orbit.begin(), orbit.begin() + 1, orbit.end());
        const auto next = cp_with_orbit(sys, basic_set, orbit);
        if (next == first) break;
        out.parts.push_back(as_list(next));
    }
    out.period = out.parts.size();
    return out;
}

HypothesisReport diagnose_spectral_hypotheses(const FiniteSystem& sys) {
    HypothesisReport report;
    // Window systems stand in for the shift, which is a homeomorphism.
    report.homeomorphism = sys.invertible() || sys.has_relation();
    report.sme_constant = strong_measure_expansive_constant(sys);
    for (const auto& delta : threshold_grid(sys).candidates()) {
        if (!strong_measure_expansive_holds(sys, delta).holds) {
            report.sme_fails_from = delta;
            break;
        }
    }
    report.shadowing_populated = true;
    try {
        for (const auto& eps : threshold_grid(sys).candidates()) {
            if (!shadowing_modulus(sys, eps).has_value()) {
                report.shadowing_populated = false;
                break;
            }
        }
    } catch (const StateExplosion&) {
        report.shadowing_populated = false;
        report.state_cap_hit = true;
    }
    return report;
}

Decomposition spectral_decomposition(const FiniteSystem& sys) {
    return {"scc-oracle", describe(sys, false), nonwandering_set(sys)};
}

Decomposition spectral_decomposition_cp(const FiniteSystem& sys) {
    return {"cp-construction", describe(sys, true), nonwandering_set(sys)};
}

std::vector<std::string> verify_decomposition(const FiniteSystem& sys, const Decomposition& decomposition) {
    std::vector<std::string> issues;
    const auto n = sys.size();
    const auto dyn = dynamics_graph(sys);
    PointSet covered(n);
    for (std::size_t i = 0; i < decomposition.basic_sets.size(); ++i) {
        const auto& b = decomposition.basic_sets[i];
        const auto tag = "basic set " + std::to_string(i) + ": ";
        const auto inside = as_set(n, b.points);
        if (covered.intersects(inside)) issues.push_back(tag + "overlaps an earlier basic set");
        covered |= inside;

        const auto forward = restricted_step(dyn, inside, inside);
        if (!sys.has_relation()) {
            if (sys.image(inside) != inside) issues.push_back(tag + "not invariant");
        } else {
            PointSet has_succ(n);
            for (const auto p : b.points) {
                if (restricted_step(dyn, as_set(n, {p}), inside).any()) has_succ.set(p);
            }
            if (has_succ != inside || forward != inside) issues.push_back(tag + "restricted dynamics not onto");
        }
        if (!is_transitive(sys, b.points)) issues.push_back(tag + "not transitive");

        const auto a = b.cyclic.period;
        if (a == 0 || b.cyclic.parts.size() != a) {
            issues.push_back(tag + "part count differs from period");
            continue;
        }
        PointSet parts_union(n);
        for (const auto& part : b.cyclic.parts) {
            const auto s = as_set(n, part);
            if (parts_union.intersects(s)) issues.push_back(tag + "parts overlap");
            parts_union |= s;
        }
        if (parts_union != inside) issues.push_back(tag + "parts do not cover the basic set");
        for (std::size_t k = 0; k < a; ++k) {
            const auto part = as_set(n, b.cyclic.parts[k]);
            const auto next = as_set(n, b.cyclic.parts[(k + 1) % a]);
            if (restricted_step(dyn, part, inside) != next) {
                issues.push_back(tag + "part " + std::to_string(k) + " does not map onto the next part");
            }
            auto back = part;
            for (std::size_t j = 0; j < a; ++j) back = restricted_step(dyn, back, inside);
            if (back != part) issues.push_back(tag + "part " + std::to_string(k) + " not returned by f^a");
            if (!mixing_of(dyn, b.points, b.cyclic.parts[k], a)) {
                issues.push_back(tag + "part " + std::to_string(k) + " not mixing under f^a");
            }
        }
    }
    if (covered != nonwandering_set(sys)) issues.push_back("basic sets do not cover the non-wandering set");
    return issues;
}

bool same_partition(const Decomposition& a, const Decomposition& b) {
    if (a.basic_sets.size() != b.basic_sets.size()) return false;
    for (std::size_t i = 0; i < a.basic_sets.size(); ++i) {
        const auto& x = a.basic_sets[i];
        const auto& y = b.basic_sets[i];
        if (x.points != y.points || x.cyclic.period != y.cyclic.period) return false;
        if (sorted_parts(x.cyclic) != sorted_parts(y.cyclic)) return false;
    }
    return true;
}

SftDecomposition spectral_decomposition(const Sft& sft) {
    SftDecomposition out;
    const auto& graph = sft.graph();
    for (const auto& members : strongly_connected_components(graph).members) {
        if (!has_internal_cycle(graph, members)) continue;
        auto cyclic = cyclic_of(graph, members);
        std::vector<bool> flags;
        for (const auto& part : cyclic.parts) flags.push_back(mixing_of(graph, members, part, cyclic.period));
        out.components.push_back(members);
        out.cyclic.push_back(std::move(cyclic));
        out.mixing.push_back(std::move(flags));
    }
    return out;
}

}  // namespace dynlab
