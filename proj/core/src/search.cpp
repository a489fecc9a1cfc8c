#include "search.hpp"

#include <algorithm>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "dynlab/errors.hpp"

namespace dynlab::detail {

namespace {

PointSet push_forward(std::span<const PointId> step, const PointSet& set) {
    PointSet out(set.size());
    for (auto x = set.find_first(); x != PointSet::npos; x = set.find_next(x)) out.set(step[x]);
    return out;
}

struct StateKey {
    PointId v;
    std::size_t i;
    PointSet set;
    bool operator==(const StateKey&) const = default;
};

struct StateHash {
    std::size_t operator()(const StateKey& key) const {
        std::size_t seed = boost::hash_value(key.set);
        boost::hash_combine(seed, key.v);
        boost::hash_combine(seed, key.i);
        return seed;
    }
};

}  // namespace

DeadWalk find_dead_walk(const WalkProblem& problem, std::size_t cap) {
    struct Node {
        PointId v;
        PointSet positions;
        std::size_t parent;
    };
    constexpr auto kRoot = static_cast<std::size_t>(-1);
    std::vector<Node> nodes;
    std::unordered_set<StateKey, StateHash> seen;
    DeadWalk out;

    auto trace_back = [&](std::size_t at, PointId last) {
        std::vector<PointId> walk{last};
        for (; at != kRoot; at = nodes[at].parent) walk.push_back(nodes[at].v);
        std::reverse(walk.begin(), walk.end());
        return walk;
    };
    auto add = [&](PointId v, PointSet set, std::size_t parent, std::size_t head) {
        StateKey key{v, 0, std::move(set)};
        if (seen.contains(key)) return;
        if (nodes.size() >= cap) {
            throw StateExplosion("candidate-subset exploration exceeded its cap", nodes.size(),
                                 nodes.size() - head);
        }
        nodes.push_back({v, key.set, parent});
        seen.insert(std::move(key));
    };

    const auto n = static_cast<PointId>(problem.step.size());
    for (PointId x = 0; x < n; ++x) {
        if (problem.tubes[x].none()) {
            out.walk = std::vector<PointId>{x};
            return out;
        }
    }
    for (PointId x = 0; x < n; ++x) add(x, problem.tubes[x], kRoot, 0);

    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const PointSet moved = push_forward(problem.step, nodes[head].positions);
        for (const auto y : problem.graph[nodes[head].v]) {
            PointSet next = moved & problem.tubes[y];
            if (next.none()) {
                out.walk = trace_back(head, y);
                out.states = nodes.size();
                return out;
            }
            add(y, std::move(next), head, head);
        }
    }
    out.states = nodes.size();
    return out;
}

BadCycle find_untraced_cycle(const WalkProblem& problem, std::span<const PointId> periodic,
                             std::size_t bound, bool strong, std::size_t cap) {
    if (bound == 0) throw Error("period bound must be at least 1");
    const std::size_t n = problem.step.size();
    const std::size_t m = periodic.size();
    std::vector<std::size_t> index(n, m);
    for (std::size_t k = 0; k < m; ++k) index[periodic[k]] = k;

    // orbit[k][i] = g^i of the k-th periodic candidate.
    std::vector<std::vector<PointId>> orbit(m);
    for (std::size_t k = 0; k < m; ++k) {
        PointId z = periodic[k];
        for (std::size_t i = 0; i <= bound; ++i) {
            orbit[k].push_back(z);
            z = problem.step[z];
        }
    }
    auto tube = [&](std::size_t i, PointId v) {
        PointSet s(m);
        for (std::size_t k = 0; k < m; ++k) {
            if (problem.tubes[v].test(orbit[k][i])) s.set(k);
        }
        return s;
    };
    auto power = [&](PointId z, std::size_t length) {
        for (std::size_t i = 0; i < length; ++i) z = problem.step[z];
        return z;
    };
    auto closes = [&](const PointSet& survivors, std::size_t length) {
        for (auto k = survivors.find_first(); k != PointSet::npos; k = survivors.find_next(k)) {
            if (strong) {
                if (orbit[k][length] == periodic[k]) return true;
                continue;
            }
            // The candidate traces forever iff each g^{jL} image traces the first L steps.
            bool all = true;
            for (PointId z = orbit[k][length]; z != periodic[k]; z = power(z, length)) {
                if (index[z] == m || !survivors.test(index[z])) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };
    auto edge = [&](PointId a, PointId b) {
        const auto& succ = problem.graph[a];
        return std::binary_search(succ.begin(), succ.end(), b);
    };

    BadCycle out;
    std::vector<PointId> path;
    std::unordered_set<StateKey, StateHash> safe;
    for (std::size_t length = 1; length <= bound; ++length) {
        for (PointId x0 = 0; x0 < n; ++x0) {
            safe.clear();
            auto dfs = [&](auto&& self, PointId v, std::size_t i, const PointSet& s) -> bool {
                StateKey key{v, i, s};
                if (safe.contains(key)) return true;
                if (++out.states > cap) {
                    throw StateExplosion("periodic candidate search exceeded its cap", out.states, safe.size());
                }
                path.push_back(v);
                if (i + 1 == length) {
                    if (edge(v, x0) && !closes(s, length)) return false;
                } else {
                    for (const auto y : problem.graph[v]) {
                        if (!self(self, y, i + 1, s & tube(i + 1, y))) return false;
                    }
                }
                path.pop_back();
                safe.insert(std::move(key));
                return true;
            };
            if (!dfs(dfs, x0, 0, tube(0, x0))) {
                out.cycle = path;
                return out;
            }
        }
    }
    return out;
}

bool may_have_long_cycle(const Digraph& graph, std::size_t bound) {
    const auto comps = strongly_connected_components(graph);
    std::size_t budget = 200000;
    std::vector<bool> inside(graph.size(), false), on_path(graph.size(), false);
    for (const auto& members : comps.members) {
        if (members.size() <= bound) continue;
        std::fill(inside.begin(), inside.end(), false);
        for (const auto v : members) inside[v] = true;
        for (const auto start : members) {
            bool found = false;
            auto dfs = [&](auto&& self, PointId v, std::size_t length) -> void {
                if (found || budget == 0) return;
                --budget;
                on_path[v] = true;
                for (const auto w : graph[v]) {
                    if (!inside[w] || w < start) continue;
                    if (w == start && length > bound) {
                        found = true;
                        break;
                    }
                    if (!on_path[w]) self(self, w, length + 1);
                    if (found || budget == 0) break;
                }
                on_path[v] = false;
            };
            dfs(dfs, start, 1);
            if (found || budget == 0) return true;
        }
    }
    return false;
}

}  // namespace dynlab::detail
