#include "dynlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dynlab {

Components strongly_connected_components(const Digraph& graph) {
    // Iterative Tarjan.
    const std::size_t n = graph.size();
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<PointId> stack;
    std::vector<std::vector<PointId>> found;
    std::size_t counter = 0;

    struct Frame {
        PointId v;
        std::size_t edge;
    };
    std::vector<Frame> call;
    for (PointId root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& frame = call.back();
            const PointId v = frame.v;
            if (frame.edge < graph[v].size()) {
                const PointId w = graph[v][frame.edge++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<PointId> members;
                PointId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    members.push_back(w);
                } while (w != v);
                std::sort(members.begin(), members.end());
                found.push_back(std::move(members));
            }
            call.pop_back();
            if (!call.empty()) {
                const PointId parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    Components out;
    out.of.assign(n, 0);
    for (std::size_t c = 0; c < found.size(); ++c) {
        for (const auto v : found[c]) out.of[v] = c;
    }
    out.members = std::move(found);
    return out;
}

bool has_internal_cycle(const Digraph& graph, std::span<const PointId> vertices) {
    const auto sub = induced_subgraph(graph, vertices);
    const auto comps = strongly_connected_components(sub);
    for (const auto& members : comps.members) {
        if (members.size() > 1) return true;
        const auto v = members.front();
        if (std::find(sub[v].begin(), sub[v].end(), v) != sub[v].end()) return true;
    }
    return false;
}

Digraph induced_subgraph(const Digraph& graph, std::span<const PointId> vertices) {
    std::vector<std::size_t> local(graph.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
    Digraph sub(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (const auto w : graph[vertices[i]]) {
            if (local[w] != static_cast<std::size_t>(-1)) sub[i].push_back(static_cast<PointId>(local[w]));
        }
        std::sort(sub[i].begin(), sub[i].end());
    }
    return sub;
}

namespace {

std::vector<std::size_t> bfs_levels(const Digraph& graph) {
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(graph.size(), kUnset);
    if (graph.empty()) return level;
    std::deque<PointId> queue{0};
    level[0] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto w : graph[v]) {
            if (level[w] == kUnset) {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return level;
}

}  // namespace

std::size_t graph_period(const Digraph& graph) {
    // gcd over edges (u,v) of level(u) + 1 - level(v).
    const auto level = bfs_levels(graph);
    std::size_t g = 0;
    for (std::size_t u = 0; u < graph.size(); ++u) {
        for (const auto v : graph[u]) {
            const auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
            g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
        }
    }
    return g;
}

std::vector<std::size_t> phase_classes(const Digraph& graph, std::size_t period) {
    auto level = bfs_levels(graph);
    for (auto& l : level) l %= period;
    return level;
}

Digraph graph_power(const Digraph& graph, std::size_t power) {
    const std::size_t n = graph.size();
    Digraph out(n);
    for (PointId v = 0; v < n; ++v) {
        PointSet frontier(n);
        frontier.set(v);
        for (std::size_t step = 0; step < power; ++step) {
            PointSet next(n);
            for (auto u = frontier.find_first(); u != PointSet::npos; u = frontier.find_next(u)) {
                for (const auto w : graph[u]) next.set(w);
            }
            frontier = std::move(next);
        }
        for (auto u = frontier.find_first(); u != PointSet::npos; u = frontier.find_next(u)) {
            out[v].push_back(static_cast<PointId>(u));
        }
    }
    return out;
}

bool is_primitive(const Digraph& graph) {
    if (graph.empty()) return false;
    const auto comps = strongly_connected_components(graph);
    if (comps.members.size() != 1) return false;
    if (graph.size() == 1) return !graph[0].empty();
    return graph_period(graph) == 1;
}

PointSet reachable(const Digraph& graph, const PointSet& sources) {
    PointSet seen = sources;
    std::deque<PointId> queue;
    for (auto v = sources.find_first(); v != PointSet::npos; v = sources.find_next(v)) {
        queue.push_back(static_cast<PointId>(v));
    }
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto w : graph[v]) {
            if (!seen.test(w)) {
                seen.set(w);
                queue.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace dynlab
