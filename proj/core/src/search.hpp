#pragma once

// Candidate-set engines shared by the shadowing and specification checks.
//
// Both work on a "step" map g (f itself, or f^n for chains with gap n), a
// graph whose walks are the admissible pseudo orbits or segment chains, and a
// tube per point: the positions c at the start of a step that stay close to
// that point for the whole step.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/graph.hpp"

namespace dynlab::detail {

struct WalkProblem {
    std::span<const PointId> step;
    const Digraph& graph;
    std::span<const PointSet> tubes;
};

struct DeadWalk {
    std::optional<std::vector<PointId>> walk;  // the empty set is reached after its last point
    std::size_t states = 0;
};

/// Breadth-first subset construction over (point, surviving positions). The
/// first walk that kills every candidate is the shortest, and among those the
/// lexicographically smallest.
DeadWalk find_dead_walk(const WalkProblem& problem, std::size_t cap);

struct BadCycle {
    std::optional<std::vector<PointId>> cycle;
    std::size_t states = 0;
};

/// Closed walks of length 1..bound (closing edge included in the graph) that no
/// periodic candidate traces. `strong` requires g^length(z) = z; otherwise the
/// candidate only has to be periodic. Shortest, then lexicographically first.
BadCycle find_untraced_cycle(const WalkProblem& problem, std::span<const PointId> periodic,
                             std::size_t bound, bool strong, std::size_t cap);

/// True when the graph may contain a simple cycle longer than `bound`. Exact
/// unless the search budget runs out, in which case the answer is true.
bool may_have_long_cycle(const Digraph& graph, std::size_t bound);

}  // namespace dynlab::detail
