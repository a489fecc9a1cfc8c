#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dynlab/core.hpp"

namespace dynlab {

/// Adjacency lists over vertices 0..n-1.
using Digraph = std::vector<std::vector<PointId>>;

struct Components {
    std::vector<std::size_t> of;              // component index per vertex
    std::vector<std::vector<PointId>> members;  // each sorted ascending; ordered by smallest member
};

Components strongly_connected_components(const Digraph& graph);

/// True when the vertex set carries at least one cycle of the graph restricted to it.
bool has_internal_cycle(const Digraph& graph, std::span<const PointId> vertices);

/// The graph restricted to `vertices` (edges with both ends inside), reindexed
/// in the order of `vertices`.
Digraph induced_subgraph(const Digraph& graph, std::span<const PointId> vertices);

/// Period of a strongly connected graph: gcd of its cycle lengths.
std::size_t graph_period(const Digraph& strongly_connected);

/// Phase of each vertex modulo the period (vertex 0 has phase 0). Every edge
/// raises the phase by exactly one.
std::vector<std::size_t> phase_classes(const Digraph& strongly_connected, std::size_t period);

/// Graph whose edges are the walks of length exactly `power`.
Digraph graph_power(const Digraph& graph, std::size_t power);

/// Irreducible and aperiodic; equivalently some power of the adjacency matrix is positive.
bool is_primitive(const Digraph& graph);

/// Set of vertices reachable from `sources` (sources included).
PointSet reachable(const Digraph& graph, const PointSet& sources);

}  // namespace dynlab
