#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/graph.hpp"
#include "dynlab/symbolic.hpp"

namespace dynlab {

/// One-step dynamics as a graph: the attached successor relation when the
/// system has one (window systems), else the functional graph of f.
Digraph dynamics_graph(const FiniteSystem& sys);

/// x -> y iff some successor s of x has d(s, y) < delta.
Digraph chain_graph(const FiniteSystem& sys, const Rational& delta);

/// Points lying on a cycle of the graph.
PointSet on_cycles(const Digraph& graph);

struct ChainRecurrence {
    PointSet set;
    std::vector<std::pair<Rational, PointSet>> per_delta;  // grid delta -> points on a delta-chain cycle
};

ChainRecurrence chain_recurrent_set(const FiniteSystem& sys);

/// x is non-wandering iff for every grid epsilon some n >= 1 brings B(x, eps)
/// back into itself.
PointSet nonwandering_set(const FiniteSystem& sys);

/// Classes of mutual chain reachability (at every grid delta) inside CR,
/// each sorted, ordered by smallest member.
std::vector<std::vector<PointId>> basic_sets(const FiniteSystem& sys);

struct CyclicDecomposition {
    std::size_t period = 1;
    std::vector<std::vector<PointId>> parts;  // parts[0] holds the smallest point
};

/// Graph period of the dynamics restricted to B and its phase classes.
CyclicDecomposition cyclic_decomposition(const FiniteSystem& sys, const std::vector<PointId>& basic_set);

/// f^a restricted to the part is primitive. `basic_set` supplies the ambient
/// restricted dynamics.
bool is_mixing(const FiniteSystem& sys, const std::vector<PointId>& basic_set,
               const std::vector<PointId>& part, std::size_t a);

/// Some orbit inside the subset visits all of it (restricted relation:
/// strongly connected).
bool is_transitive(const FiniteSystem& sys, const std::vector<PointId>& subset);

/// A periodic orbit through p inside B: the f-cycle, or for relation systems
/// a shortest closed walk. Empty when none exists.
std::vector<PointId> periodic_orbit_in(const FiniteSystem& sys, const std::vector<PointId>& basic_set, PointId p);

/// closure(W^s(p) ∩ B): points of B with a forward path inside B that falls
/// into the orbit of p in phase.
PointSet cp_construction(const FiniteSystem& sys, const std::vector<PointId>& basic_set, PointId p);

/// Parts C_{f^i(p)} for i < M, M the smallest shift with C_{f^M p} = C_p.
CyclicDecomposition cp_partition(const FiniteSystem& sys, const std::vector<PointId>& basic_set);

struct HypothesisReport {
    bool homeomorphism = false;
    std::optional<Rational> sme_constant;    // largest passing grid delta
    std::optional<Rational> sme_fails_from;  // smallest failing grid delta
    bool shadowing_populated = false;        // shadowing modulus exists at every grid epsilon
    bool state_cap_hit = false;
    bool passes() const { return homeomorphism && sme_constant.has_value() && shadowing_populated; }
};

HypothesisReport diagnose_spectral_hypotheses(const FiniteSystem& sys);

struct BasicSet {
    std::vector<PointId> points;
    CyclicDecomposition cyclic;
    std::vector<bool> mixing;
    bool transitive = false;
};

struct Decomposition {
    std::string provenance;  // "scc-oracle" or "cp-construction"
    std::vector<BasicSet> basic_sets;
    PointSet nonwandering;
};

/// Basic sets, cyclic parts and mixing flags from the graph-period oracle.
Decomposition spectral_decomposition(const FiniteSystem& sys);

/// Same basic sets, cyclic parts from the C_p construction.
Decomposition spectral_decomposition_cp(const FiniteSystem& sys);

/// Re-verifies every invariant of a decomposition independently; returns the
/// violations found (empty when all hold).
std::vector<std::string> verify_decomposition(const FiniteSystem& sys, const Decomposition& decomposition);

/// The two decompositions induce the same partition with the same periods.
bool same_partition(const Decomposition& a, const Decomposition& b);

/// Vertex-shift decomposition: irreducible components carrying a cycle, with
/// their periods and cyclic classes.
struct SftDecomposition {
    std::vector<std::vector<Symbol>> components;
    std::vector<CyclicDecomposition> cyclic;
    std::vector<std::vector<bool>> mixing;  // per component, per cyclic class
};

SftDecomposition spectral_decomposition(const Sft& sft);

}  // namespace dynlab
