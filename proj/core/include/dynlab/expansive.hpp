#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dynlab/core.hpp"

namespace dynlab {

/// sup over i in T of d(f^i x, f^i y) for every pair; T = Z on invertible
/// systems, N otherwise. Exact: the pair orbit repeats within the window
/// [-lcm, lcm) resp. [0, preperiod + lcm).
DistanceMatrix orbit_gap_matrix(const FiniteSystem& sys);

/// Gamma_delta(x) = {y : d(f^i x, f^i y) <= delta for all i in T}.
struct GammaSet {
    PointId center = 0;
    Rational delta;
    PointSet members;
    /// Per point: the sup of its orbit distances to the center (membership iff <= delta).
    std::vector<Rational> witnesses;
};

GammaSet gamma_set(const FiniteSystem& sys, PointId x, const Rational& delta);

/// Every Gamma_delta(x) has at most n points.
bool is_n_expansive(const FiniteSystem& sys, std::size_t n, const Rational& delta);

/// Largest grid delta at which the system is n-expansive.
std::optional<Rational> n_expansive_constant(const FiniteSystem& sys, std::size_t n);

struct InvariantMeasure {
    std::vector<Rational> weights;
    bool ergodic = false;
};

/// The uniform measure on each cycle, in cycle order. Every invariant measure
/// of a finite system is a convex combination of these.
std::vector<InvariantMeasure> enumerate_ergodic_measures(const FiniteSystem& sys);

/// Weights sum to 1, are non-negative, and the pushforward equals the measure.
bool is_invariant(const FiniteSystem& sys, const InvariantMeasure& measure);

/// mu(Gamma_delta(x)) = mu({x}) for every x, evaluated directly.
bool satisfies_strong_measure_condition(const FiniteSystem& sys, const Rational& delta,
                                        const InvariantMeasure& measure);

struct StrongMeasureResult {
    bool holds = true;
    std::optional<PointId> point;
    std::optional<std::size_t> cycle;       // index into sys.cycles()
    std::optional<InvariantMeasure> measure;  // uniform on that cycle
};

/// Reduced to counting: for every x and every cycle O, |Gamma ∩ O| = |{x} ∩ O|.
StrongMeasureResult strong_measure_expansive_holds(const FiniteSystem& sys, const Rational& delta);

/// Same test for one pair (x, cycle).
bool strong_measure_pair_ok(const FiniteSystem& sys, const Rational& delta, PointId x, std::size_t cycle);

std::optional<Rational> strong_measure_expansive_constant(const FiniteSystem& sys);

struct MeasureExpansiveResult {
    bool holds = true;
    bool vacuous = true;
};

/// A finite system carries no non-atomic invariant measure.
MeasureExpansiveResult measure_expansive_holds(const FiniteSystem& sys, const Rational& delta);

/// No two distinct periodic points lie in each other's Gamma_delta. On failure
/// returns the first offending pair.
std::optional<std::pair<PointId, PointId>> expansive_on_per_violation(const FiniteSystem& sys,
                                                                     const Rational& delta);
bool expansive_on_per(const FiniteSystem& sys, const Rational& delta);

struct StableSets {
    PointId center = 0;
    Rational epsilon;
    PointSet local_stable;
    PointSet global_stable;
    std::optional<PointSet> local_unstable;   // invertible systems only
    std::optional<PointSet> global_unstable;  // invertible systems only
};

/// Global sets are exact: orbits that eventually coincide.
StableSets stable_sets(const FiniteSystem& sys, PointId x, const Rational& epsilon);

PointSet local_stable_set(const FiniteSystem& sys, PointId x, const Rational& epsilon);
/// Throws NotInvertible on non-invertible systems.
PointSet local_unstable_set(const FiniteSystem& sys, PointId x, const Rational& epsilon);
PointSet global_stable_set(const FiniteSystem& sys, PointId x);
/// Throws NotInvertible on non-invertible systems.
PointSet global_unstable_set(const FiniteSystem& sys, PointId x);

/// Local stable (and, when invertible, unstable) sets of periodic points are
/// contained in the global ones. Returns the first (p, y) that escapes.
std::optional<std::pair<PointId, PointId>> stableset_violation(const FiniteSystem& sys, const Rational& epsilon);
bool theorem_stableset_check(const FiniteSystem& sys, const Rational& epsilon);

}  // namespace dynlab
