#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/graph.hpp"

namespace dynlab {

/// Limits for the candidate-subset explorations.
struct SearchOptions {
    std::size_t subset_cap = std::size_t{1} << 20;
};

/// Edges x -> y iff d(f(x), y) < delta. Walks are exactly the delta-pseudo orbits.
Digraph delta_graph(const FiniteSystem& sys, const Rational& delta);

/// A point whose orbit stays within epsilon of a lasso, with the distances
/// d(f^i x, x_i) over the synchronized window [lo, hi).
struct ShadowCertificate {
    Lasso pseudo_orbit;
    PointId point = 0;
    Rational epsilon;
    std::int64_t lo = 0;
    std::vector<Rational> witnesses;
};

struct ShadowResult {
    bool holds = true;
    /// On failure: a delta-pseudo orbit no point epsilon-shadows, and the index
    /// at which the last candidate dies.
    std::optional<Lasso> counterexample;
    std::size_t dies_at = 0;
    std::size_t states_explored = 0;
};

/// Every delta-pseudo orbit is epsilon-shadowed. On invertible systems the
/// counterexample is emitted two-sided (past = the backward orbit of x_0).
///
/// Decided over lassos only. That loses nothing: a pseudo orbit is a walk in
/// delta_graph, the set of points still shadowing its prefix evolves through
/// finitely many states, and a walk that empties it can be cut at a repeated
/// (vertex, set) pair and closed into a stem + cycle. For a bijection one- and
/// two-sided shadowing agree: prepend the true backward orbit of x_0 one way,
/// pigeonhole the shadows of the tails from x_{-n} the other.
ShadowResult shadowing_holds(const FiniteSystem& sys, const Rational& delta, const Rational& epsilon,
                             const SearchOptions& options = {});

/// Largest grid delta at which shadowing holds for this epsilon.
std::optional<Rational> shadowing_modulus(const FiniteSystem& sys, const Rational& epsilon,
                                          const SearchOptions& options = {});

struct ConstructResult {
    std::optional<ShadowCertificate> certificate;
    /// When no point shadows: the first index at which every candidate has left
    /// the epsilon-tube (negative indices refer to the past of a two-sided lasso).
    std::int64_t failing_index = 0;
};

/// Shadow point for a given lasso; prefers x_0 when it works, else the smallest point.
ConstructResult construct_shadow_point(const FiniteSystem& sys, const Lasso& lasso,
                                       const Rational& epsilon);

/// Re-evaluates a certificate against the system.
bool verify_certificate(const FiniteSystem& sys, const ShadowCertificate& certificate);

struct PeriodicShadowResult {
    bool holds = true;
    std::optional<Lasso> counterexample;  // a closed delta-walk, as a pure cycle
    /// The delta-graph may carry simple cycles longer than the bound.
    bool bound_too_small = false;
    std::size_t states_explored = 0;
};

/// Every periodic delta-pseudo orbit of period <= bound is epsilon-shadowed by
/// some periodic point.
PeriodicShadowResult periodic_shadowing_holds(const FiniteSystem& sys, const Rational& delta,
                                              const Rational& epsilon, std::size_t period_bound,
                                              const SearchOptions& options = {});

/// As above, but the shadowing point must satisfy f^N(x) = x for the declared
/// period N of the pseudo orbit.
PeriodicShadowResult strong_periodic_shadowing_holds(const FiniteSystem& sys, const Rational& delta,
                                                     const Rational& epsilon, std::size_t period_bound,
                                                     const SearchOptions& options = {});

std::optional<Rational> periodic_shadowing_modulus(const FiniteSystem& sys, const Rational& epsilon,
                                                   std::size_t period_bound, bool strong = false,
                                                   const SearchOptions& options = {});

/// Shadowing and periodic shadowing at the same (delta, epsilon).
bool special_shadowing_holds(const FiniteSystem& sys, const Rational& delta, const Rational& epsilon,
                             std::size_t period_bound, const SearchOptions& options = {});

/// Both moduli exist at epsilon. On a finite system this is always the case;
/// the per-delta form above is the informative one.
bool special_shadowing_holds(const FiniteSystem& sys, const Rational& epsilon,
                             std::size_t period_bound, const SearchOptions& options = {});

/// Finite-scale limit shadowing: the cycle part of the lasso must be an exact
/// orbit segment (NotDecaying otherwise). Returns a point whose orbit eventually
/// coincides with the tail; x_0 is preferred.
std::optional<PointId> limit_shadowing_check(const FiniteSystem& sys, const Lasso& decaying);

/// Two-sided version: both the past and the future cycles must be exact, and
/// the system invertible.
std::optional<PointId> two_sided_limit_shadowing_check(const FiniteSystem& sys, const Lasso& decaying);

struct LipschitzFit {
    Rational L;
    Rational d0;
};

/// Smallest L such that for every d <= d0, every d-pseudo orbit is
/// (L*d)-shadowed, with d0 the largest positive distance. Every finite system
/// admits such a pair, so the optional is only empty on a state explosion.
std::optional<LipschitzFit> lipschitz_constants(const FiniteSystem& sys, const SearchOptions& options = {});

/// For every positive grid value strictly below d0's interval, the epsilon that
/// the fit must achieve: the smallest grid value above L*v.
Rational effective_epsilon(const ThresholdGrid& grid, const Rational& bound);

enum class ModulusProperty { shadowing, periodic, strong_periodic, local_weak_spec, local_spec };

std::string to_string(ModulusProperty property);

/// One row per grid epsilon. `N` is only meaningful for the specification tags.
struct ModulusRow {
    Rational epsilon;
    std::optional<Rational> delta;
    std::size_t N = 1;
};

struct ModulusTable {
    ModulusProperty property = ModulusProperty::shadowing;
    std::vector<ModulusRow> rows;
};

ModulusTable shadowing_table(const FiniteSystem& sys, const SearchOptions& options = {});
ModulusTable periodic_table(const FiniteSystem& sys, std::size_t period_bound, bool strong,
                            const SearchOptions& options = {});

}  // namespace dynlab
