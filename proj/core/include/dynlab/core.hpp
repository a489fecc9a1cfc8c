#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "dynlab/rational.hpp"

namespace dynlab {

using PointId = std::uint32_t;
using PointSet = boost::dynamic_bitset<>;
using DistanceMatrix = std::vector<std::vector<Rational>>;

/// Successor lists, one per point. Used for the multi-valued dynamics of
/// window systems, where the map is one selected successor.
using Relation = std::vector<std::vector<PointId>>;

/// A finite metric space with a self-map. Immutable once built.
///
/// Orbit structure (pre-period, eventual cycle) is computed at construction,
/// so iterates of any order are O(size) at worst.
class FiniteSystem {
public:
    /// Validates the metric axioms and the map. `invertible_hint`, when set to
    /// true, demands a bijection (NotABijection otherwise); when false, the
    /// system is treated as non-invertible (T = N) even if the map is a bijection.
    static FiniteSystem build(std::vector<std::string> points, DistanceMatrix dist,
                              std::vector<PointId> map,
                              std::optional<bool> invertible_hint = std::nullopt);

    /// Same system with an explicit successor relation. The map must select a
    /// successor of every point.
    FiniteSystem with_relation(Relation successors, std::string origin) const;

    std::size_t size() const { return names_.size(); }
    const std::string& name(PointId x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }
    const DistanceMatrix& dist() const { return dist_; }
    const Rational& distance(PointId a, PointId b) const { return dist_[a][b]; }
    const std::vector<PointId>& map() const { return map_; }
    PointId image(PointId x) const { return map_[x]; }
    bool invertible() const { return invertible_; }

    /// f^{-1}(x). Throws NotInvertible on non-invertible systems.
    PointId preimage(PointId x) const;

    /// f^k(x); negative k requires an invertible system.
    PointId iterate(PointId x, std::int64_t k) const;

    std::size_t preperiod(PointId x) const { return preperiod_[x]; }
    /// Length of the cycle the orbit of x eventually enters.
    std::size_t period(PointId x) const { return cycles_[cycle_index_[x]].size(); }
    bool is_periodic(PointId x) const { return preperiod_[x] == 0; }
    std::size_t cycle_index(PointId x) const { return cycle_index_[x]; }
    /// Cycles of the map, each listed in orbit order starting at its smallest point.
    const std::vector<std::vector<PointId>>& cycles() const { return cycles_; }
    std::vector<PointId> periodic_points() const;

    std::size_t max_preperiod() const { return max_preperiod_; }
    /// lcm of all cycle lengths: f^{n + cycle_lcm} = f^n for n >= max_preperiod.
    std::uint64_t cycle_lcm() const { return cycle_lcm_; }

    bool has_relation() const { return relation_ != nullptr; }
    const std::string& origin() const { return origin_; }
    /// Relation successors when present (sorted, no repeats), otherwise {f(x)}.
    std::vector<PointId> successors(PointId x) const;
    const Relation* relation() const { return relation_.get(); }

    /// Open ball {y : d(x,y) < radius}.
    PointSet ball(PointId x, const Rational& radius) const;
    /// Closed ball {y : d(x,y) <= radius}.
    PointSet closed_ball(PointId x, const Rational& radius) const;
    /// Image of a set under f.
    PointSet image(const PointSet& set) const;

    std::optional<Rational> min_positive_distance() const;
    Rational diameter() const;

private:
    FiniteSystem() = default;
    void compute_orbits();

    std::vector<std::string> names_;
    DistanceMatrix dist_;
    std::vector<PointId> map_;
    std::vector<PointId> inverse_;
    bool invertible_ = false;

    std::vector<std::size_t> preperiod_;
    std::vector<std::size_t> cycle_index_;
    std::vector<std::vector<PointId>> cycles_;
    std::size_t max_preperiod_ = 0;
    std::uint64_t cycle_lcm_ = 1;

    std::shared_ptr<const Relation> relation_;
    std::string origin_;
};

enum class Sidedness { one_sided, two_sided };

/// Eventually periodic sequence indexed by N (one-sided) or Z (two-sided).
///
/// One-sided: stem, then cycle repeated forever.
/// Two-sided: the past cycle repeated into the past (x_{-1} is its last entry),
/// then the stem, then the cycle forever. The past cycle defaults to the cycle.
class Lasso {
public:
    static Lasso one_sided(std::vector<PointId> stem, std::vector<PointId> cycle);
    static Lasso two_sided(std::vector<PointId> stem, std::vector<PointId> cycle,
                           std::optional<std::vector<PointId>> past = std::nullopt);
    static Lasso periodic(std::vector<PointId> cycle, Sidedness side = Sidedness::one_sided);

    PointId at(std::int64_t i) const;
    /// Entries at indices [from, to).
    std::vector<PointId> unroll(std::int64_t from, std::int64_t to) const;

    const std::vector<PointId>& stem() const { return stem_; }
    const std::vector<PointId>& cycle() const { return cycle_; }
    const std::vector<PointId>& past() const { return past_.empty() ? cycle_ : past_; }
    Sidedness sidedness() const { return side_; }
    bool two_sided() const { return side_ == Sidedness::two_sided; }
    bool has_distinct_past() const { return !past_.empty(); }
    /// Empty stem and (two-sided) the past equal to the cycle.
    bool is_pure_cycle() const;

    /// Every ordered pair (x_i, x_{i+1}) that occurs, each listed once per
    /// position class: stem steps, the seams, and cycle steps with wrap-around.
    std::vector<std::pair<PointId, PointId>> transitions() const;

    friend bool operator==(const Lasso&, const Lasso&) = default;

private:
    std::vector<PointId> stem_;
    std::vector<PointId> cycle_;
    std::vector<PointId> past_;
    Sidedness side_ = Sidedness::one_sided;
};

/// The true orbit of x as a lasso. Two-sided orbits need an invertible system.
Lasso orbit_lasso(const FiniteSystem& sys, PointId x, Sidedness side = Sidedness::one_sided);

/// The distinct distance values of a system plus 0 and a value strictly below
/// the smallest positive distance. Any predicate of the form d < t or d <= t
/// over the distance matrix is constant between consecutive values.
struct ThresholdGrid {
    std::vector<Rational> values;  // ascending, starts with 0
    Rational sub_minimal;          // below every positive distance
    Rational sentinel;             // above every distance

    /// Positive representatives, one per interval of constancy: sub_minimal,
    /// every positive distance, then the sentinel (when distinct).
    std::vector<Rational> candidates() const;
};

ThresholdGrid threshold_grid(const FiniteSystem& sys);

/// d(f(x_i), x_{i+1}) < delta for every i.
bool is_pseudo_orbit(const FiniteSystem& sys, const Lasso& lasso, const Rational& delta);

/// Largest one-step error max_i d(f(x_i), x_{i+1}).
Rational max_step_error(const FiniteSystem& sys, const Lasso& lasso);

/// Cycle length when the lasso is a pure cycle and a delta-pseudo orbit.
std::optional<std::size_t> is_periodic_pseudo_orbit(const FiniteSystem& sys, const Lasso& lasso,
                                                    const Rational& delta);

/// d(f^i(x), lasso[i]) < epsilon for every i in T. Throws NotInvertible for a
/// two-sided lasso on a non-invertible system.
bool shadows(const FiniteSystem& sys, PointId x, const Lasso& lasso, const Rational& epsilon);

/// Index range [lo, hi) beyond which the comparison of the orbit of x with the
/// lasso repeats; used by `shadows` and by certificate emission.
std::pair<std::int64_t, std::int64_t> synchronized_window(const FiniteSystem& sys, PointId x,
                                                          const Lasso& lasso);

}  // namespace dynlab
