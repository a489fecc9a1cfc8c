#include "dynlab/expansive.hpp"

#include <algorithm>

#include "dynlab/errors.hpp"

namespace dynlab {

namespace {

/// max of d(f^i x, f^i y) for i in [lo, hi).
Rational window_sup(const FiniteSystem& sys, PointId x, PointId y, std::int64_t lo, std::int64_t hi) {
    Rational worst = 0;
    PointId a = x, b = y;
    for (std::int64_t i = 0; i < hi; ++i) {
        worst = std::max(worst, sys.distance(a, b));
        a = sys.image(a);
        b = sys.image(b);
    }
    a = x;
    b = y;
    for (std::int64_t i = -1; i >= lo; --i) {
        a = sys.preimage(a);
        b = sys.preimage(b);
        worst = std::max(worst, sys.distance(a, b));
    }
    return worst;
}

std::int64_t forward_window(const FiniteSystem& sys) {
    return static_cast<std::int64_t>(sys.max_preperiod() + sys.cycle_lcm());
}

PointSet below(const std::vector<Rational>& row, const Rational& bound) {
    PointSet out(row.size());
    for (std::size_t y = 0; y < row.size(); ++y) {
        if (row[y] <= bound) out.set(y);
    }
    return out;
}

std::optional<Rational> largest_passing(const FiniteSystem& sys, auto&& passes) {
    const auto candidates = threshold_grid(sys).candidates();
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        if (passes(*it)) return *it;
    }
    return std::nullopt;
}

}  // namespace

DistanceMatrix orbit_gap_matrix(const FiniteSystem& sys) {
    const auto n = sys.size();
    const auto hi = forward_window(sys);
    const std::int64_t lo = sys.invertible() ? -static_cast<std::int64_t>(sys.cycle_lcm()) : 0;
    DistanceMatrix gaps(n, std::vector<Rational>(n, Rational(0)));
    for (PointId x = 0; x < n; ++x) {
        for (PointId y = x + 1; y < n; ++y) gaps[x][y] = gaps[y][x] = window_sup(sys, x, y, lo, hi);
    }
    return gaps;
}

GammaSet gamma_set(const FiniteSystem& sys, PointId x, const Rational& delta) {
    const auto hi = forward_window(sys);
    const std::int64_t lo = sys.invertible() ? -static_cast<std::int64_t>(sys.cycle_lcm()) : 0;
    GammaSet out;
    out.center = x;
    out.delta = delta;
    for (PointId y = 0; y < sys.size(); ++y) out.witnesses.push_back(window_sup(sys, x, y, lo, hi));
    out.members = below(out.witnesses, delta);
    return out;
}

bool is_n_expansive(const FiniteSystem& sys, std::size_t n, const Rational& delta) {
    const auto gaps = orbit_gap_matrix(sys);
    for (const auto& row : gaps) {
        if (below(row, delta).count() > n) return false;
    }
    return true;
}

std::optional<Rational> n_expansive_constant(const FiniteSystem& sys, std::size_t n) {
    const auto gaps = orbit_gap_matrix(sys);
    return largest_passing(sys, [&](const Rational& delta) {
        return std::all_of(gaps.begin(), gaps.end(), [&](const auto& row) { return below(row, delta).count() <= n; });
    });
}

std::vector<InvariantMeasure> enumerate_ergodic_measures(const FiniteSystem& sys) {
    std::vector<InvariantMeasure> out;
    for (const auto& cycle : sys.cycles()) {
        InvariantMeasure mu;
        mu.weights.assign(sys.size(), Rational(0));
        for (const auto p : cycle) mu.weights[p] = Rational(1, static_cast<std::int64_t>(cycle.size()));
        mu.ergodic = true;
        out.push_back(std::move(mu));
    }
    return out;
}

bool is_invariant(const FiniteSystem& sys, const InvariantMeasure& measure) {
    if (measure.weights.size() != sys.size()) return false;
    Rational total = 0;
    std::vector<Rational> pushed(sys.size(), Rational(0));
    for (PointId x = 0; x < sys.size(); ++x) {
        if (measure.weights[x] < 0) return false;
        total += measure.weights[x];
        pushed[sys.image(x)] += measure.weights[x];
    }
    return total == 1 && pushed == measure.weights;
}

bool satisfies_strong_measure_condition(const FiniteSystem& sys, const Rational& delta,
                                        const InvariantMeasure& measure) {
    const auto gaps = orbit_gap_matrix(sys);
    for (PointId x = 0; x < sys.size(); ++x) {
        Rational mass = 0;
        for (PointId y = 0; y < sys.size(); ++y) {
            if (gaps[x][y] <= delta) mass += measure.weights[y];
        }
        if (mass != measure.weights[x]) return false;
    }
    return true;
}

bool strong_measure_pair_ok(const FiniteSystem& sys, const Rational& delta, PointId x, std::size_t cycle) {
    const auto gamma = gamma_set(sys, x, delta);
    std::size_t inside = 0;
    bool has_x = false;
    for (const auto p : sys.cycles().at(cycle)) {
        if (gamma.members.test(p)) ++inside;
        has_x = has_x || p == x;
    }
    return inside == (has_x ? 1u : 0u);
}

StrongMeasureResult strong_measure_expansive_holds(const FiniteSystem& sys, const Rational& delta) {
    const auto gaps = orbit_gap_matrix(sys);
    const auto& cycles = sys.cycles();
    for (PointId x = 0; x < sys.size(); ++x) {
        for (std::size_t c = 0; c < cycles.size(); ++c) {
            std::size_t inside = 0;
            bool has_x = false;
            for (const auto p : cycles[c]) {
                if (gaps[x][p] <= delta) ++inside;
                has_x = has_x || p == x;
            }
            if (inside != (has_x ? 1u : 0u)) {
                StrongMeasureResult result;
                result.holds = false;
                result.point = x;
                result.cycle = c;
                result.measure = enumerate_ergodic_measures(sys)[c];
                return result;
            }
        }
    }
    return {};
}

std::optional<Rational> strong_measure_expansive_constant(const FiniteSystem& sys) {
    return largest_passing(sys, [&](const Rational& delta) { return strong_measure_expansive_holds(sys, delta).holds; });
}

MeasureExpansiveResult measure_expansive_holds(const FiniteSystem&, const Rational& delta) {
    if (delta <= 0) throw Error("delta must be positive");
    return {true, true};
}

std::optional<std::pair<PointId, PointId>> expansive_on_per_violation(const FiniteSystem& sys,
                                                                     const Rational& delta) {
    const auto gaps = orbit_gap_matrix(sys);
    const auto per = sys.periodic_points();
    for (const auto x : per) {
        for (const auto y : per) {
            if (x != y && gaps[x][y] <= delta) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

bool expansive_on_per(const FiniteSystem& sys, const Rational& delta) {
    return !expansive_on_per_violation(sys, delta).has_value();
}

PointSet local_stable_set(const FiniteSystem& sys, PointId x, const Rational& epsilon) {
    const auto hi = forward_window(sys);
    std::vector<Rational> row;
    for (PointId y = 0; y < sys.size(); ++y) row.push_back(window_sup(sys, x, y, 0, hi));
    return below(row, epsilon);
}

PointSet local_unstable_set(const FiniteSystem& sys, PointId x, const Rational& epsilon) {
    if (!sys.invertible()) throw NotInvertible("unstable sets need an invertible system");
    const auto lo = -static_cast<std::int64_t>(sys.cycle_lcm());
    std::vector<Rational> row;
    for (PointId y = 0; y < sys.size(); ++y) row.push_back(window_sup(sys, x, y, lo, 1));
    return below(row, epsilon);
}

PointSet global_stable_set(const FiniteSystem& sys, PointId x) {
    // Orbits that ever meet have met by the largest preperiod.
    const auto k = static_cast<std::int64_t>(sys.max_preperiod());
    const auto target = sys.iterate(x, k);
    PointSet out(sys.size());
    for (PointId y = 0; y < sys.size(); ++y) {
        if (sys.iterate(y, k) == target) out.set(y);
    }
    return out;
}

PointSet global_unstable_set(const FiniteSystem& sys, PointId x) {
    if (!sys.invertible()) throw NotInvertible("unstable sets need an invertible system");
    PointSet out(sys.size());
    out.set(x);
    return out;
}

StableSets stable_sets(const FiniteSystem& sys, PointId x, const Rational& epsilon) {
    StableSets out;
    out.center = x;
    out.epsilon = epsilon;
    out.local_stable = local_stable_set(sys, x, epsilon);
    out.global_stable = global_stable_set(sys, x);
    if (sys.invertible()) {
        out.local_unstable = local_unstable_set(sys, x, epsilon);
        out.global_unstable = global_unstable_set(sys, x);
    }
    return out;
}

std::optional<std::pair<PointId, PointId>> stableset_violation(const FiniteSystem& sys, const Rational& epsilon) {
    for (const auto p : sys.periodic_points()) {
        const auto sets = stable_sets(sys, p, epsilon);
        auto escape = sets.local_stable - sets.global_stable;
        if (sets.local_unstable) escape |= *sets.local_unstable - *sets.global_unstable;
        if (const auto y = escape.find_first(); y != PointSet::npos) {
            return std::make_pair(p, static_cast<PointId>(y));
        }
    }
    return std::nullopt;
}

bool theorem_stableset_check(const FiniteSystem& sys, const Rational& epsilon) {
    return !stableset_violation(sys, epsilon).has_value();
}

}  // namespace dynlab
