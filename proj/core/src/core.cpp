#include "dynlab/core.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "dynlab/errors.hpp"

namespace dynlab {

FiniteSystem FiniteSystem::build(std::vector<std::string> points, DistanceMatrix dist,
                                 std::vector<PointId> map, std::optional<bool> invertible_hint) {
    const std::size_t n = points.size();
    if (n == 0) throw Error("a system needs at least one point");
    if (dist.size() != n) throw Error("distance matrix has " + std::to_string(dist.size()) +
                                      " rows for " + std::to_string(n) + " points");
    for (const auto& row : dist) {
        if (row.size() != n) throw Error("distance matrix is not square");
    }
    if (map.size() != n) throw Error("map has " + std::to_string(map.size()) + " entries for " +
                                     std::to_string(n) + " points");
    for (const auto y : map) {
        if (y >= n) throw Error("map target " + std::to_string(y) + " out of range");
    }

    for (std::size_t a = 0; a < n; ++a) {
        if (dist[a][a] != 0) throw MetricViolation("d(x,x) must be 0", a, a, a);
        for (std::size_t b = 0; b < n; ++b) {
            if (dist[a][b] < 0) throw MetricViolation("negative distance", a, b, b);
            if (dist[a][b] != dist[b][a]) throw MetricViolation("distance is not symmetric", a, b, b);
            if (a != b && dist[a][b] == 0) throw MetricViolation("distinct points at distance 0", a, b, b);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (dist[a][b] > dist[a][c] + dist[c][b]) {
                    throw MetricViolation("triangle inequality fails: d(" + points[a] + "," + points[b] +
                                              ") > d(" + points[a] + "," + points[c] + ") + d(" +
                                              points[c] + "," + points[b] + ")",
                                          a, b, c);
                }
            }
        }
    }

    std::vector<PointId> inverse(n, static_cast<PointId>(n));
    bool bijective = true;
    for (std::size_t x = 0; x < n; ++x) {
        if (inverse[map[x]] != n) bijective = false;
        inverse[map[x]] = static_cast<PointId>(x);
    }
    if (invertible_hint.value_or(false) && !bijective) {
        throw NotABijection("map is not injective but the system was declared invertible");
    }

    FiniteSystem sys;
    sys.names_ = std::move(points);
    sys.dist_ = std::move(dist);
    sys.map_ = std::move(map);
    sys.invertible_ = bijective && invertible_hint.value_or(true);
    if (sys.invertible_) sys.inverse_ = std::move(inverse);
    sys.compute_orbits();
    // A bijection of a finite set has every point periodic.
    assert(!sys.invertible_ || sys.max_preperiod_ == 0);
    return sys;
}

void FiniteSystem::compute_orbits() {
    const std::size_t n = size();
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    preperiod_.assign(n, kUnset);
    cycle_index_.assign(n, kUnset);
    cycles_.clear();

    // 0 = unvisited, 1 = on the current path, 2 = resolved
    std::vector<std::uint8_t> state(n, 0);
    std::vector<PointId> path;
    for (PointId start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        path.clear();
        PointId x = start;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = map_[x];
        }
        std::size_t resolved_from = path.size();
        if (state[x] == 1) {
            const auto it = std::find(path.begin(), path.end(), x);
            std::vector<PointId> cycle(it, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            const std::size_t index = cycles_.size();
            for (const auto y : cycle) {
                preperiod_[y] = 0;
                cycle_index_[y] = index;
                state[y] = 2;
            }
            cycles_.push_back(std::move(cycle));
            resolved_from = static_cast<std::size_t>(it - path.begin());
        }
        for (std::size_t i = resolved_from; i-- > 0;) {
            const PointId y = path[i];
            preperiod_[y] = preperiod_[map_[y]] + 1;
            cycle_index_[y] = cycle_index_[map_[y]];
            state[y] = 2;
        }
    }

    // Order cycles by their smallest point so indices do not depend on discovery order.
    std::vector<std::size_t> order(cycles_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cycles_[a].front() < cycles_[b].front(); });
    std::vector<std::size_t> rank(order.size());
    std::vector<std::vector<PointId>> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
        sorted.push_back(std::move(cycles_[order[i]]));
    }
    cycles_ = std::move(sorted);
    for (auto& c : cycle_index_) c = rank[c];

    max_preperiod_ = *std::max_element(preperiod_.begin(), preperiod_.end());
    cycle_lcm_ = 1;
    for (const auto& cycle : cycles_) cycle_lcm_ = lcm_u64(cycle_lcm_, cycle.size());
}

FiniteSystem FiniteSystem::with_relation(Relation successors, std::string origin) const {
    if (successors.size() != size()) throw Error("relation size does not match the system");
    for (std::size_t x = 0; x < size(); ++x) {
        auto& succ = successors[x];
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        for (const auto y : succ) {
            if (y >= size()) throw Error("relation target out of range");
        }
        if (!std::binary_search(succ.begin(), succ.end(), map_[x])) {
            throw Error("map does not select a successor of point " + names_[x]);
        }
    }
    FiniteSystem copy = *this;
    copy.relation_ = std::make_shared<const Relation>(std::move(successors));
    copy.origin_ = std::move(origin);
    return copy;
}

PointId FiniteSystem::preimage(PointId x) const {
    if (!invertible_) throw NotInvertible("preimage requested on a non-invertible system");
    return inverse_[x];
}

PointId FiniteSystem::iterate(PointId x, std::int64_t k) const {
    if (k < 0) {
        if (!invertible_) throw NotInvertible("negative iterate on a non-invertible system");
        const auto p = static_cast<std::int64_t>(period(x));
        k = ((k % p) + p) % p;
    }
    auto steps = static_cast<std::uint64_t>(k);
    const std::uint64_t pre = preperiod_[x];
    if (steps > pre) steps = pre + (steps - pre) % period(x);
    for (std::uint64_t i = 0; i < steps; ++i) x = map_[x];
    return x;
}

std::vector<PointId> FiniteSystem::periodic_points() const {
    std::vector<PointId> out;
    for (PointId x = 0; x < size(); ++x) {
        if (is_periodic(x)) out.push_back(x);
    }
    return out;
}

std::vector<PointId> FiniteSystem::successors(PointId x) const {
    if (relation_) return (*relation_)[x];
    return {map_[x]};
}

PointSet FiniteSystem::ball(PointId x, const Rational& radius) const {
    PointSet out(size());
    for (std::size_t y = 0; y < size(); ++y) {
        if (dist_[x][y] < radius) out.set(y);
    }
    return out;
}

PointSet FiniteSystem::closed_ball(PointId x, const Rational& radius) const {
    PointSet out(size());
    for (std::size_t y = 0; y < size(); ++y) {
        if (dist_[x][y] <= radius) out.set(y);
    }
    return out;
}

PointSet FiniteSystem::image(const PointSet& set) const {
    PointSet out(size());
    for (auto y = set.find_first(); y != PointSet::npos; y = set.find_next(y)) out.set(map_[y]);
    return out;
}

std::optional<Rational> FiniteSystem::min_positive_distance() const {
    std::optional<Rational> best;
    for (const auto& row : dist_) {
        for (const auto& d : row) {
            if (d > 0 && (!best || d < *best)) best = d;
        }
    }
    return best;
}

Rational FiniteSystem::diameter() const {
    Rational best = 0;
    for (const auto& row : dist_) {
        for (const auto& d : row) best = std::max(best, d);
    }
    return best;
}

// ---------------------------------------------------------------------------

Lasso Lasso::one_sided(std::vector<PointId> stem, std::vector<PointId> cycle) {
    if (cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
    Lasso l;
    l.stem_ = std::move(stem);
    l.cycle_ = std::move(cycle);
    l.side_ = Sidedness::one_sided;
    return l;
}

Lasso Lasso::two_sided(std::vector<PointId> stem, std::vector<PointId> cycle,
                       std::optional<std::vector<PointId>> past) {
    if (cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
    if (past && past->empty()) throw std::invalid_argument("lasso past cycle must be non-empty");
    Lasso l;
    l.stem_ = std::move(stem);
    l.cycle_ = std::move(cycle);
    if (past && *past != l.cycle_) l.past_ = std::move(*past);
    l.side_ = Sidedness::two_sided;
    return l;
}

Lasso Lasso::periodic(std::vector<PointId> cycle, Sidedness side) {
    return side == Sidedness::one_sided ? one_sided({}, std::move(cycle))
                                        : two_sided({}, std::move(cycle));
}

bool Lasso::is_pure_cycle() const { return stem_.empty() && past_.empty(); }

PointId Lasso::at(std::int64_t i) const {
    if (i < 0) {
        if (side_ == Sidedness::one_sided) throw std::out_of_range("negative index on a one-sided lasso");
        const auto& p = past();
        const auto len = static_cast<std::int64_t>(p.size());
        return p[static_cast<std::size_t>(((i % len) + len) % len)];
    }
    const auto s = static_cast<std::int64_t>(stem_.size());
    if (i < s) return stem_[static_cast<std::size_t>(i)];
    return cycle_[static_cast<std::size_t>((i - s) % static_cast<std::int64_t>(cycle_.size()))];
}

std::vector<PointId> Lasso::unroll(std::int64_t from, std::int64_t to) const {
    std::vector<PointId> out;
    for (auto i = from; i < to; ++i) out.push_back(at(i));
    return out;
}

std::vector<std::pair<PointId, PointId>> Lasso::transitions() const {
    std::vector<std::pair<PointId, PointId>> out;
    for (std::size_t i = 0; i + 1 < stem_.size(); ++i) out.emplace_back(stem_[i], stem_[i + 1]);
    if (!stem_.empty()) out.emplace_back(stem_.back(), cycle_.front());
    for (std::size_t i = 0; i < cycle_.size(); ++i) {
        out.emplace_back(cycle_[i], cycle_[(i + 1) % cycle_.size()]);
    }
    if (side_ == Sidedness::two_sided) {
        const auto& p = past();
        if (!past_.empty()) {
            for (std::size_t i = 0; i < p.size(); ++i) out.emplace_back(p[i], p[(i + 1) % p.size()]);
        }
        if (!stem_.empty() || !past_.empty()) {
            out.emplace_back(p.back(), stem_.empty() ? cycle_.front() : stem_.front());
        }
    }
    return out;
}

Lasso orbit_lasso(const FiniteSystem& sys, PointId x, Sidedness side) {
    if (side == Sidedness::two_sided && !sys.invertible()) {
        throw NotInvertible("two-sided orbit on a non-invertible system");
    }
    std::vector<PointId> stem;
    const auto pre = sys.preperiod(x);
    for (std::size_t i = 0; i < pre; ++i) {
        stem.push_back(x);
        x = sys.image(x);
    }
    std::vector<PointId> cycle;
    const auto per = sys.period(x);
    for (std::size_t i = 0; i < per; ++i) {
        cycle.push_back(x);
        x = sys.image(x);
    }
    return side == Sidedness::one_sided ? Lasso::one_sided(std::move(stem), std::move(cycle))
                                        : Lasso::two_sided(std::move(stem), std::move(cycle));
}

// ---------------------------------------------------------------------------

std::vector<Rational> ThresholdGrid::candidates() const {
    std::vector<Rational> out;
    for (const auto& v : values) {
        if (v > 0) out.push_back(v);
    }
    if (out.empty() || sentinel > out.back()) out.push_back(sentinel);
    return out;
}

ThresholdGrid threshold_grid(const FiniteSystem& sys) {
    std::set<Rational> distinct;
    for (const auto& row : sys.dist()) distinct.insert(row.begin(), row.end());
    ThresholdGrid grid;
    const auto min_positive = sys.min_positive_distance();
    grid.sub_minimal = min_positive ? *min_positive / 2 : Rational(1);
    grid.sentinel = min_positive ? sys.diameter() * 2 : grid.sub_minimal;
    distinct.insert(grid.sub_minimal);
    distinct.insert(Rational(0));
    grid.values.assign(distinct.begin(), distinct.end());
    return grid;
}

bool is_pseudo_orbit(const FiniteSystem& sys, const Lasso& lasso, const Rational& delta) {
    for (const auto& [a, b] : lasso.transitions()) {
        if (!(sys.distance(sys.image(a), b) < delta)) return false;
    }
    return true;
}

Rational max_step_error(const FiniteSystem& sys, const Lasso& lasso) {
    Rational worst = 0;
    for (const auto& [a, b] : lasso.transitions()) worst = std::max(worst, sys.distance(sys.image(a), b));
    return worst;
}

std::optional<std::size_t> is_periodic_pseudo_orbit(const FiniteSystem& sys, const Lasso& lasso,
                                                    const Rational& delta) {
    if (!lasso.is_pure_cycle()) return std::nullopt;
    if (!is_pseudo_orbit(sys, lasso, delta)) return std::nullopt;
    return lasso.cycle().size();
}

std::pair<std::int64_t, std::int64_t> synchronized_window(const FiniteSystem& sys, PointId x,
                                                          const Lasso& lasso) {
    const auto hi = std::max(lasso.stem().size(), sys.preperiod(x)) +
                    lcm_u64(lasso.cycle().size(), sys.period(x));
    std::int64_t lo = 0;
    if (lasso.two_sided()) lo = -static_cast<std::int64_t>(lcm_u64(lasso.past().size(), sys.period(x)));
    return {lo, static_cast<std::int64_t>(hi)};
}

bool shadows(const FiniteSystem& sys, PointId x, const Lasso& lasso, const Rational& epsilon) {
    if (lasso.two_sided() && !sys.invertible()) {
        throw NotInvertible("two-sided lasso on a non-invertible system");
    }
    const auto [lo, hi] = synchronized_window(sys, x, lasso);
    PointId y = x;
    for (std::int64_t i = 0; i < hi; ++i) {
        if (!(sys.distance(y, lasso.at(i)) < epsilon)) return false;
        y = sys.image(y);
    }
    y = x;
    for (std::int64_t i = -1; i >= lo; --i) {
        y = sys.preimage(y);
        if (!(sys.distance(y, lasso.at(i)) < epsilon)) return false;
    }
    return true;
}

}  // namespace dynlab
