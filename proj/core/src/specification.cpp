#include "dynlab/specification.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dynlab/errors.hpp"
#include "search.hpp"

namespace dynlab {

namespace {

void require_positive(const Rational& value, const char* what) {
    if (value <= 0) throw Error(std::string(what) + " must be positive");
}

/// Step map f^n, gluing graph and tracing tubes for every gap n in [1, last],
/// built incrementally so each gap costs one extra iterate.
class GapSweep {
public:
    GapSweep(const FiniteSystem& sys, const Rational& epsilon, const Rational& delta)
        : sys_(sys), epsilon_(epsilon), delta_(delta), step_(sys.size()), tubes_(sys.size()),
          head_(sys.size()) {
        const auto n = sys.size();
        for (PointId x = 0; x < n; ++x) {
            step_[x] = x;
            head_[x] = x;
            tubes_[x] = PointSet(n);
            tubes_[x].set();
        }
    }

    /// Advances to the next gap.
    void advance() {
        const auto n = sys_.size();
        // Narrow the tubes by the comparison at time `gap_` (positions f^gap).
        for (PointId y = 0; y < n; ++y) {
            const auto& row = sys_.dist()[head_[y]];
            for (auto c = tubes_[y].find_first(); c != PointSet::npos; c = tubes_[y].find_next(c)) {
                if (!(row[head_[c]] < epsilon_)) tubes_[y].reset(c);
            }
        }
        for (PointId x = 0; x < n; ++x) {
            head_[x] = sys_.image(head_[x]);
            step_[x] = head_[x];
        }
        ++gap_;
        graph_.assign(n, {});
        for (PointId s = 0; s < n; ++s) {
            const auto& row = sys_.dist()[step_[s]];
            for (PointId y = 0; y < n; ++y) {
                if (row[y] < delta_) graph_[s].push_back(y);
            }
        }
    }

    std::size_t gap() const { return gap_; }
    detail::WalkProblem problem() const { return {step_, graph_, tubes_}; }
    const Digraph& graph() const { return graph_; }

private:
    const FiniteSystem& sys_;
    Rational epsilon_;
    Rational delta_;
    std::vector<PointId> step_;
    std::vector<PointSet> tubes_;
    std::vector<PointId> head_;
    Digraph graph_;
    std::size_t gap_ = 0;
};

}  // namespace

std::size_t gap_bound(const FiniteSystem& sys, std::size_t N) {
    const auto L = static_cast<std::size_t>(sys.cycle_lcm());
    return std::max(N, sys.max_preperiod() + L) + L - 1;
}

bool is_admissible(const FiniteSystem& sys, const SpecInstance& instance) {
    if (instance.sources.empty() || instance.n < instance.N || instance.n == 0) return false;
    const auto n = static_cast<std::int64_t>(instance.n);
    const auto k = instance.sources.size();
    for (std::size_t i = 0; i + 1 < k + (instance.closed ? 1 : 0); ++i) {
        const auto from = sys.iterate(instance.sources[i], n);
        if (!(sys.distance(from, instance.sources[(i + 1) % k]) < instance.delta)) return false;
    }
    return true;
}

namespace {

std::optional<SpecCertificate> certify(const FiniteSystem& sys, const SpecInstance& instance, PointId x) {
    SpecCertificate cert;
    cert.tracer = x;
    PointId pos = x;
    for (const auto source : instance.sources) {
        PointId target = source;
        for (std::size_t j = 0; j < instance.n; ++j) {
            const auto& d = sys.distance(pos, target);
            if (!(d < instance.epsilon)) return std::nullopt;
            cert.witnesses.push_back(d);
            pos = sys.image(pos);
            target = sys.image(target);
        }
    }
    cert.periodic = pos == x;
    if (instance.closed && !cert.periodic) return std::nullopt;
    return cert;
}

}  // namespace

std::optional<SpecCertificate> trace_chain(const FiniteSystem& sys, const SpecInstance& instance) {
    if (instance.sources.empty()) throw Error("a chain needs at least one segment");
    if (auto cert = certify(sys, instance, instance.sources.front())) return cert;
    for (PointId x = 0; x < sys.size(); ++x) {
        if (auto cert = certify(sys, instance, x)) return cert;
    }
    return std::nullopt;
}

bool verify_spec_certificate(const FiniteSystem& sys, const SpecInstance& instance,
                             const SpecCertificate& certificate) {
    const auto again = certify(sys, instance, certificate.tracer);
    return again && again->witnesses == certificate.witnesses && again->periodic == certificate.periodic;
}

SpecResult local_weak_spec_holds(const FiniteSystem& sys, const Rational& epsilon, std::size_t N,
                                 const Rational& delta, const SearchOptions& options) {
    require_positive(epsilon, "epsilon");
    require_positive(delta, "delta");
    if (N == 0) throw Error("N must be at least 1");
    SpecResult result;
    result.gap_bound = gap_bound(sys, N);
    GapSweep sweep(sys, epsilon, delta);
    while (sweep.gap() < result.gap_bound) {
        sweep.advance();
        if (sweep.gap() < N) continue;
        const auto dead = detail::find_dead_walk(sweep.problem(), options.subset_cap);
        result.states_explored += dead.states;
        if (dead.walk) {
            result.holds = false;
            result.failing_gap = sweep.gap();
            result.failing_chain = *dead.walk;
            return result;
        }
    }
    return result;
}

SpecResult local_spec_holds(const FiniteSystem& sys, const Rational& epsilon, std::size_t N,
                            const Rational& delta, std::size_t k_bound, std::optional<std::size_t> gap_cap,
                            const SearchOptions& options) {
    require_positive(epsilon, "epsilon");
    require_positive(delta, "delta");
    if (N == 0) throw Error("N must be at least 1");
    SpecResult result;
    result.gap_bound = gap_bound(sys, N);
    if (gap_cap) result.gap_bound = std::min(result.gap_bound, std::max(*gap_cap, N));
    const auto per = sys.periodic_points();
    GapSweep sweep(sys, epsilon, delta);
    while (sweep.gap() < result.gap_bound) {
        sweep.advance();
        if (sweep.gap() < N) continue;
        const auto bad = detail::find_untraced_cycle(sweep.problem(), per, k_bound, true, options.subset_cap);
        result.states_explored += bad.states;
        result.bound_too_small = result.bound_too_small || detail::may_have_long_cycle(sweep.graph(), k_bound);
        if (bad.cycle) {
            result.holds = false;
            result.failing_gap = sweep.gap();
            result.failing_chain = *bad.cycle;
            return result;
        }
    }
    return result;
}

Rational continuity_modulus(const FiniteSystem& sys, std::size_t N, const Rational& bound) {
    Rational worst = 0;
    const auto n = sys.size();
    for (PointId a = 0; a < n; ++a) {
        for (PointId b = a + 1; b < n; ++b) {
            if (sys.distance(a, b) > bound) continue;
            PointId u = a, v = b;
            for (std::size_t i = 0; i <= N; ++i) {
                worst = std::max(worst, sys.distance(u, v));
                u = sys.image(u);
                v = sys.image(v);
            }
        }
    }
    return worst;
}

Rational derived_delta(const FiniteSystem& sys, std::size_t N, const Rational& delta) {
    const auto grid = threshold_grid(sys);
    const auto candidates = grid.candidates();
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        // Errors strictly below the candidate are at most the grid value before it.
        const auto below = std::lower_bound(grid.values.begin(), grid.values.end(), *it);
        const Rational bound = below == grid.values.begin() ? Rational(0) : *std::prev(below);
        if (Rational(static_cast<std::int64_t>(N)) * continuity_modulus(sys, N, bound) < delta) return *it;
    }
    return grid.sub_minimal;
}

BlockedChain blockify(const FiniteSystem& sys, const Lasso& lasso, std::size_t N, const Rational& delta) {
    if (N == 0) throw Error("N must be at least 1");
    const auto Ni = static_cast<std::int64_t>(N);
    const auto max_error = max_step_error(sys, lasso);
    BlockedChain chain;
    chain.N = N;
    chain.eta = continuity_modulus(sys, N, max_error);

    const auto s = lasso.stem().size();
    const auto c = lasso.cycle().size();
    const std::size_t stem_blocks = (s + N - 1) / N;
    const std::size_t cycle_blocks = c / std::gcd(c, N);
    std::vector<PointId> stem, cycle;
    for (std::size_t i = 0; i < stem_blocks; ++i) stem.push_back(lasso.at(static_cast<std::int64_t>(i) * Ni));
    for (std::size_t i = stem_blocks; i < stem_blocks + cycle_blocks; ++i) {
        cycle.push_back(lasso.at(static_cast<std::int64_t>(i) * Ni));
    }
    std::size_t past_blocks = 0;
    if (lasso.two_sided()) {
        const auto p = lasso.past().size();
        past_blocks = p / std::gcd(p, N);
        std::vector<PointId> past;
        for (auto i = -static_cast<std::int64_t>(past_blocks); i < 0; ++i) past.push_back(lasso.at(i * Ni));
        chain.blocks = Lasso::two_sided(std::move(stem), std::move(cycle), std::move(past));
    } else {
        chain.blocks = Lasso::one_sided(std::move(stem), std::move(cycle));
    }

    chain.first_block = -static_cast<std::int64_t>(past_blocks);
    const auto last_block = static_cast<std::int64_t>(stem_blocks + cycle_blocks);
    if (!(Rational(Ni) * chain.eta < delta)) {
        // Report the block holding the step that forces eta.
        std::int64_t block = chain.first_block;
        for (auto j = chain.first_block * Ni; j < last_block * Ni; ++j) {
            if (sys.distance(sys.image(lasso.at(j)), lasso.at(j + 1)) == max_error) {
                block = j >= 0 ? j / Ni : -((-j + Ni - 1) / Ni);
                break;
            }
        }
        throw ModulusViolation("N * eta is not below delta", static_cast<std::size_t>(block - chain.first_block));
    }
    for (auto i = chain.first_block; i < last_block; ++i) {
        Rational sum = 0;
        for (std::int64_t j = 0; j < Ni; ++j) {
            const auto from = sys.iterate(lasso.at(i * Ni + j), Ni - j);
            const auto to = sys.iterate(lasso.at(i * Ni + j + 1), Ni - j - 1);
            sum += sys.distance(from, to);
        }
        const auto error = sys.distance(sys.iterate(lasso.at(i * Ni), Ni), lasso.at((i + 1) * Ni));
        if (!(sum < delta) || error > sum) {
            throw ModulusViolation("telescoping bound fails", static_cast<std::size_t>(i - chain.first_block));
        }
        chain.telescoping.push_back(sum);
        chain.errors.push_back(error);
    }
    return chain;
}

SpecShadowResult spec_to_shadow_point(const FiniteSystem& sys, const Lasso& lasso, std::size_t N,
                                      const Rational& epsilon, const SearchOptions& options) {
    require_positive(epsilon, "epsilon");
    if (lasso.two_sided() && !sys.invertible()) {
        throw NotInvertible("two-sided lasso on a non-invertible system");
    }
    const Rational half = epsilon / 2;
    const auto Ni = static_cast<std::int64_t>(N);
    const auto eta = continuity_modulus(sys, N, max_step_error(sys, lasso));

    std::set<Rational> deltas{half};
    for (const auto& c : threshold_grid(sys).candidates()) {
        if (c <= half) deltas.insert(c);
    }
    std::optional<Rational> chosen;
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
        if (Rational(Ni) * eta < *it && local_weak_spec_holds(sys, half, N, *it, options).holds) {
            chosen = *it;
            break;
        }
    }
    if (!chosen) throw ModulusViolation("no delta satisfies both N * eta < delta and local weak specification", 0);

    SpecShadowResult result;
    result.delta = *chosen;
    result.chain = blockify(sys, lasso, N, *chosen);
    const auto& y = result.chain.blocks;

    // Window over blocks after which both the tracer's f^N-orbit and the
    // blocked chain repeat.
    const auto L = sys.cycle_lcm();
    const auto hi = static_cast<std::int64_t>(std::max(y.stem().size(), sys.max_preperiod()) +
                                              lcm_u64(y.cycle().size(), L));
    const std::int64_t lo = y.two_sided() ? -static_cast<std::int64_t>(lcm_u64(y.past().size(), L)) : 0;

    auto traces = [&](PointId x) {
        for (auto i = lo; i < hi; ++i) {
            PointId pos = sys.iterate(x, i * Ni);
            PointId target = y.at(i);
            for (std::int64_t j = 0; j < Ni; ++j) {
                if (!(sys.distance(pos, target) < half)) return false;
                pos = sys.image(pos);
                target = sys.image(target);
            }
        }
        return true;
    };
    std::optional<PointId> tracer;
    if (traces(lasso.at(0))) tracer = lasso.at(0);
    for (PointId x = 0; !tracer && x < sys.size(); ++x) {
        if (traces(x)) tracer = x;
    }
    if (!tracer) throw Error("blocked chain has no tracer although local weak specification holds");
    result.point = *tracer;

    // d(f^j x, x_j) <= d(f^j x, f^{j-iN} x_{Ni}) + sum_{r=iN}^{j-1} d(f^{j-r} x_r, f^{j-r-1} x_{r+1}).
    Rational bound = 0;
    for (auto i = lo; i < hi; ++i) {
        for (std::int64_t j = 0; j < Ni; ++j) {
            const auto at = i * Ni + j;
            Rational term = sys.distance(sys.iterate(*tracer, at), sys.iterate(y.at(i), j));
            for (auto r = i * Ni; r < at; ++r) {
                term += sys.distance(sys.iterate(lasso.at(r), at - r), sys.iterate(lasso.at(r + 1), at - r - 1));
            }
            bound = std::max(bound, term);
        }
    }
    result.triangle_bound = bound;
    if (!(bound < epsilon) || !shadows(sys, *tracer, lasso, epsilon)) {
        throw Error("blocked tracer fails the triangle estimate");
    }
    return result;
}

ModulusTable modulus_table_for_spec(const FiniteSystem& sys, SpecKind kind, std::size_t N_max,
                                    std::size_t k_bound, const SearchOptions& options) {
    ModulusTable table{kind == SpecKind::weak ? ModulusProperty::local_weak_spec : ModulusProperty::local_spec, {}};
    const auto candidates = threshold_grid(sys).candidates();
    for (const auto& eps : candidates) {
        ModulusRow row{eps, std::nullopt, 1};
        for (std::size_t N = 1; N <= N_max && !row.delta; ++N) {
            for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
                const bool ok = kind == SpecKind::weak
                                    ? local_weak_spec_holds(sys, eps, N, *it, options).holds
                                    : local_spec_holds(sys, eps, N, *it, k_bound, std::nullopt, options).holds;
                if (ok) {
                    row.delta = *it;
                    row.N = N;
                    break;
                }
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

FiniteSystem power_system(const FiniteSystem& sys, std::size_t n) {
    std::vector<PointId> map(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) map[x] = sys.iterate(x, static_cast<std::int64_t>(n));
    return FiniteSystem::build(sys.names(), sys.dist(), std::move(map), sys.invertible());
}

std::optional<PointId> limit_spec_check(const FiniteSystem& sys, const Lasso& sources, std::size_t n) {
    if (n == 0) throw Error("gap must be at least 1");
    return limit_shadowing_check(power_system(sys, n), sources);
}

std::optional<PointId> two_sided_limit_spec_check(const FiniteSystem& sys, const Lasso& sources,
                                                  std::size_t n) {
    if (n == 0) throw Error("gap must be at least 1");
    if (!sys.invertible()) throw NotInvertible("two-sided limit specification needs an invertible system");
    return two_sided_limit_shadowing_check(power_system(sys, n), sources);
}

std::optional<LipschitzFit> lipschitz_spec_constants(const FiniteSystem& sys, std::size_t N_max,
                                                     const SearchOptions& options) {
    const auto grid = threshold_grid(sys);
    std::vector<Rational> positives;
    for (const auto& v : grid.values) {
        if (v > 0) positives.push_back(v);
    }
    if (sys.size() == 1) return LipschitzFit{Rational(1), grid.sentinel};

    std::map<std::pair<Rational, Rational>, bool> cache;
    auto holds = [&](const Rational& d, const Rational& epsilon) {
        const auto key = std::make_pair(d, epsilon);
        auto it = cache.find(key);
        if (it == cache.end()) {
            bool ok = false;
            for (std::size_t N = 1; N <= N_max && !ok; ++N) {
                ok = local_weak_spec_holds(sys, epsilon, N, d, options).holds;
            }
            it = cache.emplace(key, ok).first;
        }
        return it->second;
    };
    auto feasible = [&](const Rational& L) {
        Rational lower = 0;
        for (const auto& v : positives) {
            if (!holds(v, effective_epsilon(grid, L * lower))) return false;
            lower = v;
        }
        return true;
    };
    std::set<Rational> ratios;
    auto numerators = positives;
    numerators.push_back(grid.sentinel);
    for (const auto& g : numerators) {
        for (const auto& v : positives) ratios.insert(g / v);
    }
    for (const auto& L : ratios) {
        if (feasible(L)) return LipschitzFit{L, positives.back()};
    }
    return std::nullopt;
}

}  // namespace dynlab
