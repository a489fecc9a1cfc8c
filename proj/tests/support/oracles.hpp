#pragma once

// Test-side reference implementations. Deliberately naive and written against
// the raw distance matrix and map, never against the library's search code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/graph.hpp"

namespace oracle {

using dynlab::FiniteSystem;
using dynlab::PointId;
using dynlab::Rational;

using Mask = std::uint64_t;

inline Mask bit(std::size_t i) { return Mask{1} << i; }

inline std::vector<Rational> grid(const FiniteSystem& sys) { return dynlab::threshold_grid(sys).candidates(); }

/// Orbit of y by hand: first index of the cycle and the cycle length.
struct Orbit {
    std::size_t pre = 0;
    std::size_t per = 0;
};

inline Orbit orbit_of(const std::vector<PointId>& f, PointId y) {
    std::map<PointId, std::size_t> seen;
    PointId z = y;
    for (std::size_t i = 0;; ++i) {
        if (auto it = seen.find(z); it != seen.end()) return {it->second, i - it->second};
        seen[z] = i;
        z = f[z];
    }
}

inline PointId power(const std::vector<PointId>& f, PointId y, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) y = f[y];
    return y;
}

/// All d(a,b) = 0 iff a = b, symmetry and triangle inequality.
inline bool is_metric(const dynlab::DistanceMatrix& d) {
    const auto n = d.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if ((d[a][b] == 0) != (a == b)) return false;
            if (d[a][b] != d[b][a] || d[a][b] < 0) return false;
            for (std::size_t c = 0; c < n; ++c)
                if (d[a][b] > d[a][c] + d[c][b]) return false;
        }
    return true;
}

/// Does y track the one-sided lasso stem+cycle^inf within eps (strict)?
inline bool tracks(const FiniteSystem& sys, PointId y, const std::vector<PointId>& stem,
                   const std::vector<PointId>& cycle, const Rational& eps) {
    const auto& f = sys.map();
    const auto o = orbit_of(f, y);
    const std::size_t horizon = std::max(stem.size(), o.pre) + std::lcm(cycle.size(), o.per);
    PointId z = y;
    for (std::size_t i = 0; i < horizon; ++i) {
        const PointId want = i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()];
        if (!(sys.distance(z, want) < eps)) return false;
        z = f[z];
    }
    return true;
}

/// Explicit enumeration of every lasso delta-pseudo orbit with
/// stem + cycle <= max_len. Exponential; tiny systems only.
inline bool shadowing_by_enumeration(const FiniteSystem& sys, const Rational& delta, const Rational& eps,
                                     std::size_t max_len) {
    const auto n = sys.size();
    const auto& f = sys.map();
    auto edge = [&](PointId a, PointId b) { return sys.distance(f[a], b) < delta; };
    std::vector<PointId> word;
    bool ok = true;
    auto check_word = [&]() {
        for (std::size_t cut = 0; cut < word.size() && ok; ++cut) {
            std::vector<PointId> stem(word.begin(), word.begin() + cut);
            std::vector<PointId> cycle(word.begin() + cut, word.end());
            if (!edge(cycle.back(), cycle.front())) continue;
            bool shadowed = false;
            for (PointId y = 0; y < n && !shadowed; ++y) shadowed = tracks(sys, y, stem, cycle, eps);
            if (!shadowed) ok = false;
        }
    };
    auto grow = [&](auto&& self) -> void {
        if (!ok) return;
        if (!word.empty()) check_word();
        if (word.size() == max_len) return;
        for (PointId v = 0; v < n && ok; ++v) {
            if (!word.empty() && !edge(word.back(), v)) continue;
            word.push_back(v);
            self(self);
            word.pop_back();
        }
    };
    grow(grow);
    return ok;
}

/// Same question as above for |X| <= 64 but organised as a dynamic programme
/// over surviving-candidate sets, so length 12 stays cheap. Answers whether
/// every lasso with stem + cycle <= max_len is shadowed.
inline bool shadowing_by_families(const FiniteSystem& sys, const Rational& delta, const Rational& eps,
                                  std::size_t max_len = 12) {
    const auto n = sys.size();
    const auto& f = sys.map();
    std::vector<Mask> ball(n, 0);
    for (PointId v = 0; v < n; ++v)
        for (PointId y = 0; y < n; ++y)
            if (sys.distance(v, y) < eps) ball[v] |= bit(y);
    auto edge = [&](PointId a, PointId b) { return sys.distance(f[a], b) < delta; };
    // y with f^k(y) in ball[v]
    auto pull = [&](PointId v, std::size_t k) {
        Mask m = 0;
        for (PointId y = 0; y < n; ++y)
            if (ball[v] & bit(power(f, y, k))) m |= bit(y);
        return m;
    };

    // best[v][S]: shortest total length of a lasso starting at v whose
    // tracking set is S.
    std::vector<std::map<Mask, std::size_t>> best(n);
    auto offer = [&](PointId v, Mask s, std::size_t len) {
        auto [it, fresh] = best[v].try_emplace(s, len);
        if (!fresh && len < it->second) it->second = len;
    };

    for (PointId c0 = 0; c0 < n; ++c0) {
        // (last vertex, one-lap survivors) after `len` cycle entries
        std::set<std::pair<PointId, Mask>> layer{{c0, ball[c0]}};
        for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
            for (const auto& [last, lap] : layer) {
                if (!edge(last, c0)) continue;
                Mask closed = 0;
                for (PointId y = 0; y < n; ++y) {
                    if (!(lap & bit(y))) continue;
                    // y survives forever iff every g-iterate stays in the lap set
                    std::set<PointId> seen;
                    PointId z = y;
                    bool good = true;
                    while (seen.insert(z).second) {
                        if (!(lap & bit(z))) { good = false; break; }
                        z = power(f, z, len);
                    }
                    if (good) closed |= bit(y);
                }
                offer(c0, closed, len);
            }
            if (len == max_len) break;
            std::set<std::pair<PointId, Mask>> next;
            for (const auto& [last, lap] : layer)
                for (PointId u = 0; u < n; ++u)
                    if (edge(last, u)) next.insert({u, lap & pull(u, len)});
            layer = std::move(next);
        }
    }

    // prepend stem entries, shortest totals first
    for (std::size_t total = 1; total < max_len; ++total) {
        for (PointId u = 0; u < n; ++u) {
            std::vector<Mask> sets;
            for (const auto& [s, len] : best[u])
                if (len == total) sets.push_back(s);
            for (Mask s : sets) {
                Mask shifted = 0;
                for (PointId y = 0; y < n; ++y)
                    if (s & bit(f[y])) shifted |= bit(y);
                for (PointId v = 0; v < n; ++v)
                    if (edge(v, u)) offer(v, shifted & ball[v], total + 1);
            }
        }
    }
    for (PointId v = 0; v < n; ++v)
        if (best[v].count(0) && best[v].at(0) <= max_len) return false;
    return true;
}

/// Closed delta-walks of length m <= bound, each shadowed by a periodic point
/// (of period m when strong).
inline bool periodic_shadowing_by_enumeration(const FiniteSystem& sys, const Rational& delta, const Rational& eps,
                                              std::size_t bound, bool strong) {
    const auto n = sys.size();
    const auto& f = sys.map();
    auto edge = [&](PointId a, PointId b) { return sys.distance(f[a], b) < delta; };
    std::vector<PointId> word;
    bool ok = true;
    auto check = [&]() {
        if (!edge(word.back(), word.front())) return;
        for (PointId z = 0; z < n; ++z) {
            const auto o = orbit_of(f, z);
            if (o.pre != 0) continue;
            if (strong && power(f, z, word.size()) != z) continue;
            if (tracks(sys, z, {}, word, eps)) return;
        }
        ok = false;
    };
    auto grow = [&](auto&& self) -> void {
        if (!ok) return;
        if (!word.empty()) check();
        if (word.size() == bound) return;
        for (PointId v = 0; v < n && ok; ++v) {
            if (!word.empty() && !edge(word.back(), v)) continue;
            word.push_back(v);
            self(self);
            word.pop_back();
        }
    };
    grow(grow);
    return ok;
}

/// sup over the time set of d(f^i x, f^i y), following the pair until it repeats.
inline Rational orbit_sup(const FiniteSystem& sys, PointId x, PointId y) {
    const auto& f = sys.map();
    Rational sup = 0;
    std::set<std::pair<PointId, PointId>> seen;
    for (PointId a = x, b = y; seen.insert({a, b}).second; a = f[a], b = f[b]) sup = std::max(sup, sys.distance(a, b));
    if (sys.invertible()) {
        std::vector<PointId> inv(sys.size());
        for (PointId z = 0; z < sys.size(); ++z) inv[f[z]] = z;
        seen.clear();
        for (PointId a = x, b = y; seen.insert({a, b}).second; a = inv[a], b = inv[b])
            sup = std::max(sup, sys.distance(a, b));
    }
    return sup;
}

inline std::vector<std::vector<PointId>> succ_lists(const FiniteSystem& sys) {
    std::vector<std::vector<PointId>> out(sys.size());
    for (PointId x = 0; x < sys.size(); ++x) {
        if (sys.relation()) out[x] = (*sys.relation())[x];
        else out[x] = {sys.image(x)};
    }
    return out;
}

/// Warshall closure of the delta-chain relation; x is chain recurrent at delta
/// iff it reaches itself in at least one step.
inline std::vector<bool> chain_recurrent_at(const FiniteSystem& sys, const Rational& delta) {
    const auto n = sys.size();
    const auto succ = succ_lists(sys);
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (PointId x = 0; x < n; ++x)
        for (PointId s : succ[x])
            for (PointId y = 0; y < n; ++y)
                if (sys.distance(s, y) < delta) r[x][y] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    std::vector<bool> out(n);
    for (std::size_t x = 0; x < n; ++x) out[x] = r[x][x];
    return out;
}

inline std::vector<bool> chain_recurrent(const FiniteSystem& sys) {
    std::vector<bool> out(sys.size(), true);
    for (const auto& d : grid(sys)) {
        const auto at = chain_recurrent_at(sys, d);
        for (std::size_t x = 0; x < sys.size(); ++x) out[x] = out[x] && at[x];
    }
    return out;
}

/// x is non-wandering iff for every eps some forward image of B(x, eps) meets it.
inline std::vector<bool> nonwandering(const FiniteSystem& sys) {
    const auto n = sys.size();
    const auto succ = succ_lists(sys);
    std::vector<bool> out(n, true);
    for (const auto& eps : grid(sys)) {
        for (PointId x = 0; x < n; ++x) {
            std::set<PointId> ball;
            for (PointId y = 0; y < n; ++y)
                if (sys.distance(x, y) < eps) ball.insert(y);
            std::set<std::set<PointId>> seen;
            std::set<PointId> cur = ball;
            bool returns = false;
            while (!returns) {
                std::set<PointId> next;
                for (PointId y : cur)
                    for (PointId s : succ[y]) next.insert(s);
                for (PointId y : next)
                    if (ball.count(y)) returns = true;
                if (!seen.insert(next).second) break;
                cur = std::move(next);
            }
            if (!returns) out[x] = false;
        }
    }
    return out;
}

/// gcd of the lengths k <= n of closed walks, read off boolean matrix powers.
inline std::size_t period_by_powers(const dynlab::Digraph& g) {
    const auto n = g.size();
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false)), p;
    for (std::size_t v = 0; v < n; ++v)
        for (auto w : g[v]) a[v][w] = true;
    p = a;
    std::size_t gcd = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t v = 0; v < n; ++v)
            if (p[v][v]) { gcd = std::gcd(gcd, k); break; }
        std::vector<std::vector<bool>> q(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k2 = 0; k2 < n; ++k2)
                if (p[i][k2])
                    for (std::size_t j = 0; j < n; ++j)
                        if (a[k2][j]) q[i][j] = true;
        p = std::move(q);
    }
    return gcd;
}

/// Number of closed walks of length k, counted vertex by vertex.
inline std::uint64_t closed_walks(const dynlab::Digraph& g, std::size_t k) {
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        std::vector<std::uint64_t> ways(g.size(), 0);
        ways[s] = 1;
        for (std::size_t step = 0; step < k; ++step) {
            std::vector<std::uint64_t> next(g.size(), 0);
            for (std::size_t v = 0; v < g.size(); ++v)
                for (auto w : g[v]) next[w] += ways[v];
            ways = std::move(next);
        }
        total += ways[s];
    }
    return total;
}

}  // namespace oracle
