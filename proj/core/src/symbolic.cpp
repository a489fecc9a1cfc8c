#include "dynlab/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dynlab/errors.hpp"

namespace dynlab {

bool Sft::allows(Symbol a, Symbol b) const {
    const auto& succ = graph_[a];
    return std::binary_search(succ.begin(), succ.end(), b);
}

std::size_t Sft::edge_count() const {
    std::size_t total = 0;
    for (const auto& succ : graph_) total += succ.size();
    return total;
}

std::vector<std::pair<std::string, std::string>> Sft::edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (Symbol a = 0; a < size(); ++a) {
        for (const auto b : graph_[a]) out.emplace_back(alphabet_[a], alphabet_[b]);
    }
    return out;
}

Sft build_sft(std::vector<std::string> alphabet,
              std::span<const std::pair<std::string, std::string>> edges) {
    std::unordered_map<std::string, Symbol> index;
    for (Symbol i = 0; i < alphabet.size(); ++i) {
        if (!index.emplace(alphabet[i], i).second) throw Error("duplicate symbol '" + alphabet[i] + "'");
    }
    const std::size_t n = alphabet.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [from, to] : edges) {
        const auto a = index.find(from);
        const auto b = index.find(to);
        if (a == index.end() || b == index.end()) {
            throw Error("edge " + from + to + " uses a symbol outside the alphabet");
        }
        adj[a->second][b->second] = true;
    }

    std::vector<bool> alive(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool has_out = false, has_in = false;
            for (std::size_t u = 0; u < n; ++u) {
                if (!alive[u]) continue;
                has_out = has_out || adj[v][u];
                has_in = has_in || adj[u][v];
            }
            if (!has_out || !has_in) {
                alive[v] = false;
                changed = true;
            }
        }
    }

    Sft sft;
    std::vector<Symbol> local(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        local[v] = static_cast<Symbol>(sft.alphabet_.size());
        sft.alphabet_.push_back(alphabet[v]);
    }
    if (sft.alphabet_.empty()) throw EmptyShift("no bi-infinite walk survives pruning");
    sft.graph_.resize(sft.alphabet_.size());
    for (std::size_t a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (alive[b] && adj[a][b]) sft.graph_[local[a]].push_back(local[b]);
        }
    }
    return sft;
}

SymbolicPoint make_symbolic_point(const Sft& sft, Lasso word) {
    if (!word.two_sided()) throw Error("symbolic points are two-sided sequences");
    for (const auto& [a, b] : word.transitions()) {
        if (a >= sft.size() || b >= sft.size() || !sft.allows(a, b)) {
            throw Error("sequence uses a forbidden two-letter word");
        }
    }
    return SymbolicPoint{std::move(word)};
}

namespace {

/// |i| beyond which the two sequences agree iff they agree up to it.
std::size_t equality_horizon(const Lasso& x, const Lasso& y) {
    const auto forward = std::max(x.stem().size(), y.stem().size()) +
                         lcm_u64(x.cycle().size(), y.cycle().size());
    const auto backward = lcm_u64(x.past().size(), y.past().size());
    return std::max<std::size_t>(forward, backward);
}

bool differ_at(const Lasso& x, const Lasso& y, std::int64_t i) { return x.at(i) != y.at(i); }

}  // namespace

Rational shift_distance(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t cap) {
    const auto horizon = equality_horizon(x.word, y.word);
    const std::size_t limit = std::min(cap, horizon);
    for (std::size_t k = 0; k <= limit; ++k) {
        const auto i = static_cast<std::int64_t>(k);
        if (differ_at(x.word, y.word, i) || differ_at(x.word, y.word, -i)) {
            if (k >= 63) throw HorizonExceeded("disagreement beyond representable dyadic range");
            return Rational(1, std::int64_t{1} << k);
        }
    }
    if (horizon > cap) {
        throw HorizonExceeded("no disagreement within |i| <= " + std::to_string(cap) +
                              " and the lasso periods do not certify equality");
    }
    return Rational(0);
}

Rational orbit_sup_distance(const SymbolicPoint& x, const SymbolicPoint& y) {
    // Any disagreement at index i puts sigma^i x and sigma^i y at distance 1.
    const auto horizon = static_cast<std::int64_t>(equality_horizon(x.word, y.word));
    for (std::int64_t i = -horizon; i <= horizon; ++i) {
        if (differ_at(x.word, y.word, i)) return Rational(1);
    }
    return Rational(0);
}

std::vector<SymbolicPoint> periodic_points(const Sft& sft, std::size_t period) {
    if (period == 0) throw Error("period must be at least 1");
    std::vector<SymbolicPoint> out;
    std::vector<Symbol> path;
    const auto& g = sft.graph();
    auto extend = [&](auto&& self) -> void {
        if (path.size() == period) {
            if (sft.allows(path.back(), path.front())) {
                out.push_back(SymbolicPoint{Lasso::periodic(path, Sidedness::two_sided)});
            }
            return;
        }
        for (const auto b : g[path.back()]) {
            path.push_back(b);
            self(self);
            path.pop_back();
        }
    };
    for (Symbol start = 0; start < sft.size(); ++start) {
        path.assign(1, start);
        extend(extend);
    }
    return out;
}

std::uint64_t adjacency_trace(const Sft& sft, std::size_t power) {
    const std::size_t n = sft.size();
    using Matrix = std::vector<std::vector<std::uint64_t>>;
    Matrix a(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto j : sft.graph()[i]) a[i][j] = 1;
    }
    Matrix acc(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) acc[i][i] = 1;
    for (std::size_t p = 0; p < power; ++p) {
        Matrix next(n, std::vector<std::uint64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (acc[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) next[i][j] += acc[i][k] * a[k][j];
            }
        }
        acc = std::move(next);
    }
    std::uint64_t trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += acc[i][i];
    return trace;
}

FiniteSystem window_system(const Sft& sft, std::size_t w) {
    if (w == 0) throw Error("window radius must be at least 1");
    const std::size_t length = 2 * w + 1;
    const auto& g = sft.graph();

    std::vector<std::vector<Symbol>> words;
    std::vector<Symbol> path;
    auto extend = [&](auto&& self) -> void {
        if (path.size() == length) {
            words.push_back(path);
            return;
        }
        for (const auto b : g[path.back()]) {
            path.push_back(b);
            self(self);
            path.pop_back();
        }
    };
    for (Symbol start = 0; start < sft.size(); ++start) {
        path.assign(1, start);
        extend(extend);
    }

    std::map<std::vector<Symbol>, PointId> index;
    for (PointId i = 0; i < words.size(); ++i) index.emplace(words[i], i);

    const bool short_names = std::all_of(sft.alphabet().begin(), sft.alphabet().end(),
                                         [](const std::string& s) { return s.size() == 1; });
    std::vector<std::string> names;
    for (const auto& word : words) {
        std::string name;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (!short_names && i > 0) name += '.';
            name += sft.alphabet()[word[i]];
        }
        names.push_back(std::move(name));
    }

    const std::size_t n = words.size();
    DistanceMatrix dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t k = 0; k <= w; ++k) {
                if (words[a][w + k] != words[b][w + k] || words[a][w - k] != words[b][w - k]) {
                    dist[a][b] = dist[b][a] = Rational(1, std::int64_t{1} << k);
                    break;
                }
            }
        }
    }

    std::vector<PointId> map(n);
    Relation successors(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Symbol> shifted(words[a].begin() + 1, words[a].end());
        shifted.push_back(0);
        for (const auto b : g[words[a].back()]) {
            shifted.back() = b;
            successors[a].push_back(index.at(shifted));
        }
        // g is ascending, so the first extension is the lexicographically smallest.
        map[a] = successors[a].front();
    }
    auto sys = FiniteSystem::build(std::move(names), std::move(dist), std::move(map));
    return sys.with_relation(std::move(successors), "window:" + std::to_string(w));
}

Sft product_system(std::span<const Sft> factors) {
    if (factors.empty()) throw Error("product of zero factors");
    std::vector<std::string> alphabet{""};
    std::vector<std::vector<Symbol>> tuples{{}};
    for (const auto& factor : factors) {
        std::vector<std::vector<Symbol>> next;
        for (const auto& t : tuples) {
            for (Symbol s = 0; s < factor.size(); ++s) {
                auto u = t;
                u.push_back(s);
                next.push_back(std::move(u));
            }
        }
        tuples = std::move(next);
    }
    if (factors.size() == 1) return factors.front();

    alphabet.clear();
    for (const auto& t : tuples) {
        std::string name = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) name += ',';
            name += factors[i].alphabet()[t[i]];
        }
        alphabet.push_back(name + ")");
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t a = 0; a < tuples.size(); ++a) {
        for (std::size_t b = 0; b < tuples.size(); ++b) {
            bool ok = true;
            for (std::size_t i = 0; i < factors.size() && ok; ++i) {
                ok = factors[i].allows(tuples[a][i], tuples[b][i]);
            }
            if (ok) edges.emplace_back(alphabet[a], alphabet[b]);
        }
    }
    return build_sft(std::move(alphabet), edges);
}

}  // namespace dynlab
