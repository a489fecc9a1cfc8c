#include "dynlab/gallery.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "dynlab/errors.hpp"

namespace dynlab {

Sft build_xpq(std::size_t p, std::size_t q) {
    if (p == 0 || q == 0) throw Error("loop lengths must be positive");
    if (std::gcd(p, q) != 1) throw NotCoprime("X(p,q) needs coprime loop lengths");
    const auto r = p + q - 1;
    std::vector<std::string> alphabet;
    for (std::size_t i = 0; i < r; ++i) alphabet.push_back(std::to_string(i));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < p; ++i) edges.emplace(i, (i + 1) % p);
    // Second loop: 0 -> p -> p+1 -> ... -> p+q-2 -> 0.
    std::size_t prev = 0;
    for (std::size_t i = 0; i + 1 < q; ++i) {
        edges.emplace(prev, p + i);
        prev = p + i;
    }
    edges.emplace(prev, 0);
    std::vector<std::pair<std::string, std::string>> named;
    for (const auto& [a, b] : edges) named.emplace_back(alphabet[a], alphabet[b]);
    return build_sft(std::move(alphabet), named);
}

Sft build_product_truncation(const std::vector<std::size_t>& primes, std::size_t n_factors) {
    if (n_factors == 0) throw Error("need at least one factor");
    if (primes.size() < n_factors + 1) throw Error("need n_factors + 1 primes");
    for (std::size_t i = 1; i < primes.size(); ++i) {
        if (primes[i] <= primes[i - 1]) throw Error("primes must be strictly increasing");
    }
    std::vector<Sft> factors;
    for (std::size_t i = 0; i < n_factors; ++i) factors.push_back(build_xpq(primes[i + 1], primes[i]));
    return product_system(factors);
}

Rational torus_distance(std::size_t q, std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) {
    auto circle = [q](std::size_t u, std::size_t v) {
        const auto diff = u > v ? u - v : v - u;
        return std::min(diff, q - diff);
    };
    const auto steps = std::max(circle(a1, a2), circle(b1, b2));
    return Rational(static_cast<std::int64_t>(steps), static_cast<std::int64_t>(q));
}

MyexInstance build_myex(std::size_t lattice_q, std::size_t K) {
    if (lattice_q < 2) throw Error("lattice denominator must be at least 2");
    if (K == 0) throw Error("need at least one satellite orbit");
    const auto q = lattice_q;
    const auto lattice = q * q;
    auto cat = [q](std::size_t i) {
        const auto a = i / q, b = i % q;
        return ((2 * a + b) % q) * q + (a + b) % q;
    };

    // Orbits by (period, smallest point).
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<bool> seen(lattice, false);
    for (std::size_t i = 0; i < lattice; ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> orbit;
        for (auto j = i; !seen[j]; j = cat(j)) {
            seen[j] = true;
            orbit.push_back(j);
        }
        orbits.push_back(std::move(orbit));
    }
    std::stable_sort(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (orbits.size() < K) {
        throw NotEnoughOrbits("the lattice has " + std::to_string(orbits.size()) + " orbits, fewer than K");
    }

    std::vector<PointId> anchors;
    std::vector<std::vector<PointId>> satellites;
    std::vector<std::string> names;
    std::vector<PointId> map;
    for (std::size_t i = 0; i < lattice; ++i) {
        names.push_back("t(" + std::to_string(i / q) + "," + std::to_string(i % q) + ")");
        map.push_back(static_cast<PointId>(cat(i)));
    }
    // Each satellite remembers the lattice point it hovers over.
    std::vector<std::size_t> shadow_of(lattice);
    std::iota(shadow_of.begin(), shadow_of.end(), std::size_t{0});
    std::vector<std::int64_t> level(lattice, 0);
    for (std::size_t k = 1; k <= K; ++k) {
        const auto& orbit = orbits[k - 1];
        anchors.push_back(static_cast<PointId>(orbit.front()));
        std::vector<PointId> sats;
        const auto first = names.size();
        for (std::size_t j = 0; j < orbit.size(); ++j) {
            sats.push_back(static_cast<PointId>(names.size()));
            names.push_back("q(" + std::to_string(k) + "," + std::to_string(j) + ")");
            map.push_back(static_cast<PointId>(first + (j + 1) % orbit.size()));
            shadow_of.push_back(orbit[j]);
            level.push_back(static_cast<std::int64_t>(k));
        }
        satellites.push_back(std::move(sats));
    }

    const auto n = names.size();
    DistanceMatrix dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            const auto u = shadow_of[x], v = shadow_of[y];
            Rational d = torus_distance(q, u / q, u % q, v / q, v % q);
            if (level[x] > 0) d += Rational(1, level[x]);
            if (level[y] > 0) d += Rational(1, level[y]);
            dist[x][y] = dist[y][x] = d;
        }
    }
    return {q, K, FiniteSystem::build(std::move(names), std::move(dist), std::move(map), true), std::move(anchors),
            std::move(satellites)};
}

FiniteSystem build_random_system(std::uint64_t seed, std::size_t size, bool invertible) {
    if (size == 0) throw Error("a system needs at least one point");
    // Raw engine output only: distributions are not portable across standard libraries.
    std::mt19937_64 rng(seed);
    constexpr std::int64_t unit = 8;
    std::vector<std::vector<std::int64_t>> w(size, std::vector<std::int64_t>(size, 0));
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = x + 1; y < size; ++y) w[x][y] = w[y][x] = 1 + static_cast<std::int64_t>(rng() % unit);
    }
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t x = 0; x < size; ++x) {
            for (std::size_t y = 0; y < size; ++y) w[x][y] = std::min(w[x][y], w[x][k] + w[k][y]);
        }
    }
    std::vector<PointId> map(size);
    if (invertible) {
        std::iota(map.begin(), map.end(), PointId{0});
        for (std::size_t i = size; i > 1; --i) std::swap(map[i - 1], map[rng() % i]);
    } else {
        for (auto& image : map) image = static_cast<PointId>(rng() % size);
    }
    std::vector<std::string> names;
    DistanceMatrix dist(size, std::vector<Rational>(size, Rational(0)));
    for (std::size_t x = 0; x < size; ++x) {
        names.push_back("x" + std::to_string(x));
        for (std::size_t y = 0; y < size; ++y) dist[x][y] = Rational(w[x][y], unit);
    }
    return FiniteSystem::build(std::move(names), std::move(dist), std::move(map),
                               invertible ? std::optional<bool>(true) : std::optional<bool>(false));
}

}  // namespace dynlab
