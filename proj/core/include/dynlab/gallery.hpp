#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/symbolic.hpp"

namespace dynlab {

/// Two loops through symbol 0: 0 -> 1 -> ... -> p-1 -> 0 of length p and
/// 0 -> p -> ... -> p+q-2 -> 0 of length q, on p+q-1 symbols.
/// Throws NotCoprime unless gcd(p, q) = 1.
Sft build_xpq(std::size_t p, std::size_t q);

/// X(p_2,p_1) x X(p_3,p_2) x ... with `n_factors` factors; needs
/// n_factors + 1 strictly increasing primes.
Sft build_product_truncation(const std::vector<std::size_t>& primes, std::size_t n_factors);

/// The cat map [[2,1],[1,1]] on the (1/q)-lattice of the torus (flat L-infinity
/// metric), plus satellite orbits q(k,j) at distance 1/k from the orbit of p_k.
struct MyexInstance {
    std::size_t lattice_q = 0;
    std::size_t K = 0;
    FiniteSystem system;
    /// p_1..p_K: one representative per lattice orbit, orbits taken by
    /// increasing period, then by smallest point.
    std::vector<PointId> anchors;
    /// satellites[k-1][j] = q(k, j).
    std::vector<std::vector<PointId>> satellites;
};

/// Throws NotEnoughOrbits when the lattice has fewer than K orbits.
MyexInstance build_myex(std::size_t lattice_q, std::size_t K);

/// Flat-torus distance between lattice points (a1,b1), (a2,b2) over q.
Rational torus_distance(std::size_t q, std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2);

/// Deterministic from the seed: integer edge weights completed to a metric by
/// shortest paths (unit 1/8), and a random function or permutation.
FiniteSystem build_random_system(std::uint64_t seed, std::size_t size, bool invertible);

}  // namespace dynlab
