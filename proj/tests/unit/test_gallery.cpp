#include <gtest/gtest.h>

#include <numeric>

#include "dynlab/errors.hpp"
#include "dynlab/expansive.hpp"
#include "dynlab/gallery.hpp"
#include "oracles.hpp"

using namespace dynlab;

TEST(Xpq, LoopsThroughZero) {
    auto x = build_xpq(3, 2);
    EXPECT_EQ(x.size(), 4u);
    EXPECT_EQ(x.edge_count(), 5u);
    EXPECT_TRUE(x.allows(0, 1) && x.allows(2, 0) && x.allows(0, 3) && x.allows(3, 0));
    EXPECT_THROW(build_xpq(2, 4), NotCoprime);
    EXPECT_THROW(build_xpq(0, 1), Error);
    // a self-loop when q = 1
    EXPECT_TRUE(build_xpq(2, 1).allows(0, 0));
}

TEST(Xpq, PrimitiveForCoprimeLoops) {
    for (auto [p, q] : {std::pair{3u, 2u}, {5u, 3u}, {7u, 5u}, {4u, 3u}}) {
        auto x = build_xpq(p, q);
        EXPECT_EQ(oracle::period_by_powers(x.graph()), 1u);
        // closed walks of length p and q exist, of length 1 only when a loop is 1
        EXPECT_GT(adjacency_trace(x, p), 0u);
        EXPECT_GT(adjacency_trace(x, q), 0u);
        EXPECT_EQ(adjacency_trace(x, 1), 0u);
    }
}

TEST(Product, TruncationFactors) {
    auto p = build_product_truncation({2, 3, 5}, 2);  // X(3,2) x X(5,3)
    EXPECT_EQ(p.size(), 4u * 7u);
    auto a = build_xpq(3, 2), b = build_xpq(5, 3);
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(adjacency_trace(p, n), adjacency_trace(a, n) * adjacency_trace(b, n));
    for (std::size_t n : {1u, 2u, 4u, 7u}) EXPECT_EQ(oracle::closed_walks(p.graph(), n), 0u) << n;
    EXPECT_GT(adjacency_trace(p, 3), 0u);
    EXPECT_THROW(build_product_truncation({2, 3}, 2), Error);
    EXPECT_THROW(build_product_truncation({3, 2, 5}, 2), Error);
}

TEST(Myex, LayoutAndNames) {
    auto m = build_myex(5, 3);
    EXPECT_EQ(m.system.size(), 30u);
    EXPECT_EQ(m.anchors.size(), 3u);
    EXPECT_EQ(m.system.name(m.anchors[0]), "t(0,0)");
    EXPECT_EQ(m.system.period(m.anchors[0]), 1u);
    EXPECT_EQ(m.system.period(m.anchors[1]), 2u);
    EXPECT_EQ(m.system.period(m.anchors[2]), 2u);
    EXPECT_EQ(m.system.name(m.satellites[1][1]), "q(2,1)");
    EXPECT_TRUE(m.system.invertible());
    EXPECT_TRUE(oracle::is_metric(m.system.dist()));
    EXPECT_THROW(build_myex(2, 100), NotEnoughOrbits);
}

TEST(Myex, SatellitesHoverAtOneOverK) {
    auto m = build_myex(5, 3);
    const auto& sys = m.system;
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto p = m.anchors[k - 1];
        const auto s = m.satellites[k - 1][0];
        EXPECT_EQ(sys.distance(p, s), Rational(1, static_cast<std::int64_t>(k)));
        EXPECT_EQ(oracle::orbit_sup(sys, p, s), Rational(1, static_cast<std::int64_t>(k)));
        EXPECT_EQ(sys.period(s), sys.period(p));
    }
}

TEST(Torus, WrapsAroundAndUsesTheLargerCoordinate) {
    EXPECT_EQ(torus_distance(5, 0, 0, 4, 0), Rational(1, 5));
    EXPECT_EQ(torus_distance(5, 0, 0, 2, 1), Rational(2, 5));
    EXPECT_EQ(torus_distance(5, 1, 1, 1, 1), Rational(0));
}

TEST(Random, DeterministicMetricAndKind) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (bool inv : {false, true}) {
            auto a = build_random_system(seed, 7, inv);
            auto b = build_random_system(seed, 7, inv);
            EXPECT_EQ(a.map(), b.map());
            EXPECT_EQ(a.dist(), b.dist());
            EXPECT_TRUE(oracle::is_metric(a.dist()));
            EXPECT_EQ(a.invertible(), inv);
        }
    }
    // frozen values, so a platform change in the generator shows up
    auto inv = build_random_system(1, 5, true);
    EXPECT_EQ(inv.map(), (std::vector<PointId>{0, 4, 2, 3, 1}));
    EXPECT_EQ(inv.distance(0, 3), Rational(3, 8));
    EXPECT_EQ(inv.distance(2, 4), Rational(1, 8));
    EXPECT_EQ(build_random_system(2, 5, false).map(), (std::vector<PointId>{1, 3, 0, 3, 4}));
}
