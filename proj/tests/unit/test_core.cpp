#include <gtest/gtest.h>

#include "dynlab/core.hpp"
#include "dynlab/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dynlab;

namespace {

// a - b - c on a line, rotated a -> b -> c -> a.
FiniteSystem rotation3() {
    DistanceMatrix d{{0, Rational(1, 2), 1}, {Rational(1, 2), 0, Rational(1, 2)}, {1, Rational(1, 2), 0}};
    return FiniteSystem::build({"a", "b", "c"}, d, {1, 2, 0}, true);
}

// 0 -> 1 -> 2 -> 2, discrete metric
FiniteSystem tail3() {
    DistanceMatrix d{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    return FiniteSystem::build({"u", "v", "w"}, d, {1, 2, 2});
}

}  // namespace

TEST(Build, RejectsTriangleViolationAndNamesTheTriple) {
    DistanceMatrix d{{0, 3, 1}, {3, 0, 1}, {1, 1, 0}};
    try {
        FiniteSystem::build({"a", "b", "c"}, d, {0, 1, 2});
        FAIL() << "expected MetricViolation";
    } catch (const MetricViolation& e) {
        EXPECT_EQ(e.a, 0u);
        EXPECT_EQ(e.b, 1u);
        EXPECT_EQ(e.c, 2u);
    }
}

TEST(Build, RejectsAsymmetryZeroesAndBadMaps) {
    EXPECT_THROW(FiniteSystem::build({"a", "b"}, {{0, 1}, {2, 0}}, {0, 1}), MetricViolation);
    EXPECT_THROW(FiniteSystem::build({"a", "b"}, {{0, 0}, {0, 0}}, {0, 1}), MetricViolation);
    EXPECT_THROW(FiniteSystem::build({"a", "b"}, {{0, 1}, {1, 0}}, {0, 2}), Error);
    EXPECT_THROW(FiniteSystem::build({"a", "b"}, {{0, 1}, {1, 0}}, {0, 0}, true), NotABijection);
}

TEST(Build, InvertibleHintFalseKeepsOneSidedTime) {
    auto sys = FiniteSystem::build({"a", "b"}, {{0, 1}, {1, 0}}, {1, 0}, false);
    EXPECT_FALSE(sys.invertible());
    EXPECT_THROW(sys.preimage(0), NotInvertible);
    auto inferred = FiniteSystem::build({"a", "b"}, {{0, 1}, {1, 0}}, {1, 0});
    EXPECT_TRUE(inferred.invertible());
}

TEST(Orbits, PreperiodPeriodAndIterates) {
    auto sys = tail3();
    EXPECT_EQ(sys.preperiod(0), 2u);
    EXPECT_EQ(sys.period(0), 1u);
    EXPECT_EQ(sys.iterate(0, 1000), 2u);
    EXPECT_EQ(sys.periodic_points(), std::vector<PointId>{2});
    EXPECT_EQ(sys.max_preperiod(), 2u);

    auto rot = rotation3();
    EXPECT_EQ(rot.iterate(0, -1), 2u);
    EXPECT_EQ(rot.iterate(1, 5), 0u);
    EXPECT_EQ(rot.cycle_lcm(), 3u);
    EXPECT_EQ(rot.cycles().front(), (std::vector<PointId>{0, 1, 2}));
}

TEST(Grid, ValuesSubMinimalAndSentinel) {
    auto g = threshold_grid(rotation3());
    EXPECT_EQ(g.values, (std::vector<Rational>{0, Rational(1, 4), Rational(1, 2), 1}));
    EXPECT_EQ(g.sub_minimal, Rational(1, 4));
    EXPECT_EQ(g.sentinel, Rational(2));
    EXPECT_EQ(g.candidates(), (std::vector<Rational>{Rational(1, 4), Rational(1, 2), 1, 2}));
}

TEST(Balls, OpenVersusClosed) {
    auto sys = rotation3();
    EXPECT_EQ(sys.ball(0, Rational(1, 2)).count(), 1u);
    EXPECT_EQ(sys.closed_ball(0, Rational(1, 2)).count(), 2u);
    EXPECT_EQ(sys.ball(1, 1).count(), 3u);
}

TEST(Lasso, IndexingBothSides) {
    auto l = Lasso::two_sided({7}, {1, 2}, std::vector<PointId>{5, 6});
    EXPECT_EQ(l.at(0), 7u);
    EXPECT_EQ(l.unroll(1, 5), (std::vector<PointId>{1, 2, 1, 2}));
    EXPECT_EQ(l.at(-1), 6u);
    EXPECT_EQ(l.at(-2), 5u);
    EXPECT_EQ(l.at(-3), 6u);
    EXPECT_THROW(Lasso::one_sided({}, {1}).at(-1), std::out_of_range);
    EXPECT_THROW(Lasso::one_sided({1}, {}), std::invalid_argument);
}

TEST(Lasso, TransitionsCoverTheSeams) {
    auto l = Lasso::two_sided({0}, {1, 2});
    const auto t = l.transitions();
    // stem->cycle, two cycle steps, past->stem
    EXPECT_EQ(t.size(), 4u);
    EXPECT_NE(std::find(t.begin(), t.end(), std::make_pair(PointId{2}, PointId{0})), t.end());
}

TEST(PseudoOrbits, StrictStepBound) {
    auto sys = rotation3();
    auto skip = Lasso::periodic({0, 2});  // f(0)=1 vs 2, f(2)=0 vs 0
    EXPECT_EQ(max_step_error(sys, skip), Rational(1, 2));
    EXPECT_FALSE(is_pseudo_orbit(sys, skip, Rational(1, 2)));
    EXPECT_TRUE(is_pseudo_orbit(sys, skip, Rational(3, 4)));
    EXPECT_EQ(is_periodic_pseudo_orbit(sys, skip, 1), std::optional<std::size_t>(2));
    EXPECT_FALSE(is_periodic_pseudo_orbit(sys, Lasso::one_sided({0}, {1, 2}), 1));
}

TEST(Shadows, MatchesHandTracking) {
    auto sys = rotation3();
    auto skip = Lasso::periodic({0, 2});
    for (PointId x = 0; x < 3; ++x) {
        for (auto eps : {Rational(1, 2), Rational(3, 4), Rational(2)}) {
            EXPECT_EQ(shadows(sys, x, skip, eps), oracle::tracks(sys, x, {}, {0, 2}, eps)) << x << " " << eps;
        }
    }
    EXPECT_THROW(shadows(tail3(), 0, Lasso::periodic({0}, Sidedness::two_sided), 1), NotInvertible);
}

TEST(Shadows, OrbitLassoIsShadowedAtAnyPositiveRadius) {
    gen::Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto sys = gen::any_system(rng, 2, 7);
        for (PointId x = 0; x < sys.size(); ++x) {
            const auto side = sys.invertible() ? Sidedness::two_sided : Sidedness::one_sided;
            const auto l = orbit_lasso(sys, x, side);
            EXPECT_TRUE(is_pseudo_orbit(sys, l, threshold_grid(sys).sub_minimal));
            EXPECT_TRUE(shadows(sys, x, l, threshold_grid(sys).sub_minimal));
        }
    }
}

TEST(Relation, MustContainTheMap) {
    auto sys = tail3();
    EXPECT_THROW(sys.with_relation({{0}, {2}, {2}}, "bad"), Error);
    auto r = sys.with_relation({{1, 0}, {2}, {2, 1}}, "test");
    EXPECT_TRUE(r.has_relation());
    EXPECT_EQ(r.successors(2), (std::vector<PointId>{1, 2}));
    EXPECT_EQ(r.origin(), "test");
}
