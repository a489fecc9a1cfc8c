#include <gtest/gtest.h>

#include "dynlab/gallery.hpp"
#include "dynlab/recurrence.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dynlab;

namespace {

std::vector<bool> as_bools(const PointSet& s) {
    std::vector<bool> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s.test(i);
    return out;
}

FiniteSystem discrete_rotation(std::size_t n) {
    DistanceMatrix d(n, std::vector<Rational>(n, 1));
    std::vector<std::string> names;
    std::vector<PointId> map;
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        names.push_back("r" + std::to_string(i));
        map.push_back(static_cast<PointId>((i + 1) % n));
    }
    return FiniteSystem::build(names, d, map, true);
}

}  // namespace

TEST(ChainRecurrence, AgreesWithWarshall) {
    gen::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto sys = gen::any_system(rng, 1, 8);
        auto cr = chain_recurrent_set(sys);
        EXPECT_EQ(as_bools(cr.set), oracle::chain_recurrent(sys));
        for (const auto& [d, at] : cr.per_delta) EXPECT_EQ(as_bools(at), oracle::chain_recurrent_at(sys, d));
    }
}

TEST(ChainRecurrence, WindowSystemsUseTheRelation) {
    auto sys = window_system(build_xpq(3, 2), 1);
    EXPECT_EQ(as_bools(chain_recurrent_set(sys).set), oracle::chain_recurrent(sys));
    EXPECT_EQ(as_bools(nonwandering_set(sys)), oracle::nonwandering(sys));
    EXPECT_EQ(nonwandering_set(sys).count(), sys.size());
}

TEST(Nonwandering, AgreesWithImageIteration) {
    gen::Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        auto sys = gen::any_system(rng, 1, 8);
        const auto omega = nonwandering_set(sys);
        EXPECT_EQ(as_bools(omega), oracle::nonwandering(sys));
        const auto cr = chain_recurrent_set(sys).set;
        EXPECT_TRUE(omega.is_subset_of(cr));
        for (auto p : sys.periodic_points()) EXPECT_TRUE(omega.test(p));
    }
}

TEST(BasicSets, RotationIsOneCyclicPiece) {
    auto sys = discrete_rotation(4);
    auto dec = spectral_decomposition(sys);
    ASSERT_EQ(dec.basic_sets.size(), 1u);
    const auto& b = dec.basic_sets.front();
    EXPECT_EQ(b.cyclic.period, 4u);
    EXPECT_EQ(b.cyclic.parts.size(), 4u);
    for (bool m : b.mixing) EXPECT_TRUE(m);
    EXPECT_TRUE(b.transitive);
    EXPECT_TRUE(verify_decomposition(sys, dec).empty());
    EXPECT_TRUE(same_partition(dec, spectral_decomposition_cp(sys)));
    EXPECT_EQ(dec.provenance, "scc-oracle");
}

TEST(BasicSets, FarApartFixedPointsSeparate) {
    auto sys = FiniteSystem::build({"a", "b", "c"}, {{0, 4, 4}, {4, 0, 1}, {4, 1, 0}}, {0, 1, 1});
    auto sets = basic_sets(sys);
    ASSERT_EQ(sets.size(), 2u);
    EXPECT_EQ(sets[0], std::vector<PointId>{0});
    EXPECT_EQ(sets[1], std::vector<PointId>{1});
}

TEST(Cyclic, PeriodMatchesMatrixPowers) {
    gen::Rng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        auto sys = gen::any_system(rng, 2, 8);
        for (const auto& b : basic_sets(sys)) {
            auto cyc = cyclic_decomposition(sys, b);
            auto g = induced_subgraph(dynamics_graph(sys), b);
            EXPECT_EQ(cyc.period, oracle::period_by_powers(g));
            std::size_t total = 0;
            for (const auto& part : cyc.parts) total += part.size();
            EXPECT_EQ(total, b.size());
        }
    }
}

TEST(Decomposition, InvariantsHoldOnRandomSystems) {
    gen::Rng rng(44);
    for (int trial = 0; trial < 60; ++trial) {
        auto sys = gen::any_system(rng, 1, 8);
        auto dec = spectral_decomposition(sys);
        EXPECT_TRUE(verify_decomposition(sys, dec).empty()) << trial;
        auto cp = spectral_decomposition_cp(sys);
        EXPECT_TRUE(verify_decomposition(sys, cp).empty()) << trial;
        if (diagnose_spectral_hypotheses(sys).passes()) EXPECT_TRUE(same_partition(dec, cp)) << trial;
    }
}

TEST(Decomposition, VerifierCatchesTampering) {
    auto sys = discrete_rotation(4);
    auto dec = spectral_decomposition(sys);
    std::swap(dec.basic_sets[0].cyclic.parts[1], dec.basic_sets[0].cyclic.parts[2]);
    EXPECT_FALSE(verify_decomposition(sys, dec).empty());
    auto dropped = spectral_decomposition(sys);
    dropped.basic_sets[0].cyclic.parts.pop_back();
    EXPECT_FALSE(verify_decomposition(sys, dropped).empty());
}

TEST(Hypotheses, RotationPassesSmeAndShadowing) {
    auto h = diagnose_spectral_hypotheses(discrete_rotation(3));
    EXPECT_TRUE(h.homeomorphism);
    EXPECT_TRUE(h.shadowing_populated);
    EXPECT_TRUE(h.sme_constant.has_value());
    EXPECT_TRUE(h.passes());
    auto tail = FiniteSystem::build({"a", "b"}, {{0, 1}, {1, 0}}, {1, 1});
    EXPECT_FALSE(diagnose_spectral_hypotheses(tail).homeomorphism);
}

TEST(CpConstruction, RotationPartsAreSingletons) {
    auto sys = discrete_rotation(3);
    std::vector<PointId> all{0, 1, 2};
    auto c = cp_construction(sys, all, 0);
    EXPECT_EQ(c.count(), 1u);
    EXPECT_TRUE(c.test(0));
    EXPECT_EQ(periodic_orbit_in(sys, all, 1), (std::vector<PointId>{1, 2, 0}));
    EXPECT_EQ(cp_partition(sys, all).parts.size(), 3u);
}

TEST(Mixing, CoprimeLoopsMix) {
    auto sys = window_system(build_xpq(3, 2), 2);
    auto dec = spectral_decomposition(sys);
    ASSERT_EQ(dec.basic_sets.size(), 1u);
    EXPECT_EQ(dec.basic_sets[0].cyclic.period, 1u);
    EXPECT_TRUE(dec.basic_sets[0].mixing[0]);
    EXPECT_TRUE(is_transitive(sys, dec.basic_sets[0].points));
}

TEST(Symbolic, ComponentsAndPeriods) {
    using Edges = std::vector<std::pair<std::string, std::string>>;
    Edges e{{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "c"}};
    auto sft = build_sft({"a", "b", "c"}, e);
    auto dec = spectral_decomposition(sft);
    ASSERT_EQ(dec.components.size(), 2u);
    EXPECT_EQ(dec.cyclic[0].period, 2u);
    EXPECT_EQ(dec.cyclic[1].period, 1u);
    EXPECT_TRUE(dec.mixing[1][0]);
}
