// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// (rational arithmetic, boolean agreement), so the pinned tolerance is zero
// throughout. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "dynlab/expansive.hpp"
#include "dynlab/gallery.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/specification.hpp"
#include "oracles.hpp"

using namespace dynlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Instance {
    std::string name;
    FiniteSystem sys;
};

std::vector<Instance> random_instances(std::uint64_t first, std::size_t count, std::size_t lo, std::size_t hi) {
    std::vector<Instance> out;
    for (std::uint64_t seed = first; seed < first + count; ++seed) {
        const auto size = lo + static_cast<std::size_t>(seed % (hi - lo + 1));
        const bool inv = seed % 2 == 1;
        out.push_back({"random(" + std::to_string(seed) + "," + std::to_string(size) + (inv ? ",inv)" : ")"),
                       build_random_system(seed, size, inv)});
    }
    return out;
}

std::vector<Instance> gallery_instances() {
    std::vector<Instance> out;
    out.push_back({"X(3,2) w=1", window_system(build_xpq(3, 2), 1)});
    out.push_back({"X(3,2) w=2", window_system(build_xpq(3, 2), 2)});
    out.push_back({"X(2,1) w=1", window_system(build_xpq(2, 1), 1)});
    out.push_back({"X(5,3) w=1", window_system(build_xpq(5, 3), 1)});
    out.push_back({"product(2,3,5) w=1", window_system(build_product_truncation({2, 3, 5}, 2), 1)});
    out.push_back({"myex(5,3)", build_myex(5, 3).system});
    return out;
}

Outcome criterion1() {
    auto systems = random_instances(0, 24, 3, 8);
    systems.push_back({"X(3,2) w=1", window_system(build_xpq(3, 2), 1)});
    systems.push_back({"X(3,2) w=2", window_system(build_xpq(3, 2), 2)});
    std::size_t rows = 0, mismatches = 0;
    std::string first;
    for (const auto& [name, sys] : systems) {
        const auto shadow = shadowing_table(sys);
        const auto lws = modulus_table_for_spec(sys, SpecKind::weak, 2, 3);
        for (std::size_t i = 0; i < shadow.rows.size(); ++i) {
            ++rows;
            if (shadow.rows[i].delta.has_value() != lws.rows[i].delta.has_value()) {
                ++mismatches;
                if (first.empty()) first = name + " eps=" + to_string(shadow.rows[i].epsilon);
            }
        }
    }
    return {mismatches == 0, std::to_string(systems.size()) + " systems, " + std::to_string(rows) + " rows, " +
                                 std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : " first " + first)};
}

Outcome criterion2() {
    auto systems = random_instances(100, 40, 2, 6);
    systems.push_back({"X(2,1) w=1", window_system(build_xpq(2, 1), 1)});
    std::size_t pairs = 0, disagreements = 0;
    std::string first;
    for (const auto& [name, sys] : systems) {
        if (sys.size() > 6) continue;
        const auto g = oracle::grid(sys);
        for (const auto& d : g)
            for (const auto& e : g) {
                ++pairs;
                if (shadowing_holds(sys, d, e).holds != oracle::shadowing_by_families(sys, d, e, 12)) {
                    ++disagreements;
                    if (first.empty()) first = name + " delta=" + to_string(d) + " eps=" + to_string(e);
                }
            }
    }
    return {disagreements == 0, std::to_string(systems.size()) + " systems, " + std::to_string(pairs) +
                                    " grid pairs, " + std::to_string(disagreements) + " disagreements" +
                                    (first.empty() ? "" : " first " + first)};
}

Outcome criterion3() {
    const auto sft = build_product_truncation({2, 3, 5}, 2);
    const auto sys = window_system(sft, 2);
    const auto r = shadowing_holds(sys, Rational(1, 8), Rational(1, 4));
    bool pass = r.holds;
    std::string traces;
    for (std::size_t n : {2u, 4u, 7u}) {
        const auto t = adjacency_trace(sft, n);
        pass = pass && t == 0 && oracle::closed_walks(sft.graph(), n) == 0;
        traces += " tr(A^" + std::to_string(n) + ")=" + std::to_string(t);
    }
    return {pass, std::to_string(sys.size()) + " window points, shadowing(1/8,1/4)=" + (r.holds ? "true" : "false") +
                      " after " + std::to_string(r.states_explored) + " states," + traces};
}

Outcome criterion4() {
    auto systems = random_instances(200, 60, 2, 8);
    std::size_t issues = 0, compared = 0, mismatched = 0;
    std::string first;
    for (const auto& [name, sys] : systems) {
        const auto dec = spectral_decomposition(sys);
        const auto problems = verify_decomposition(sys, dec);
        issues += problems.size();
        if (!problems.empty() && first.empty()) first = name + ": " + problems.front();
        if (diagnose_spectral_hypotheses(sys).passes()) {
            ++compared;
            if (!same_partition(dec, spectral_decomposition_cp(sys))) {
                ++mismatched;
                if (first.empty()) first = name + ": cp partition differs";
            }
        }
    }
    return {issues == 0 && mismatched == 0,
            std::to_string(systems.size()) + " systems, " + std::to_string(issues) + " invariant violations, " +
                std::to_string(compared) + " with passing hypotheses, " + std::to_string(mismatched) +
                " cp mismatches" + (first.empty() ? "" : " first " + first)};
}

Outcome criterion5() {
    const auto m = build_myex(5, 3);
    const auto& sys = m.system;
    const auto grid = oracle::grid(sys);
    std::ostringstream out;
    bool a = true;
    for (std::size_t k = 1; k <= 3; ++k) {
        const Rational threshold(1, static_cast<std::int64_t>(k));
        for (const auto& d : grid) {
            const bool member = gamma_set(sys, m.anchors[k - 1], d).members.test(m.satellites[k - 1][0]);
            a = a && member == (d >= threshold);
        }
        // just below and at the threshold, off the grid as well
        a = a && !gamma_set(sys, m.anchors[k - 1], threshold - Rational(1, 1000)).members.test(m.satellites[k - 1][0]);
        a = a && gamma_set(sys, m.anchors[k - 1], threshold).members.test(m.satellites[k - 1][0]);
    }
    bool b = true;
    for (const auto& d : grid)
        if (d >= Rational(1, 3)) b = b && !expansive_on_per(sys, d);

    const Rational third(1, 3);
    const auto sme = strong_measure_expansive_holds(sys, third);
    std::size_t sat_cycle = sys.cycle_index(m.satellites[2][0]);
    InvariantMeasure uniform;
    uniform.weights.assign(sys.size(), Rational(0));
    for (auto q : m.satellites[2]) uniform.weights[q] = Rational(1, static_cast<std::int64_t>(m.satellites[2].size()));
    bool c = !sme.holds && sme.measure.has_value() && is_invariant(sys, uniform) &&
             !satisfies_strong_measure_condition(sys, third, uniform) &&
             !strong_measure_pair_ok(sys, third, m.anchors[2], sat_cycle);
    bool returned_on_satellites = false;
    if (sme.cycle) {
        const auto& cyc = sys.cycles()[*sme.cycle];
        returned_on_satellites = sys.name(cyc.front()).rfind("q(", 0) == 0;
        c = c && returned_on_satellites;
    }
    bool d = true;
    for (const auto& delta : grid) {
        const auto r = measure_expansive_holds(sys, delta);
        d = d && r.holds && r.vacuous;
    }
    out << "(a) " << (a ? "ok" : "bad") << " (b) " << (b ? "ok" : "bad") << " (c) " << (c ? "ok" : "bad");
    if (sme.point && sme.cycle)
        out << " [x=" << sys.name(*sme.point) << ", mu uniform on orbit of " << sys.name(sys.cycles()[*sme.cycle].front())
            << "]";
    out << " (d) " << (d ? "ok" : "bad") << "; SME constant "
        << (strong_measure_expansive_constant(sys) ? to_string(*strong_measure_expansive_constant(sys)) : "none");
    return {a && b && c && d, out.str()};
}

Outcome criterion6() {
    std::size_t checks = 0, violations = 0;
    std::string first;
    for (const auto& [name, sys] : gallery_instances()) {
        for (const auto& d : oracle::grid(sys)) {
            const bool one = is_n_expansive(sys, 1, d);
            const bool sme = strong_measure_expansive_holds(sys, d).holds;
            const bool me = measure_expansive_holds(sys, d).holds;
            checks += 2;
            if ((one && !sme) || (sme && !me)) {
                ++violations;
                if (first.empty()) first = name + " delta=" + to_string(d);
            }
            for (std::size_t n = 1; n <= 4; ++n) {
                ++checks;
                if (is_n_expansive(sys, n, d) && !is_n_expansive(sys, n + 1, d)) {
                    ++violations;
                    if (first.empty()) first = name + " n=" + std::to_string(n);
                }
            }
        }
    }
    return {violations == 0, std::to_string(checks) + " implications on 6 gallery instances, " +
                                 std::to_string(violations) + " violations" + (first.empty() ? "" : " first " + first)};
}

Outcome criterion7() {
    constexpr std::size_t P = 4;
    auto systems = random_instances(300, 16, 2, 6);
    systems.push_back({"X(3,2) w=1", window_system(build_xpq(3, 2), 1)});
    systems.push_back({"X(2,1) w=1", window_system(build_xpq(2, 1), 1)});
    std::size_t premises = 0, chain_checks = 0, violations = 0;
    std::string first;
    for (const auto& [name, sys] : systems) {
        const auto g = oracle::grid(sys);
        for (const auto& eps : g) {
            for (std::size_t N = 1; N <= 2; ++N) {
                std::optional<Rational> delta;
                for (auto it = g.rbegin(); it != g.rend() && !delta; ++it)
                    if (local_spec_holds(sys, eps / 2, N, *it, P).holds) delta = *it;
                if (!delta) continue;
                ++premises;
                const auto d1 = derived_delta(sys, N, *delta);
                if (!periodic_shadowing_holds(sys, d1, eps, P).holds) {
                    ++violations;
                    if (first.empty()) first = name + " eps=" + to_string(eps) + " N=" + std::to_string(N);
                }
            }
            for (const auto& d : g) {
                ++chain_checks;
                const bool strong = strong_periodic_shadowing_holds(sys, d, eps, P).holds;
                const bool spec = local_spec_holds(sys, eps, 1, d, P, 1).holds;
                const bool per = periodic_shadowing_holds(sys, d, eps, P).holds;
                if ((strong && !spec) || (spec && !per)) {
                    ++violations;
                    if (first.empty()) first = name + " chain at delta=" + to_string(d) + " eps=" + to_string(eps);
                }
            }
        }
    }
    return {violations == 0, std::to_string(systems.size()) + " systems, " + std::to_string(premises) +
                                 " specification premises, " + std::to_string(chain_checks) + " chain pairs, " +
                                 std::to_string(violations) + " violations" + (first.empty() ? "" : " first " + first)};
}

Outcome criterion8() {
    auto systems = random_instances(400, 30, 2, 8);
    for (auto& g : gallery_instances()) systems.push_back(std::move(g));
    std::size_t populated = 0, unequal = 0;
    std::string first;
    for (const auto& [name, sys] : systems) {
        bool all = true;
        for (const auto& row : shadowing_table(sys).rows) all = all && row.delta.has_value();
        if (!all) continue;
        ++populated;
        if (chain_recurrent_set(sys).set != nonwandering_set(sys)) {
            ++unequal;
            if (first.empty()) first = name;
        }
    }
    return {unequal == 0, std::to_string(populated) + " of " + std::to_string(systems.size()) +
                              " instances populated, " + std::to_string(unequal) + " with CR != Omega" +
                              (first.empty() ? "" : " first " + first)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion9() {
    const std::string cli = DYNLAB_CLI;
    const std::string dir = std::string(DYNLAB_WORKDIR) + "/determinism";
    std::filesystem::create_directories(dir);
    const std::string x32 = dir + "/x32.json", rnd = dir + "/rnd.json", myex = dir + "/myex.json";
    // inputs first; their reports are compared like any other command
    const std::vector<std::string> commands{
        "gallery xpq --p 3 --q 2 --emit " + x32,
        "gallery myex --lattice 5 --K 3 --emit " + myex,
        "gallery product --primes 2,3,5 --factors 2 --window 1",
        "check shadowing --system " + x32 + " --window 2 --epsilon 1/4 --delta 1/8",
        "check shadowing --system " + x32 + " --window 1 --epsilon 1/2 --period-bound 4",
        "check spec --system " + x32 + " --window 1 --variant weak --epsilon 1/2 --N 1 --delta 1/4",
        "check spec --system " + x32 + " --window 1 --variant lipschitz --N-max 2",
        "check expansive --system " + myex + " --variant strong-measure --delta 1/3",
        "check expansive --system " + myex + " --variant per --delta 1/3",
        "spectral --system " + x32 + " --window 2",
        "spectral --system " + myex,
        "modulus --system " + x32 + " --window 1 --property local-weak-spec --csv " + dir + "/lws.csv",
        "battery --system " + x32 + " --window 1",
        "battery --system " + myex + " --id hierarchy --id thmD",
    };
    std::size_t identical = 0;
    std::string first;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[2];
        std::string csv[2];
        for (int run = 0; run < 2; ++run) {
            const auto report = dir + "/r" + std::to_string(i) + "_" + std::to_string(run) + ".json";
            const auto line = "'" + cli + "' " + commands[i] + " --no-timing -o '" + report + "' >/dev/null 2>&1";
            const int status = std::system(line.c_str());
            (void)status;  // violation exits are legitimate here; only the bytes matter
            outputs[run] = slurp(report);
            if (commands[i].find("--csv") != std::string::npos) csv[run] = slurp(dir + "/lws.csv");
        }
        if (!outputs[0].empty() && outputs[0] == outputs[1] && csv[0] == csv[1]) ++identical;
        else if (first.empty()) first = commands[i];
    }
    return {identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) +
                                              " commands byte-identical across two runs" +
                                              (first.empty() ? "" : " first difference: " + first)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"shadowing and local weak specification rows populated together", criterion1},
        {"shadowing decision equals brute force over lassos of length <= 12", criterion2},
        {"product window shadows at (1/8, 1/4) with no points of period 2, 4, 7", criterion3},
        {"decomposition invariants and cp partition agreement", criterion4},
        {"cat-map lattice with satellites separates the hierarchy", criterion5},
        {"expansiveness hierarchy implications", criterion6},
        {"specification to periodic shadowing chain", criterion7},
        {"chain recurrent set equals non-wandering set under shadowing", criterion8},
        {"CLI reports are deterministic", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu %s | %s | tolerance 0 (exact) | %s | %.1fs\n", i + 1, o.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed;
}
