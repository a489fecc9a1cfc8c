#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dynlab/app/io.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"

namespace dynlab::app {

struct BatteryOptions {
    std::size_t N_max = 2;
    std::size_t period_bound = 6;
    std::size_t k_bound = 3;
    SearchOptions search;
};

struct BatteryOutcome {
    Json report;
    bool violated = false;
    bool cap_hit = false;
};

const std::vector<std::string>& battery_ids();

Json decomposition_json(const FiniteSystem& sys, const Decomposition& decomposition);
Json hypothesis_json(const HypothesisReport& report);

/// Runs one of thmA, thmB, thmC, thmD, hierarchy. Each law is recorded with
/// its status (pass, fail, not-asserted, cap) and a witness on failure; a
/// state explosion only marks its own cell.
BatteryOutcome run_theorem_battery(const FiniteSystem& sys, const std::string& id, const BatteryOptions& options);

}  // namespace dynlab::app
