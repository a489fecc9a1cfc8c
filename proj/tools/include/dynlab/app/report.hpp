#pragma once

#include <optional>
#include <string>

#include "dynlab/app/io.hpp"
#include "dynlab/shadowing.hpp"

namespace dynlab::app {

enum ExitCode : int { ok = 0, violation = 1, input_error = 2, resource_cap = 3 };

struct Report {
    std::string command;
    std::string digest;
    Json parameters = Json::object();
    Json results = Json::object();
    Json hypotheses = nullptr;
    std::optional<double> wall_time_ms;  // left out of the file when empty
};

std::string tool_version();

Json to_json(const Report& report);

/// Writes the JSON report followed by a newline; "-" means stdout.
void emit_report(const Report& report, const std::string& path);

Json modulus_json(const ModulusTable& table);

/// epsilon,delta,N with exact "p/q" cells; empty delta when the row is unpopulated.
std::string modulus_csv(const ModulusTable& table);

void write_text(const std::string& path, const std::string& text);

/// Default search limits, with DYNLAB_SUBSET_CAP overriding the subset cap.
SearchOptions options_from_env();

}  // namespace dynlab::app
