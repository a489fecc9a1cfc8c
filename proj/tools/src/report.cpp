#include "dynlab/app/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef DYNLAB_VERSION
#define DYNLAB_VERSION "0.0.0"
#endif

namespace dynlab::app {

std::string tool_version() { return DYNLAB_VERSION; }

Json to_json(const Report& report) {
    Json out;
    out["tool"] = "dynlab";
    out["version"] = tool_version();
    out["command"] = report.command;
    out["system_digest"] = report.digest.empty() ? Json(nullptr) : Json(report.digest);
    out["parameters"] = report.parameters;
    out["results"] = report.results;
    out["hypotheses"] = report.hypotheses;
    if (report.wall_time_ms) out["wall_time_ms"] = *report.wall_time_ms;
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

void emit_report(const Report& report, const std::string& path) { write_text(path, to_json(report).dump(2) + "\n"); }

Json modulus_json(const ModulusTable& table) {
    Json out;
    out["property"] = to_string(table.property);
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["epsilon"] = rational_text(row.epsilon);
        r["delta"] = optional_rational(row.delta);
        if (table.property == ModulusProperty::local_weak_spec || table.property == ModulusProperty::local_spec) {
            r["N"] = row.delta ? Json(row.N) : Json(nullptr);
        }
        rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
    return out;
}

std::string modulus_csv(const ModulusTable& table) {
    std::ostringstream out;
    out << "epsilon,delta,N\n";
    for (const auto& row : table.rows) {
        out << rational_text(row.epsilon) << ',';
        if (row.delta) out << rational_text(*row.delta) << ',' << row.N;
        else out << ',';
        out << '\n';
    }
    return out.str();
}

SearchOptions options_from_env() {
    SearchOptions options;
    if (const char* cap = std::getenv("DYNLAB_SUBSET_CAP"); cap != nullptr && *cap != '\0') {
        char* end = nullptr;
        const auto value = std::strtoull(cap, &end, 10);
        if (end == cap || *end != '\0' || value == 0) throw Error("DYNLAB_SUBSET_CAP must be a positive integer");
        options.subset_cap = static_cast<std::size_t>(value);
    }
    return options;
}

}  // namespace dynlab::app
