#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynlab/core.hpp"
#include "dynlab/errors.hpp"
#include "dynlab/symbolic.hpp"

namespace dynlab::app {

using Json = nlohmann::ordered_json;

/// Malformed system file; `pointer` is the JSON pointer of the offending node.
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error(what + " at " + (pointer.empty() ? std::string("/") : pointer)), pointer(std::move(pointer)) {}
    std::string pointer;
};

/// A parsed system file: either a finite metric system or a vertex shift.
struct SystemFile {
    std::optional<FiniteSystem> finite;
    std::optional<Sft> sft;
    Json canonical;  // re-serialized input, used for the digest

    bool is_sft() const { return sft.has_value(); }
};

/// Finite schema:
///   {"type": "finite", "points": [...], "dist": [["0", "1/2"], ...],
///    "map": [1, 0] or ["b", "a"], "invertible"?: bool,
///    "relation"?: [[...], ...], "origin"?: "..."}
/// SFT schema:
///   {"type": "sft", "alphabet": [...], "edges": [["0", "1"], ...]}
/// Distances may be integers or "p/q" strings.
SystemFile parse_system(const Json& document);
SystemFile parse_system_file(const std::string& path);

/// The finite system to analyse: SFT files go through the window truncation.
FiniteSystem resolve(const SystemFile& file, std::size_t window);

Json to_json(const FiniteSystem& sys);
Json to_json(const Sft& sft);

/// FNV-1a 64 over the compact dump of the canonical JSON, as 16 hex digits.
std::string digest(const Json& canonical);

std::string rational_text(const Rational& value);
Json optional_rational(const std::optional<Rational>& value);
Json point_names(const FiniteSystem& sys, const std::vector<PointId>& points);
Json lasso_json(const FiniteSystem& sys, const Lasso& lasso);

/// Looks up comma-separated point names.
std::vector<PointId> parse_points(const FiniteSystem& sys, const std::string& names);

}  // namespace dynlab::app
