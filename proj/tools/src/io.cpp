#include "dynlab/app/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dynlab::app {

namespace {

const Json& require(const Json& node, const std::string& key, const std::string& at) {
    if (!node.is_object()) throw SchemaError(at, "expected an object");
    const auto it = node.find(key);
    if (it == node.end()) throw SchemaError(at + "/" + key, "missing field");
    return *it;
}

std::vector<std::string> string_list(const Json& node, const std::string& at) {
    if (!node.is_array()) throw SchemaError(at, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_string()) throw SchemaError(at + "/" + std::to_string(i), "expected a string");
        out.push_back(node[i].get<std::string>());
    }
    return out;
}

Rational rational_node(const Json& node, const std::string& at) {
    if (node.is_number_integer()) return Rational(node.get<std::int64_t>());
    if (node.is_string()) {
        try {
            return parse_rational(node.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw SchemaError(at, "malformed rational");
        }
    }
    throw SchemaError(at, "expected an integer or a \"p/q\" string");
}

PointId point_node(const Json& node, const std::map<std::string, PointId>& by_name, std::size_t n,
                   const std::string& at) {
    if (node.is_number_unsigned() || (node.is_number_integer() && node.get<std::int64_t>() >= 0)) {
        const auto index = node.get<std::uint64_t>();
        if (index >= n) throw SchemaError(at, "point index out of range");
        return static_cast<PointId>(index);
    }
    if (node.is_string()) {
        const auto it = by_name.find(node.get<std::string>());
        if (it == by_name.end()) throw SchemaError(at, "unknown point name");
        return it->second;
    }
    throw SchemaError(at, "expected a point index or name");
}

SystemFile parse_finite(const Json& doc) {
    auto names = string_list(require(doc, "points", ""), "/points");
    const auto n = names.size();
    if (n == 0) throw SchemaError("/points", "a system needs at least one point");
    std::map<std::string, PointId> by_name;
    for (PointId i = 0; i < n; ++i) {
        if (!by_name.emplace(names[i], i).second) throw SchemaError("/points/" + std::to_string(i), "duplicate point");
    }

    const auto& dist_node = require(doc, "dist", "");
    if (!dist_node.is_array() || dist_node.size() != n) throw SchemaError("/dist", "expected an n x n array");
    DistanceMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto at = "/dist/" + std::to_string(i);
        if (!dist_node[i].is_array() || dist_node[i].size() != n) throw SchemaError(at, "expected a row of length n");
        for (std::size_t j = 0; j < n; ++j) dist[i].push_back(rational_node(dist_node[i][j], at + "/" + std::to_string(j)));
    }

    const auto& map_node = require(doc, "map", "");
    if (!map_node.is_array() || map_node.size() != n) throw SchemaError("/map", "expected one image per point");
    std::vector<PointId> map;
    for (std::size_t i = 0; i < n; ++i) map.push_back(point_node(map_node[i], by_name, n, "/map/" + std::to_string(i)));

    std::optional<bool> hint;
    if (const auto it = doc.find("invertible"); it != doc.end()) {
        if (!it->is_boolean()) throw SchemaError("/invertible", "expected a boolean");
        hint = it->get<bool>();
    }

    SystemFile out;
    auto sys = FiniteSystem::build(names, std::move(dist), std::move(map), hint);
    if (const auto it = doc.find("relation"); it != doc.end()) {
        if (!it->is_array() || it->size() != n) throw SchemaError("/relation", "expected one successor list per point");
        Relation relation(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto at = "/relation/" + std::to_string(i);
            if (!(*it)[i].is_array()) throw SchemaError(at, "expected an array");
            for (std::size_t j = 0; j < (*it)[i].size(); ++j) {
                relation[i].push_back(point_node((*it)[i][j], by_name, n, at + "/" + std::to_string(j)));
            }
        }
        std::string origin = "file";
        if (const auto o = doc.find("origin"); o != doc.end() && o->is_string()) origin = o->get<std::string>();
        try {
            sys = sys.with_relation(std::move(relation), origin);
        } catch (const Error& e) {
            throw SchemaError("/relation", e.what());
        }
    }
    out.finite = std::move(sys);
    out.canonical = to_json(*out.finite);
    return out;
}

SystemFile parse_sft(const Json& doc) {
    auto alphabet = string_list(require(doc, "alphabet", ""), "/alphabet");
    const auto& edges_node = require(doc, "edges", "");
    if (!edges_node.is_array()) throw SchemaError("/edges", "expected an array of pairs");
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < edges_node.size(); ++i) {
        const auto at = "/edges/" + std::to_string(i);
        const auto pair = string_list(edges_node[i], at);
        if (pair.size() != 2) throw SchemaError(at, "expected a pair of symbols");
        edges.emplace_back(pair[0], pair[1]);
    }
    SystemFile out;
    try {
        out.sft = build_sft(std::move(alphabet), edges);
    } catch (const EmptyShift&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError("/edges", e.what());
    }
    out.canonical = to_json(*out.sft);
    return out;
}

}  // namespace

SystemFile parse_system(const Json& document) {
    // "kind" is read as an older spelling of "type"
    const char* field = document.is_object() && !document.contains("type") && document.contains("kind") ? "kind" : "type";
    const auto& kind = require(document, field, "");
    const auto at = std::string("/") + field;
    if (!kind.is_string()) throw SchemaError(at, "expected a string");
    if (kind == "finite") return parse_finite(document);
    if (kind == "sft") return parse_sft(document);
    throw SchemaError(at, "expected \"finite\" or \"sft\"");
}

SystemFile parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_system(doc);
}

FiniteSystem resolve(const SystemFile& file, std::size_t window) {
    if (file.finite) return *file.finite;
    return window_system(*file.sft, window);
}

std::string rational_text(const Rational& value) { return to_string(value); }

Json optional_rational(const std::optional<Rational>& value) {
    return value ? Json(rational_text(*value)) : Json(nullptr);
}

Json to_json(const FiniteSystem& sys) {
    Json out;
    out["type"] = "finite";
    out["points"] = sys.names();
    Json dist = Json::array();
    for (const auto& row : sys.dist()) {
        Json r = Json::array();
        for (const auto& d : row) r.push_back(rational_text(d));
        dist.push_back(std::move(r));
    }
    out["dist"] = std::move(dist);
    out["map"] = sys.map();
    out["invertible"] = sys.invertible();
    if (sys.has_relation()) {
        out["relation"] = *sys.relation();
        out["origin"] = sys.origin();
    }
    return out;
}

Json to_json(const Sft& sft) {
    Json out;
    out["type"] = "sft";
    out["alphabet"] = sft.alphabet();
    Json edges = Json::array();
    for (const auto& [a, b] : sft.edges()) edges.push_back(Json::array({a, b}));
    out["edges"] = std::move(edges);
    return out;
}

std::string digest(const Json& canonical) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : canonical.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json point_names(const FiniteSystem& sys, const std::vector<PointId>& points) {
    Json out = Json::array();
    for (const auto p : points) out.push_back(sys.name(p));
    return out;
}

Json lasso_json(const FiniteSystem& sys, const Lasso& lasso) {
    Json out;
    out["sidedness"] = lasso.two_sided() ? "two-sided" : "one-sided";
    if (lasso.two_sided() && lasso.has_distinct_past()) out["past"] = point_names(sys, lasso.past());
    out["stem"] = point_names(sys, lasso.stem());
    out["cycle"] = point_names(sys, lasso.cycle());
    return out;
}

std::vector<PointId> parse_points(const FiniteSystem& sys, const std::string& names) {
    std::map<std::string, PointId> by_name;
    for (PointId i = 0; i < sys.size(); ++i) by_name.emplace(sys.name(i), i);
    std::vector<PointId> out;
    std::stringstream in(names);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto it = by_name.find(item);
        if (it == by_name.end()) throw SchemaError("", "unknown point '" + item + "'");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace dynlab::app
