#pragma once

#include <string>

#include "indmodel/model_io.hpp"
#include "indmodel/reduction.hpp"

// Relation file schema (JSON):
//
//   relation := { "relation": [pair, ...]
//                 [, "provenance": "theorem-recipe" | "user-supplied"]
//                 [, "heuristic": bool] [, "tie_break": string] [, "note": string] }
//             | [pair, ...]
//   pair     := { "x": n, "set": [n, ...] }
//
// Sets are strictly increasing lists of naturals and may be empty. Each x
// appears at most once.

namespace indmodel {

namespace io_detail {

inline std::map<Int, NatSet> read_pairs(const Cursor& c) {
    std::map<Int, NatSet> out;
    std::size_t n = c.array_size();
    for (std::size_t i = 0; i < n; ++i) {
        Cursor p = c.at(i);
        p.only_keys({"x", "set"});
        Int x = p.at("x").natural();
        if (!out.emplace(x, p.at("set").increasing_naturals()).second) {
            p.at("x").fail("duplicate entry for " + std::to_string(x));
        }
    }
    return out;
}

}  // namespace io_detail

inline ReductionRelation relation_from_json(const Json& j) {
    io_detail::Cursor root(j, "");
    ReductionRelation r;
    r.provenance = Provenance::user_supplied;
    if (j.is_array()) {
        r.images = io_detail::read_pairs(root);
        return r;
    }
    root.only_keys({"relation", "provenance", "heuristic", "tie_break", "note"});
    r.images = io_detail::read_pairs(root.at("relation"));
    if (root.has("provenance")) {
        std::string p = root.at("provenance").string();
        if (p == "theorem-recipe") {
            r.provenance = Provenance::theorem_recipe;
        } else if (p != "user-supplied") {
            root.at("provenance").fail("expected 'theorem-recipe' or 'user-supplied'");
        }
    }
    if (root.has("heuristic")) {
        r.heuristic = root.at("heuristic").boolean();
    }
    if (root.has("tie_break")) {
        r.tie_break = root.at("tie_break").string();
    }
    if (root.has("note")) {
        r.note = root.at("note").string();
    }
    return r;
}

inline ReductionRelation parse_relation(std::string_view text) {
    return relation_from_json(parse_json_text(text));
}

inline ReductionRelation load_relation(const std::string& path) {
    try {
        return parse_relation(read_text_file(path));
    } catch (const SchemaError& e) {
        throw e.in_file(path);
    }
}

inline OrderedJson to_json(const ReductionRelation& r) {
    OrderedJson j;
    j["provenance"] = to_string(r.provenance);
    j["heuristic"] = r.heuristic;
    j["tie_break"] = r.tie_break;
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    OrderedJson pairs = OrderedJson::array();
    for (const auto& [x, s] : r.images) {
        OrderedJson p;
        p["x"] = x;
        p["set"] = s;
        pairs.push_back(p);
    }
    j["relation"] = pairs;
    return j;
}

/// Like to_json(r).dump(2), but with one pair per line.
inline std::string serialize_relation(const ReductionRelation& r) {
    OrderedJson j = to_json(r);
    std::string out = "{\n";
    for (const auto& item : j.items()) {
        if (item.key() == "relation") {
            continue;
        }
        out += "  " + OrderedJson(item.key()).dump() + ": " + item.value().dump() + ",\n";
    }
    out += "  \"relation\": [";
    const OrderedJson& pairs = j["relation"];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += (i == 0 ? "\n    " : ",\n    ") + pairs[i].dump();
    }
    out += pairs.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace indmodel
