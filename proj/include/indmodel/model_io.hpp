#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "indmodel/error.hpp"
#include "indmodel/model.hpp"

// Model file schema (JSON):
//
//   model   := { "base": setspec, "gen": genfn [, "description": string] }
//   setspec := { "kind": "finite",   "elements": [n, ...] }
//            | { "kind": "cofinite", "excluded": [n, ...] }
//            | { "kind": "primes",   "include_one": bool }
//            | { "kind": "interval", "lo": n, "hi": n }
//   genfn   := { "kind": "multilinear", "arity": k, "terms": terms }
//            | { "kind": "piecewise", "arity": k,
//                "cases": [ { "coord": i, "equals": int, "body": terms }, ... ],
//                "default": terms }
//            | { "kind": "min_compose" | "max_compose", "arity": k, "inner": genfn }
//   terms   := [ { "vars": [i, ...], "c": int }, ... ]
//
// Variable and coordinate indices are 1-based. Lists of naturals are
// strictly increasing. Each variable subset appears at most once per term
// list; omitted subsets have coefficient 0.

namespace indmodel {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace io_detail {

class Cursor {
public:
    Cursor(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const Json& node() const { return node_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const { throw SchemaError(path_, message); }

    Cursor at(const std::string& key) const {
        if (!node_.is_object()) {
            fail("expected an object");
        }
        auto it = node_.find(key);
        if (it == node_.end()) {
            fail("missing required field '" + key + "'");
        }
        return Cursor(*it, path_ + "/" + key);
    }

    Cursor at(std::size_t i) const { return Cursor(node_.at(i), path_ + "/" + std::to_string(i)); }

    bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

    void only_keys(std::initializer_list<std::string_view> allowed) const {
        if (!node_.is_object()) {
            fail("expected an object");
        }
        for (const auto& item : node_.items()) {
            bool ok = false;
            for (auto a : allowed) {
                ok = ok || item.key() == a;
            }
            if (!ok) {
                Cursor(item.value(), path_ + "/" + item.key()).fail("unexpected field");
            }
        }
    }

    Int integer() const {
        if (!node_.is_number_integer()) {
            fail("expected an integer");
        }
        if (node_.is_number_unsigned() && node_.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            fail("integer exceeds the exact 64-bit range");
        }
        return node_.get<Int>();
    }

    Int natural() const {
        Int v = integer();
        if (v < 1) {
            fail("expected a natural number (>= 1)");
        }
        return v;
    }

    bool boolean() const {
        if (!node_.is_boolean()) {
            fail("expected true or false");
        }
        return node_.get<bool>();
    }

    std::string string() const {
        if (!node_.is_string()) {
            fail("expected a string");
        }
        return node_.get<std::string>();
    }

    std::size_t array_size() const {
        if (!node_.is_array()) {
            fail("expected an array");
        }
        return node_.size();
    }

    NatSet increasing_naturals() const {
        NatSet out;
        std::size_t n = array_size();
        for (std::size_t i = 0; i < n; ++i) {
            Int v = at(i).natural();
            if (!out.empty() && v <= out.back()) {
                at(i).fail("list must be strictly increasing");
            }
            out.push_back(v);
        }
        return out;
    }

private:
    const Json& node_;
    std::string path_;
};

inline SetSpec read_set(const Cursor& c) {
    std::string kind = c.at("kind").string();
    if (kind == "finite") {
        c.only_keys({"kind", "elements"});
        NatSet xs = c.at("elements").increasing_naturals();
        if (xs.empty()) {
            c.at("elements").fail("finite base set must be non-empty");
        }
        return SetSpec::finite(std::move(xs));
    }
    if (kind == "cofinite") {
        c.only_keys({"kind", "excluded"});
        return SetSpec::cofinite(c.at("excluded").increasing_naturals());
    }
    if (kind == "primes") {
        c.only_keys({"kind", "include_one"});
        return SetSpec::primes(c.at("include_one").boolean());
    }
    if (kind == "interval") {
        c.only_keys({"kind", "lo", "hi"});
        Int lo = c.at("lo").natural();
        Int hi = c.at("hi").natural();
        if (hi < lo) {
            c.at("hi").fail("interval upper end below lower end");
        }
        return SetSpec::interval(lo, hi);
    }
    c.at("kind").fail("unknown set kind '" + kind + "'");
}

inline int read_arity(const Cursor& c) {
    Int k = c.integer();
    if (k < 1 || k > kMaxArity) {
        c.fail("arity must lie in [1, " + std::to_string(kMaxArity) + "]");
    }
    return static_cast<int>(k);
}

inline Multilinear read_terms(const Cursor& c, int arity) {
    std::vector<Term> terms;
    std::set<VarMask> seen;
    std::size_t n = c.array_size();
    for (std::size_t i = 0; i < n; ++i) {
        Cursor t = c.at(i);
        t.only_keys({"vars", "c"});
        Cursor vars = t.at("vars");
        VarMask mask = 0;
        std::size_t nv = vars.array_size();
        for (std::size_t j = 0; j < nv; ++j) {
            Int v = vars.at(j).natural();
            if (v > arity) {
                vars.at(j).fail("variable index " + std::to_string(v) + " exceeds arity " +
                                std::to_string(arity));
            }
            VarMask bit = var_bit(static_cast<int>(v - 1));
            if (mask & bit) {
                vars.at(j).fail("variable listed twice in one monomial");
            }
            mask |= bit;
        }
        if (!seen.insert(mask).second) {
            vars.fail("coefficient subset appears more than once");
        }
        terms.push_back({mask, t.at("c").integer()});
    }
    return Multilinear(arity, std::move(terms));
}

inline GenFn read_gen(const Cursor& c) {
    std::string kind = c.at("kind").string();
    if (kind == "multilinear") {
        c.only_keys({"kind", "arity", "terms"});
        int k = read_arity(c.at("arity"));
        return read_terms(c.at("terms"), k);
    }
    if (kind == "piecewise") {
        c.only_keys({"kind", "arity", "cases", "default"});
        int k = read_arity(c.at("arity"));
        Cursor cases = c.at("cases");
        std::vector<Piecewise::Case> out;
        std::set<std::pair<Int, Int>> guards;
        std::size_t n = cases.array_size();
        for (std::size_t i = 0; i < n; ++i) {
            Cursor cs = cases.at(i);
            cs.only_keys({"coord", "equals", "body"});
            Int coord = cs.at("coord").natural();
            if (coord > k) {
                cs.at("coord").fail("guard coordinate exceeds arity");
            }
            Int equals = cs.at("equals").integer();
            if (!guards.emplace(coord, equals).second) {
                cs.fail("duplicate guard");
            }
            out.push_back({static_cast<int>(coord - 1), equals, read_terms(cs.at("body"), k)});
        }
        return Piecewise(k, std::move(out), read_terms(c.at("default"), k));
    }
    if (kind == "min_compose" || kind == "max_compose") {
        c.only_keys({"kind", "arity", "inner"});
        int k = read_arity(c.at("arity"));
        GenFn inner = read_gen(c.at("inner"));
        if (inner.arity() != 1) {
            c.at("inner").fail("inner function must be unary");
        }
        auto pick = kind == "min_compose" ? ExtremumCompose::Pick::min : ExtremumCompose::Pick::max;
        return ExtremumCompose(pick, k, std::move(inner));
    }
    c.at("kind").fail("unknown generating-function kind '" + kind + "'");
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace io_detail

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        auto [line, col] = io_detail::line_column(text, e.byte);
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw SchemaError("", pos == std::string::npos ? what : what.substr(pos), line, col);
    }
}

inline SetSpec set_from_json(const Json& j, const std::string& path = "") {
    return io_detail::read_set(io_detail::Cursor(j, path));
}

inline GenFn gen_from_json(const Json& j, const std::string& path = "") {
    return io_detail::read_gen(io_detail::Cursor(j, path));
}

inline InductionModel model_from_json(const Json& j) {
    io_detail::Cursor root(j, "");
    root.only_keys({"base", "gen", "description"});
    if (root.has("description")) {
        root.at("description").string();
    }
    return InductionModel{io_detail::read_set(root.at("base")), io_detail::read_gen(root.at("gen"))};
}

inline InductionModel parse_model(std::string_view text) { return model_from_json(parse_json_text(text)); }

inline OrderedJson to_json(const SetSpec& s) {
    return std::visit(
        [](const auto& f) -> OrderedJson {
            using T = std::decay_t<decltype(f)>;
            OrderedJson j;
            if constexpr (std::is_same_v<T, SetSpec::Finite>) {
                j["kind"] = "finite";
                j["elements"] = f.elements;
            } else if constexpr (std::is_same_v<T, SetSpec::Cofinite>) {
                j["kind"] = "cofinite";
                j["excluded"] = f.excluded;
            } else if constexpr (std::is_same_v<T, SetSpec::Primes>) {
                j["kind"] = "primes";
                j["include_one"] = f.include_one;
            } else {
                j["kind"] = "interval";
                j["lo"] = f.lo;
                j["hi"] = f.hi;
            }
            return j;
        },
        s.form());
}

inline OrderedJson terms_to_json(const Multilinear& f) {
    OrderedJson terms = OrderedJson::array();
    for (const Term& t : f.terms()) {
        OrderedJson vars = OrderedJson::array();
        for (int j = 0; j < f.arity(); ++j) {
            if (t.vars & var_bit(j)) {
                vars.push_back(j + 1);
            }
        }
        OrderedJson term;
        term["vars"] = vars;
        term["c"] = t.coeff;
        terms.push_back(term);
    }
    return terms;
}

inline OrderedJson to_json(const GenFn& g) {
    return std::visit(
        [](const auto& f) -> OrderedJson {
            using T = std::decay_t<decltype(f)>;
            OrderedJson j;
            if constexpr (std::is_same_v<T, Multilinear>) {
                j["kind"] = "multilinear";
                j["arity"] = f.arity();
                j["terms"] = terms_to_json(f);
            } else if constexpr (std::is_same_v<T, Piecewise>) {
                j["kind"] = "piecewise";
                j["arity"] = f.arity();
                OrderedJson cases = OrderedJson::array();
                for (const auto& c : f.cases()) {
                    OrderedJson cj;
                    cj["coord"] = c.coord + 1;
                    cj["equals"] = c.equals;
                    cj["body"] = terms_to_json(c.body);
                    cases.push_back(cj);
                }
                j["cases"] = cases;
                j["default"] = terms_to_json(f.fallback());
            } else {
                j["kind"] = f.pick() == ExtremumCompose::Pick::min ? "min_compose" : "max_compose";
                j["arity"] = f.arity();
                j["inner"] = to_json(f.inner());
            }
            return j;
        },
        g.form());
}

inline OrderedJson to_json(const InductionModel& m) {
    OrderedJson j;
    j["base"] = to_json(m.base);
    j["gen"] = to_json(m.gen);
    return j;
}

inline std::string serialize_model(const InductionModel& m) { return to_json(m).dump(2) + "\n"; }

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline InductionModel load_model(const std::string& path) {
    try {
        return parse_model(read_text_file(path));
    } catch (const SchemaError& e) {
        throw e.in_file(path);
    }
}

}  // namespace indmodel
