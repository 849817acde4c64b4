#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "indmodel/closure.hpp"
#include "indmodel/constructors.hpp"
#include "indmodel/model_io.hpp"
#include "indmodel/reduction.hpp"
#include "indmodel/relation_io.hpp"
#include "indmodel/structure.hpp"

// Command-line front end. run() never touches std::cout or exits, so the
// whole CLI is callable from tests.
//
// Exit codes: 0 affirmative verdict, 1 negative verdict, 2 usage, schema
// or I/O error.

namespace indmodel::cli {

inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

enum class Format { text, json };

struct Options {
    Int universe = Bound::kDefaultUniverse;
    std::optional<Int> cap;
    Int cutoff = Bound::kDefaultCutoff;
    std::string out_path;
    Format format = Format::text;
    Int search_cap = 20;

    Bound bound() const { return Bound::make(universe, cap.value_or(Bound::default_cap(universe)), cutoff); }
};

struct Result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace detail {

/// Text and JSON renderings built side by side; `document` is what --out
/// receives when the command has an artifact other than its report.
struct Report {
    std::ostringstream text;
    OrderedJson json = OrderedJson::object();
    std::optional<std::string> document;
};

inline OrderedJson bound_json(const Bound& b) {
    OrderedJson j;
    j["universe"] = b.universe;
    j["cap"] = b.cap;
    j["cutoff"] = b.cutoff;
    return j;
}

inline std::string bound_text(const Bound& b) {
    return "N = " + std::to_string(b.universe) + ", M = " + std::to_string(b.cap) +
           ", cutoff = " + std::to_string(b.cutoff);
}

inline OrderedJson ext_json(const ExtNat& n) {
    OrderedJson j;
    j["finite"] = n.is_finite();
    j["value"] = n.value();
    return j;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

/// A function document may be a bare genfn or a whole model.
inline GenFn load_function(const std::string& path) {
    try {
        Json j = parse_json_text(read_text_file(path));
        if (j.is_object() && j.contains("gen")) {
            return model_from_json(j).gen;
        }
        return gen_from_json(j);
    } catch (const SchemaError& e) {
        throw e.in_file(path);
    }
}

/// A base document may be a bare setspec or a whole model.
inline SetSpec load_base(const std::string& path) {
    try {
        Json j = parse_json_text(read_text_file(path));
        if (j.is_object() && j.contains("base")) {
            return model_from_json(j).base;
        }
        return set_from_json(j);
    } catch (const SchemaError& e) {
        throw e.in_file(path);
    }
}

inline OrderedJson witness_json(const std::optional<SelfLoopWitness>& w) {
    if (!w) {
        return nullptr;
    }
    OrderedJson j;
    j["tuple"] = w->tuple;
    j["value"] = w->value;
    return j;
}

inline std::string witness_text(const SelfLoopWitness& w) {
    return format_tuple(w.tuple) + " -> " + std::to_string(w.value);
}

inline void closure_summary(Report& r, const ClosureTrace& tr) {
    NimVerdict v = nim_verdict(tr);
    r.text << "step count: " << to_string(tr.stabilized_at) << "\n";
    r.text << "closure: " << format_set(tr.closure()) << "\n";
    r.text << "covered: " << yes_no(v.covered) << "\n";
    r.text << "missing: " << format_set(v.missing) << "\n";
    r.json["step_count"] = ext_json(tr.stabilized_at);
    r.json["closure"] = tr.closure();
    r.json["covered"] = v.covered;
    r.json["missing"] = v.missing;
}

inline int cmd_analyze(const Options& o, const std::string& path, Report& r) {
    const Bound b = o.bound();
    InductionModel m = load_model(path);
    ClosureTrace tr = closure_trace(m, b);
    NimVerdict v = nim_verdict(tr);

    r.text << "model: " << to_string(m) << "\n";
    r.text << "bound: " << bound_text(b) << "\n";
    r.text << "levels:\n";
    OrderedJson levels = OrderedJson::array();
    for (std::size_t i = 0; i < tr.levels.size(); ++i) {
        r.text << "  D_" << i << " = " << format_set(tr.levels[i].diff) << "\n";
        levels.push_back(tr.levels[i].diff);
    }
    r.json["model"] = to_json(m);
    r.json["rendered"] = to_string(m);
    r.json["bound"] = bound_json(b);
    r.json["levels"] = levels;
    closure_summary(r, tr);
    r.text << "note: " << v.caveat << "\n";
    r.json["caveat"] = v.caveat;
    return v.covered ? kAffirmative : kNegative;
}

inline int cmd_classify(const Options& o, const std::string& path, Report& r) {
    GenFn f = load_function(path);
    StructureReport s = analyze_structure(f, o.search_cap);
    r.text << "function: " << to_string(f) << "\n";
    r.text << "arity: " << f.arity() << "\n";
    r.text << "additive: " << yes_no(s.additive) << "\n";
    r.text << "multiplicative: " << yes_no(s.multiplicative) << "\n";
    r.json["function"] = to_json(f);
    r.json["rendered"] = to_string(f);
    r.json["arity"] = f.arity();
    r.json["additive"] = s.additive;
    r.json["multiplicative"] = s.multiplicative;

    std::optional<SelfLoopWitness> analytic;
    std::string route;
    std::string why_none;
    if (s.additive || s.multiplicative) {
        route = s.additive ? "additive" : "multiplicative";
        try {
            analytic = s.additive ? additive_witness(f) : multiplicative_witness(f);
        } catch (const PreconditionError& e) {
            why_none = e.what();
        }
    }
    if (!route.empty()) {
        r.text << "analytic witness (" << route << "): "
               << (analytic ? witness_text(*analytic) : "none (" + why_none + ")") << "\n";
    }
    r.json["analytic_route"] = route.empty() ? OrderedJson(nullptr) : OrderedJson(route);
    if (!why_none.empty()) {
        r.json["analytic_refused"] = why_none;
    }
    r.json["analytic_witness"] = witness_json(analytic);

    r.text << "search witness (cap " << o.search_cap
           << "): " << (s.witness ? witness_text(*s.witness) : std::string("none")) << "\n";
    r.json["search_cap"] = o.search_cap;
    r.json["search_witness"] = witness_json(s.witness);
    const bool loop = is_known_self_loop(f);
    r.text << "known self-loop: " << yes_no(loop) << "\n";
    r.json["known_self_loop"] = loop;
    return (analytic || s.witness) ? kAffirmative : kNegative;
}

inline void construction_report(Report& r, const ConstructionResult& c, const Bound& b) {
    r.text << "recipe: " << to_string(c.recipe) << "\n";
    r.text << "parameters:";
    OrderedJson params = OrderedJson::object();
    if (c.parameters.empty()) {
        r.text << " none";
    }
    for (const auto& [k, v] : c.parameters) {
        r.text << " " << k << " = " << v;
        params[k] = v;
    }
    r.text << "\n";
    r.text << "note: " << c.note << "\n";
    r.text << "model: " << to_string(c.model) << "\n";
    r.json["recipe"] = to_string(c.recipe);
    r.json["parameters"] = params;
    r.json["note"] = c.note;
    r.json["model"] = to_json(c.model);
    r.json["rendered"] = to_string(c.model);
    ClosureTrace tr = closure_trace(c.model, b);
    closure_summary(r, tr);
    r.document = serialize_model(c.model);
}

inline int cmd_construct_s(const Options& o, const std::string& path, const std::string& structure,
                           int arity, Report& r) {
    const Bound b = o.bound();
    SetSpec base = load_base(path);
    r.text << "base: " << to_string(base) << "\n";
    r.text << "structure: " << structure << ", arity " << arity << "\n";
    r.text << "bound: " << bound_text(b) << "\n";
    r.json["base"] = to_json(base);
    r.json["structure"] = structure;
    r.json["arity"] = arity;
    r.json["bound"] = bound_json(b);
    try {
        ConstructionResult c = structure == "additive"         ? construct_s_additive(base, arity)
                               : structure == "multiplicative" ? construct_s_multiplicative(base, arity)
                                                               : construct_s_general(base, arity);
        construction_report(r, c, b);
        return r.json["covered"].get<bool>() ? kAffirmative : kNegative;
    } catch (const RefusedError& e) {
        r.text << "refused: " << e.what() << "\n";
        r.json["refused"] = e.what();
        return kNegative;
    }
}

inline int cmd_construct_b(const Options& o, const std::string& path, Report& r) {
    const Bound b = o.bound();
    GenFn f = load_function(path);
    r.text << "function: " << to_string(f) << "\n";
    r.text << "bound: " << bound_text(b) << "\n";
    r.json["function"] = to_json(f);
    r.json["rendered"] = to_string(f);
    r.json["bound"] = bound_json(b);
    try {
        ConstructionResult c = construct_b_for_s(f, o.search_cap);
        construction_report(r, c, b);
        return r.json["covered"].get<bool>() ? kAffirmative : kNegative;
    } catch (const RefusedError& e) {
        r.text << "refused: " << e.what() << "\n";
        r.json["refused"] = e.what();
        return kNegative;
    }
}

inline void relation_text(Report& r, const ReductionRelation& rel) {
    r.text << "relation (" << to_string(rel.provenance) << (rel.heuristic ? ", heuristic" : "")
           << "; tie-break: " << rel.tie_break << "):\n";
    for (const auto& [x, s] : rel.images) {
        r.text << "  R(" << x << ") = " << format_set(s) << "\n";
    }
}

inline constexpr std::size_t kShownFailures = 5;

inline void verify_text(Report& r, const VerifyReport& v) {
    auto cond12 = [&](const char* label, bool ok, const NatSet& missing, const NatSet& extra) {
        r.text << label << ": " << (ok ? "holds" : "fails");
        if (!ok) {
            r.text << " (missing " << format_set(missing) << ", unexpected " << format_set(extra) << ")";
        }
        r.text << "\n";
    };
    cond12("condition 1 (images cover Cl(m1))", v.cond1, v.cond1_missing, v.cond1_extra);
    cond12("condition 2 (base images give B1)", v.cond2, v.cond2_missing, v.cond2_extra);
    r.text << "condition 3 (R(x) = S1(U) ∪ U): " << (v.cond3 ? "holds" : "fails") << "\n";
    for (std::size_t i = 0; i < v.cond3_failures.size() && i < kShownFailures; ++i) {
        const Cond3Failure& f = v.cond3_failures[i];
        r.text << "  x = " << f.x << " from " << format_tuple(f.tuple) << ": expected "
               << format_set(f.expected) << ", R(x) = " << format_set(f.actual) << "\n";
    }
    if (v.cond3_failures.size() > kShownFailures) {
        r.text << "  ... and " << v.cond3_failures.size() - kShownFailures << " more\n";
    }
    r.text << "condition 3, several S1 steps (R(x) ⊆ Cl(<U, S1>)): "
           << (v.cond3_derivable ? "holds" : "fails at " + format_set(v.derivable_failures)) << "\n";
    for (const std::string& w : v.warnings) {
        r.text << "warning: " << w << "\n";
    }
    r.text << "verified: " << yes_no(v.verified()) << "\n";
    r.text << "note: " << v.caveat << "\n";

    OrderedJson j;
    j["condition1"] = v.cond1;
    j["condition1_missing"] = v.cond1_missing;
    j["condition1_unexpected"] = v.cond1_extra;
    j["condition2"] = v.cond2;
    j["condition2_missing"] = v.cond2_missing;
    j["condition2_unexpected"] = v.cond2_extra;
    j["condition3"] = v.cond3;
    OrderedJson fails = OrderedJson::array();
    for (const Cond3Failure& f : v.cond3_failures) {
        OrderedJson fj;
        fj["x"] = f.x;
        fj["tuple"] = f.tuple;
        fj["expected"] = f.expected;
        fj["actual"] = f.actual;
        fails.push_back(fj);
    }
    j["condition3_failures"] = fails;
    j["condition3_multi_step"] = v.cond3_derivable;
    j["condition3_multi_step_failures"] = v.derivable_failures;
    j["warnings"] = v.warnings;
    j["verified"] = v.verified();
    j["caveat"] = v.caveat;
    r.json["verification"] = j;
}

inline void pair_header(Report& r, const InductionModel& m1, const InductionModel& m2, const Bound& b) {
    r.text << "m1: " << to_string(m1) << "\n";
    r.text << "m2: " << to_string(m2) << "\n";
    r.text << "bound: " << bound_text(b) << "\n";
    r.json["m1"] = to_string(m1);
    r.json["m2"] = to_string(m2);
    r.json["bound"] = bound_json(b);
}

inline int cmd_reduce(const Options& o, const std::string& p1, const std::string& p2, bool allow_heuristic,
                      Report& r) {
    const Bound b = o.bound();
    InductionModel m1 = load_model(p1);
    InductionModel m2 = load_model(p2);
    pair_header(r, m1, m2, b);
    EquivalenceVerdict e = decide_equivalent(m1, m2, b);
    const ReducibilityVerdict& v = e.forward;
    r.text << "n(m1): " << to_string(v.n1) << "\n";
    r.text << "n(m2): " << to_string(v.n2) << "\n";
    r.text << "reducible: " << to_string(v.result) << " (" << v.explanation << ")\n";
    r.text << "equivalent: " << to_string(e.result) << "\n";
    r.json["n1"] = ext_json(v.n1);
    r.json["n2"] = ext_json(v.n2);
    r.json["reducible"] = to_string(v.result);
    r.json["presumes_omega"] = v.presumes_omega;
    r.json["explanation"] = v.explanation;
    r.json["equivalent"] = to_string(e.result);
    if (v.result == Tri::no || (v.result == Tri::unknown && !allow_heuristic)) {
        return kNegative;
    }
    ReductionRelation rel = build_reduction(m1, m2, b, allow_heuristic);
    relation_text(r, rel);
    r.json["relation"] = to_json(rel);
    VerifyReport rep = verify_reduction(m1, m2, rel, b);
    verify_text(r, rep);
    r.document = serialize_relation(rel);
    return v.result == Tri::yes && rep.verified() ? kAffirmative : kNegative;
}

inline int cmd_verify(const Options& o, const std::string& p1, const std::string& p2, const std::string& pr,
                      Report& r) {
    const Bound b = o.bound();
    InductionModel m1 = load_model(p1);
    InductionModel m2 = load_model(p2);
    ReductionRelation rel = load_relation(pr);
    pair_header(r, m1, m2, b);
    r.text << "relation: " << rel.images.size() << " entries, " << to_string(rel.provenance) << "\n";
    r.json["provenance"] = to_string(rel.provenance);
    VerifyReport rep = verify_reduction(m1, m2, rel, b);
    verify_text(r, rep);
    return rep.verified() ? kAffirmative : kNegative;
}

inline OrderedJson plan_json(const ProofPlan& p) {
    OrderedJson j;
    j["q_definition"] = p.q_definition;
    j["provenance"] = p.provenance;
    j["tie_break"] = p.tie_break;
    if (!p.note.empty()) {
        j["note"] = p.note;
    }
    OrderedJson base;
    base["keys"] = p.base_keys;
    base["prove"] = p.base_elements;
    j["base"] = base;
    OrderedJson steps = OrderedJson::array();
    for (const StepObligation& s : p.steps) {
        OrderedJson sj;
        sj["x"] = s.x;
        sj["level"] = s.level;
        sj["tuple"] = s.tuple;
        sj["premises"] = s.premises;
        sj["conclusion"] = s.conclusion;
        sj["new"] = s.fresh;
        sj["single_step"] = s.single_step;
        steps.push_back(sj);
    }
    j["steps"] = steps;
    j["derivation_mode"] = p.derivation_mode ? "several S1 steps" : "single S1 step";
    OrderedJson c;
    c["covered"] = p.covered;
    c["text"] = p.conclusion;
    j["conclusion"] = c;
    return j;
}

inline int cmd_plan(const Options& o, const std::string& p1, const std::string& p2, const std::string& pr,
                    Report& r) {
    const Bound b = o.bound();
    InductionModel m1 = load_model(p1);
    InductionModel m2 = load_model(p2);
    pair_header(r, m1, m2, b);
    ReductionRelation rel;
    if (pr.empty()) {
        ReducibilityVerdict v = decide_reducible(m1, m2, b);
        if (v.result != Tri::yes) {
            r.text << "refused: no relation given and not reducible (" << v.explanation << ")\n";
            r.json["refused"] = v.explanation;
            return kNegative;
        }
        rel = build_reduction(m1, m2, b);
    } else {
        rel = load_relation(pr);
    }
    ProofPlan p;
    try {
        p = emit_proof_plan(m1, m2, rel, b);
    } catch (const RefusedError& e) {
        r.text << "refused: " << e.what() << "\n";
        r.json["refused"] = e.what();
        return kNegative;
    }
    auto conj = [](const Tuple& t) {
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) {
            s += (i ? " ∧ Q(" : "Q(") + std::to_string(t[i]) + ")";
        }
        return s;
    };
    r.text << "definition: " << p.q_definition << "\n";
    r.text << "provenance: " << p.provenance << " (tie-break: " << p.tie_break << ")\n";
    if (!p.note.empty()) {
        r.text << "note: " << p.note << "\n";
    }
    r.text << "base: prove P on " << format_set(p.base_elements) << "; this gives Q on "
           << format_set(p.base_keys) << "\n";
    r.text << "steps:\n";
    for (const StepObligation& s : p.steps) {
        r.text << "  [" << s.level << "] " << conj(s.tuple) << " ⇒ Q(" << s.x << "), new P on "
               << format_set(s.fresh) << (s.single_step ? "" : " (several S1 steps)") << "\n";
    }
    r.text << "conclusion: " << p.conclusion << "; union of images = " << format_set(p.covered) << "\n";
    r.json["plan"] = plan_json(p);
    r.document = plan_json(p).dump(2) + "\n";
    return kAffirmative;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline Result run(std::vector<std::string> args) {
    using namespace detail;
    CLI::App app{"Induction models over the naturals: closures, constructions and reductions",
                 "indmodel"};
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    Int cap = 0;
    std::string format = "text";
    app.add_option("--bound", o.universe, "universe N: verdicts concern [1, N]")->capture_default_str();
    app.add_option("--cap", cap, "clip every set to [1, M] (default 2N + 16)");
    app.add_option("--cutoff", o.cutoff, "maximum number of levels")->capture_default_str();
    app.add_option("--out", o.out_path, "write the command's document to PATH");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--search-cap", o.search_cap, "tuple search range [1, cap]^k")->capture_default_str();

    std::string a;
    std::string b;
    std::string c;
    std::string structure = "general";
    int arity = 1;
    bool allow_heuristic = false;

    auto* analyze = app.add_subcommand("analyze", "closure levels, step count and coverage");
    analyze->add_option("model", a)->required();
    auto* classify = app.add_subcommand("classify", "structure flags and self-loop witnesses");
    classify->add_option("function", a, "genfn or model file")->required();
    auto* cons_s = app.add_subcommand("construct-s", "build S with Cl = N for a base");
    cons_s->add_option("base", a, "setspec or model file")->required();
    cons_s->add_option("--structure", structure)
        ->check(CLI::IsMember({"general", "additive", "multiplicative"}))
        ->capture_default_str();
    cons_s->add_option("--arity", arity)->check(CLI::Range(1, kMaxArity))->capture_default_str();
    auto* cons_b = app.add_subcommand("construct-b", "build a base B with n = 2 for S");
    cons_b->add_option("function", a, "genfn or model file")->required();
    auto* reduce = app.add_subcommand("reduce", "decide and build a reduction of m1 to m2");
    reduce->add_option("m1", a)->required();
    reduce->add_option("m2", b)->required();
    reduce->add_flag("--allow-heuristic", allow_heuristic, "build even when undecided at the cutoff");
    auto* verify = app.add_subcommand("verify-reduction", "check a relation file against m1, m2");
    verify->add_option("m1", a)->required();
    verify->add_option("m2", b)->required();
    verify->add_option("relation", c)->required();
    auto* plan = app.add_subcommand("plan", "proof-transport obligations for a reduction");
    plan->add_option("m1", a)->required();
    plan->add_option("m2", b)->required();
    plan->add_option("relation", c);

    Result res;
    std::ostringstream out;
    std::ostringstream err;
    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.exit_code = code == 0 ? kAffirmative : kUsage;
        return res;
    }
    if (cap != 0) {
        o.cap = cap;
    }
    o.format = format == "json" ? Format::json : Format::text;

    Report r;
    try {
        if (*analyze) {
            res.exit_code = cmd_analyze(o, a, r);
        } else if (*classify) {
            res.exit_code = cmd_classify(o, a, r);
        } else if (*cons_s) {
            res.exit_code = cmd_construct_s(o, a, structure, arity, r);
        } else if (*cons_b) {
            res.exit_code = cmd_construct_b(o, a, r);
        } else if (*reduce) {
            res.exit_code = cmd_reduce(o, a, b, allow_heuristic, r);
        } else if (*verify) {
            res.exit_code = cmd_verify(o, a, b, c, r);
        } else {
            res.exit_code = cmd_plan(o, a, b, c, r);
        }
    } catch (const std::exception& e) {
        res.exit_code = kUsage;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    }
    res.out = o.format == Format::json ? r.json.dump(2) + "\n" : r.text.str();
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) {
            res.exit_code = kUsage;
            res.err = "error: cannot write '" + o.out_path + "'\n";
            return res;
        }
        f << r.document.value_or(res.out);
    }
    return res;
}

}  // namespace indmodel::cli
