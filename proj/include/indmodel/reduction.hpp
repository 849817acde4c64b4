#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "indmodel/closure.hpp"
#include "indmodel/model.hpp"

namespace indmodel {

inline constexpr const char* kTieBreak = "lexicographically smallest tuple over the sorted carrier";

/// Canonical generating tuples n_x for the injective version S_inj.
struct InjTable {
    ClosureTrace trace;
    /// x ∈ Cl ∖ B → n_x.
    std::map<Int, Tuple> canonical;
    /// n_x → x.
    std::map<Tuple, Int> reverse;

    const Tuple* tuple_for(Int x) const {
        auto it = canonical.find(x);
        return it == canonical.end() ? nullptr : &it->second;
    }
};

/// S_inj as a generator: n_x ↦ x, every other tuple ↦ 0 (outside ℕ).
class SInj {
public:
    SInj(const InjTable& table, int arity) : table_(&table), arity_(arity) {}

    int arity() const { return arity_; }

    Int apply(std::span<const Int> t) const {
        auto it = table_->reverse.find(Tuple(t.begin(), t.end()));
        return it == table_->reverse.end() ? 0 : it->second;
    }

private:
    const InjTable* table_;
    int arity_;
};

/// For each x with l(x) = i ≥ 1, n_x is the first tuple in lexicographic
/// order over Cl_{i-1} with S(n_x) = x. One pass over Cl^k: the order on
/// Cl_{i-1}^k is the restriction of the order on Cl^k.
inline InjTable injective_version(const InductionModel& m, const Bound& b) {
    InjTable tab;
    tab.trace = closure_trace(m, b);
    const ClosureTrace& tr = tab.trace;
    const NatSet& cl = tr.closure();
    std::size_t pending = cl.size() - tr.base().size();
    if (pending == 0) {
        return tab;
    }
    const int k = m.gen.arity();
    // Stop early once every x has its tuple.
    struct Done {};
    try {
        for_each_tuple(cl, k, [&](std::span<const Int> t) {
            Int v = m.gen.apply(t);
            auto l = tr.smallest_power(v);
            if (!l || *l == 0 || tab.canonical.count(v)) {
                return;
            }
            for (Int c : t) {
                if (*tr.smallest_power(c) > *l - 1) {
                    return;
                }
            }
            Tuple tup(t.begin(), t.end());
            tab.canonical.emplace(v, tup);
            tab.reverse.emplace(std::move(tup), v);
            if (--pending == 0) {
                throw Done{};
            }
        });
    } catch (const Done&) {
    }
    return tab;
}

inline ClosureTrace injective_trace(const InductionModel& m, const InjTable& tab) {
    return closure_trace(tab.trace.base(), SInj(tab, m.gen.arity()), tab.trace.bound);
}

struct ReducibilityVerdict {
    Tri result = Tri::unknown;
    bool presumes_omega = false;
    ExtNat n1 = ExtNat::at_least(1);
    ExtNat n2 = ExtNat::at_least(1);
    std::string explanation;
};

namespace reduction_detail {

inline std::string describe(const char* name, const ExtNat& n) {
    if (n.is_finite()) {
        return std::string(name) + "=" + std::to_string(n.value());
    }
    return std::string(name) + " presumed ω";
}

}  // namespace reduction_detail

/// m1 reduces to m2 iff n(m1) ≤ n(m2), under the three-valued comparison.
inline ReducibilityVerdict decide_from_counts(const ExtNat& n1, const ExtNat& n2, const Bound& b) {
    using reduction_detail::describe;
    ReducibilityVerdict v;
    v.n1 = n1;
    v.n2 = n2;
    ExtComparison c = compare_le(n1, n2);
    v.result = c.result;
    v.presumes_omega = c.presumes_omega;
    const std::string lhs = describe("n(m1)", n1);
    const std::string rhs = describe("n(m2)", n2);
    switch (c.result) {
        case Tri::yes:
            v.explanation = lhs + " <= " + rhs;
            if (c.presumes_omega) {
                v.explanation += " (assuming both counts are ω: no empty difference set within " +
                                 std::to_string(b.cutoff) + " levels)";
            }
            break;
        case Tri::no:
            v.explanation = lhs + " > " + rhs;
            break;
        case Tri::unknown:
            v.explanation = lhs + " vs " + rhs + ": undecided at cutoff " + std::to_string(b.cutoff);
            break;
    }
    return v;
}

inline ReducibilityVerdict decide_reducible(const InductionModel& m1, const InductionModel& m2,
                                            const Bound& b) {
    return decide_from_counts(step_count(m1, b), step_count(m2, b), b);
}

struct EquivalenceVerdict {
    Tri result = Tri::unknown;
    ReducibilityVerdict forward;   ///< m1 to m2
    ReducibilityVerdict backward;  ///< m2 to m1
};

inline EquivalenceVerdict decide_equivalent(const InductionModel& m1, const InductionModel& m2,
                                            const Bound& b) {
    ExtNat n1 = step_count(m1, b);
    ExtNat n2 = step_count(m2, b);
    EquivalenceVerdict e{Tri::unknown, decide_from_counts(n1, n2, b), decide_from_counts(n2, n1, b)};
    if (e.forward.result == Tri::no || e.backward.result == Tri::no) {
        e.result = Tri::no;
    } else if (e.forward.result == Tri::yes && e.backward.result == Tri::yes) {
        e.result = Tri::yes;
    }
    return e;
}

enum class Provenance { theorem_recipe, user_supplied };

inline const char* to_string(Provenance p) {
    return p == Provenance::theorem_recipe ? "theorem-recipe" : "user-supplied";
}

/// R: Cl(m2) → subsets of Cl(m1), both bounded.
struct ReductionRelation {
    std::map<Int, NatSet> images;
    Provenance provenance = Provenance::user_supplied;
    /// Built from an undecided comparison on explicit request.
    bool heuristic = false;
    std::string tie_break = kTieBreak;
    std::string note;

    const NatSet& at(Int x) const {
        auto it = images.find(x);
        if (it == images.end()) {
            throw PreconditionError("relation has no image for " + std::to_string(x));
        }
        return it->second;
    }
};

/// R(x) = B1 on B2 and R(x) = Cl_i(m1) for x ∈ D_i of the S_inj trace of m2.
inline ReductionRelation build_reduction(const InductionModel& m1, const InductionModel& m2,
                                         const Bound& b, bool allow_unknown = false) {
    ClosureTrace t1 = closure_trace(m1, b);
    InjTable inj2 = injective_version(m2, b);
    ReducibilityVerdict v = decide_from_counts(t1.stabilized_at, inj2.trace.stabilized_at, b);
    if (v.result == Tri::no) {
        throw PreconditionError("not reducible: " + v.explanation);
    }
    if (v.result == Tri::unknown && !allow_unknown) {
        throw PreconditionError("reducibility undecided (" + v.explanation +
                                "); pass the heuristic override to build anyway");
    }
    ClosureTrace ti = injective_trace(m2, inj2);
    ReductionRelation r;
    r.provenance = Provenance::theorem_recipe;
    r.heuristic = v.result == Tri::unknown;
    for (std::size_t i = 0; i < ti.levels.size(); ++i) {
        for (Int x : ti.levels[i].diff) {
            r.images[x] = t1.closure_at(i);
        }
    }
    return r;
}

struct Cond3Failure {
    Int x = 0;
    Tuple tuple;
    NatSet expected;  ///< S1(U) ∪ U
    NatSet actual;    ///< R(x)
};

struct VerifyReport {
    bool cond1 = false;
    bool cond2 = false;
    bool cond3 = false;
    /// Weaker reading: R(x) ⊆ Cl(⟨U, S1⟩) instead of one application.
    bool cond3_derivable = false;

    NatSet cond1_missing;  ///< in Cl(m1) ∩ [1, N] but not covered by R
    NatSet cond1_extra;    ///< in some R(x) but outside Cl(m1)
    NatSet cond2_missing;
    NatSet cond2_extra;
    std::vector<Cond3Failure> cond3_failures;
    NatSet derivable_failures;
    std::vector<std::string> warnings;
    std::string caveat;

    bool verified() const { return cond1 && cond2 && cond3; }
};

namespace reduction_detail {

inline NatSet clip_to(const NatSet& s, Int hi) { return clip(s, 1, hi); }

/// S(U) ∩ [1, M] over all k-tuples of U.
template <Generator G>
NatSet image_of(const NatSet& u, const G& gen, Int cap) {
    Membership out(cap);
    for_each_tuple(u, gen.arity(), [&](std::span<const Int> t) {
        Int v = gen.apply(t);
        if (out.in_range(v)) {
            out.insert(v);
        }
    });
    return out.to_set();
}

}  // namespace reduction_detail

/// Checks the three reduction conditions on the bounded closures.
///
/// (1) ⋃R agrees with Cl(m1) on [1, N] and no image leaves Cl(m1);
/// (2) the same for ⋃_{x∈B2} R(x) against B1;
/// (3) R(x) = S1(U) ∪ U, U = ⋃ R(n_i) over the canonical tuple of x.
inline VerifyReport verify_reduction(const InductionModel& m1, const InductionModel& m2,
                                     const ReductionRelation& r, const Bound& b) {
    using reduction_detail::clip_to;
    ClosureTrace t1 = closure_trace(m1, b);
    InjTable inj2 = injective_version(m2, b);
    const NatSet& cl1 = t1.closure();
    const NatSet& cl2 = inj2.trace.closure();
    const NatSet& b1 = t1.base();
    const NatSet& b2 = inj2.trace.base();

    for (Int x : cl2) {
        if (!r.images.count(x)) {
            throw PreconditionError("relation is not total: no image for " + std::to_string(x) +
                                    " in the closure of m2");
        }
    }
    VerifyReport rep;
    rep.caveat = bounded_caveat(b);
    Membership in_cl2(b.cap, cl2);
    for (const auto& [x, img] : r.images) {
        if (!in_cl2.in_range(x) || !in_cl2.test(x)) {
            rep.warnings.push_back("image given for " + std::to_string(x) +
                                   ", which is outside the closure of m2; ignored");
        } else if (img.empty()) {
            rep.warnings.push_back("empty image at " + std::to_string(x));
        }
    }

    auto union_over = [&](const NatSet& keys) {
        NatSet u;
        for (Int x : keys) {
            u = set_union(u, r.at(x));
        }
        return u;
    };
    auto compare = [&](const NatSet& got, const NatSet& want, NatSet& missing, NatSet& extra) {
        missing = set_difference(clip_to(want, b.universe), clip_to(got, b.universe));
        extra = set_difference(got, cl1);
        NatSet outside_window = set_difference(clip_to(got, b.universe), clip_to(want, b.universe));
        extra = set_union(extra, outside_window);
        return missing.empty() && extra.empty();
    };
    rep.cond1 = compare(union_over(cl2), cl1, rep.cond1_missing, rep.cond1_extra);
    rep.cond2 = compare(union_over(b2), b1, rep.cond2_missing, rep.cond2_extra);

    std::map<NatSet, NatSet> one_step;
    std::map<NatSet, NatSet> closure_of;
    rep.cond3 = true;
    rep.cond3_derivable = true;
    for (Int x : cl2) {
        const Tuple* nx = inj2.tuple_for(x);
        if (nx == nullptr) {
            continue;  // x ∈ B2
        }
        NatSet u;
        for (Int c : *nx) {
            u = set_union(u, r.at(c));
        }
        auto it = one_step.find(u);
        if (it == one_step.end()) {
            NatSet e = set_union(reduction_detail::image_of(u, m1.gen, b.cap), u);
            it = one_step.emplace(u, std::move(e)).first;
        }
        const NatSet& rx = r.at(x);
        if (rx != it->second) {
            rep.cond3 = false;
            rep.cond3_failures.push_back({x, *nx, it->second, rx});
        }
        auto jt = closure_of.find(u);
        if (jt == closure_of.end()) {
            NatSet c = u.empty() ? NatSet{} : minimal_closed_superset(u, m1.gen, b.cap);
            jt = closure_of.emplace(u, std::move(c)).first;
        }
        if (!is_subset(rx, jt->second)) {
            rep.cond3_derivable = false;
            rep.derivable_failures.push_back(x);
        }
    }
    return rep;
}

struct StepObligation {
    Int x = 0;
    std::size_t level = 0;
    Tuple tuple;
    std::vector<NatSet> premises;  ///< R(n_1), ..., R(n_k)
    NatSet conclusion;             ///< R(x)
    NatSet fresh;                  ///< R(x) minus every premise
    bool single_step = true;       ///< R(x) = S1(U) ∪ U exactly
};

struct ProofPlan {
    std::string q_definition;
    NatSet base_elements;  ///< B1: prove P here directly
    std::vector<Int> base_keys;
    std::vector<StepObligation> steps;
    NatSet covered;  ///< ⋃R
    std::string conclusion;
    std::string provenance;
    std::string tie_break;
    std::string note;
    bool derivation_mode = false;  ///< some steps need several S1 applications
};

/// Turns a verified R into the obligations of the Q(n) transport argument.
inline ProofPlan emit_proof_plan(const InductionModel& m1, const InductionModel& m2,
                                 const ReductionRelation& r, const Bound& b) {
    VerifyReport rep = verify_reduction(m1, m2, r, b);
    if (!(rep.cond1 && rep.cond2 && (rep.cond3 || rep.cond3_derivable))) {
        throw RefusedError("relation does not pass verification; no plan emitted");
    }
    InjTable inj2 = injective_version(m2, b);
    const ClosureTrace& t2 = inj2.trace;
    ProofPlan plan;
    plan.q_definition = "Q(n) := AND of P(x) over x in R(n)";
    plan.provenance = to_string(r.provenance);
    plan.tie_break = r.tie_break;
    plan.note = r.note;
    plan.base_keys = t2.base();
    for (Int x : t2.base()) {
        plan.base_elements = set_union(plan.base_elements, r.at(x));
    }
    std::map<Int, std::size_t> failing;
    for (const Cond3Failure& f : rep.cond3_failures) {
        failing[f.x] = 1;
    }
    for (std::size_t i = 1; i < t2.levels.size(); ++i) {
        for (Int x : t2.levels[i].diff) {
            StepObligation s;
            s.x = x;
            s.level = i;
            s.tuple = *inj2.tuple_for(x);
            NatSet u;
            for (Int c : s.tuple) {
                s.premises.push_back(r.at(c));
                u = set_union(u, r.at(c));
            }
            s.conclusion = r.at(x);
            s.fresh = set_difference(s.conclusion, u);
            s.single_step = failing.count(x) == 0;
            plan.derivation_mode = plan.derivation_mode || !s.single_step;
            plan.steps.push_back(std::move(s));
        }
    }
    for (const auto& [x, img] : r.images) {
        if (std::binary_search(t2.closure().begin(), t2.closure().end(), x)) {
            plan.covered = set_union(plan.covered, img);
        }
    }
    plan.conclusion = "Q(n) holds for every n in Cl(m2); the images cover Cl(m1) on [1, " +
                      std::to_string(b.universe) + "], so P holds there";
    return plan;
}

}  // namespace indmodel
