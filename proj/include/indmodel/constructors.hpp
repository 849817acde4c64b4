#pragma once

#include <map>
#include <optional>
#include <string>

#include "indmodel/model.hpp"
#include "indmodel/structure.hpp"

namespace indmodel {

enum class Recipe {
    successor,              ///< 1 ∈ B: x + 1
    finite_piecewise,       ///< finite B, 1 ∉ B: b → 1, b-1 → b+1, else x + 1
    predecessor,            ///< infinite B: x - 1
    min_lift,               ///< k-ary lift S(min(x1..xk)) of a unary recipe
    additive_unary,         ///< x + 1 or x - 1
    additive_binary,        ///< x - y + (q + 1)
    additive_kary,          ///< x1 + ... + x_{k-1} - (k-1) xk + (q + 1)
    multiplicative_binary,  ///< xy + y - qy + 1
    multiplicative_kary,    ///< x1...xk + (x_{k-1}xk + xk - q xk + 1) - q x2...xk
    cofinite_complement,    ///< B = ℕ ∖ {S(t)} for a witness t
};

inline const char* to_string(Recipe r) {
    switch (r) {
        case Recipe::successor: return "successor";
        case Recipe::finite_piecewise: return "finite-piecewise";
        case Recipe::predecessor: return "predecessor";
        case Recipe::min_lift: return "min-lift";
        case Recipe::additive_unary: return "additive-unary";
        case Recipe::additive_binary: return "additive-binary";
        case Recipe::additive_kary: return "additive-k-ary";
        case Recipe::multiplicative_binary: return "multiplicative-binary";
        case Recipe::multiplicative_kary: return "multiplicative-k-ary";
        case Recipe::cofinite_complement: return "cofinite-complement";
    }
    return "?";
}

struct ConstructionResult {
    InductionModel model;
    Recipe recipe;
    /// Chosen constants (q, p, b, a, k, ...), ordered by name.
    std::map<std::string, Int> parameters;
    std::string note;
};

namespace construct_detail {

inline Multilinear successor() { return Multilinear::affine_unary(1, 1); }
inline Multilinear predecessor() { return Multilinear::affine_unary(-1, 1); }

inline void check_k(int k) {
    if (k < 1 || k > kMaxArity) {
        throw ArityError("arity must lie in [1, " + std::to_string(kMaxArity) + "]");
    }
}

/// Full product of the variables in `mask`.
inline Term monomial(VarMask mask, Int c) { return Term{mask, c}; }

}  // namespace construct_detail

/// Some non-self-loop S with Cl(⟨B, S⟩) = ℕ, any arity.
inline ConstructionResult construct_s_general(const SetSpec& base, int k) {
    using namespace construct_detail;
    check_k(k);
    ConstructionResult unary{InductionModel{base, successor()}, Recipe::successor, {}, ""};
    if (base.contains(1)) {
        unary.note = "1 is in B, so x + 1 walks up from 1";
    } else if (base.is_finite()) {
        Int b = base.min();
        std::vector<Piecewise::Case> cases{
            {0, b, Multilinear::constant(1, 1)},
            {0, b - 1, Multilinear::constant(1, b + 1)},
        };
        unary.model.gen = Piecewise(1, std::move(cases), successor());
        unary.recipe = Recipe::finite_piecewise;
        unary.parameters["b"] = b;
        unary.note = "b = min(B) is sent to 1, then x + 1 climbs with b - 1 jumping over b to b + 1";
    } else {
        unary.model.gen = predecessor();
        unary.recipe = Recipe::predecessor;
        unary.note = "B is infinite, so x - 1 walks down from elements above any target";
    }
    if (k == 1) {
        return unary;
    }
    ConstructionResult lifted = unary;
    lifted.model.gen = ExtremumCompose(ExtremumCompose::Pick::min, k, unary.model.gen);
    lifted.recipe = Recipe::min_lift;
    lifted.parameters["k"] = k;
    lifted.note = std::string("S(min(x1..xk)) over the unary ") + to_string(unary.recipe) +
                  " recipe: " + unary.note;
    return lifted;
}

/// An S with additive structure. Unary needs 1 ∈ B or B infinite.
inline ConstructionResult construct_s_additive(const SetSpec& base, int k) {
    using namespace construct_detail;
    check_k(k);
    if (k == 1) {
        if (base.contains(1)) {
            return {InductionModel{base, successor()}, Recipe::additive_unary, {},
                    "1 is in B, so x + 1 reaches everything"};
        }
        if (!base.is_finite()) {
            return {InductionModel{base, predecessor()}, Recipe::additive_unary, {},
                    "B is infinite, so x - 1 reaches everything"};
        }
        throw RefusedError(
            "no unary additive S exists: B is finite and does not contain 1 (a0 + a1 x is "
            "monotone, so it either never reaches 1 or never exceeds max(B))");
    }
    const Int q = base.min();
    const VarMask last = var_bit(k - 1);
    std::vector<Term> terms;
    for (int j = 0; j + 1 < k; ++j) {
        terms.push_back(monomial(var_bit(j), 1));
    }
    terms.push_back(monomial(last, -(k - 1)));
    terms.push_back(monomial(0, checked_add(q, 1)));
    ConstructionResult r{InductionModel{base, Multilinear(k, std::move(terms))},
                         k == 2 ? Recipe::additive_binary : Recipe::additive_kary,
                         {{"q", q}},
                         ""};
    if (k > 2) {
        r.parameters["k"] = k;
    }
    r.note = "q = min(B); fixing the trailing coordinates at q gives x + 1, at q + 2 gives x - 1";
    return r;
}

/// An S with multiplicative structure; needs |B| ≥ 2 and k ≥ 2.
inline ConstructionResult construct_s_multiplicative(const SetSpec& base, int k) {
    using namespace construct_detail;
    check_k(k);
    auto second = base.nth_smallest(1);
    if (!second) {
        throw RefusedError(
            "open question: it is not known whether a multiplicative S exists for a "
            "single-element base");
    }
    if (k == 1) {
        throw RefusedError("the multiplicative recipe needs at least two argument slots (k >= 2)");
    }
    const Int p = base.min();
    const Int q = *second;
    const Int one_minus_q = checked_sub(1, q);
    std::vector<Term> terms;
    if (k == 2) {
        // xy + y - qy + 1
        terms = {monomial(0b11, 1), monomial(0b10, one_minus_q), monomial(0, 1)};
    } else {
        const VarMask tail = full_mask(k) & ~VarMask{1};  // x2..xk
        const VarMask xk = var_bit(k - 1);
        const VarMask xk1 = var_bit(k - 2);
        terms = {monomial(full_mask(k), 1), monomial(xk1 | xk, 1), monomial(xk, one_minus_q),
                 monomial(0, 1), monomial(tail, -q)};
    }
    ConstructionResult r{InductionModel{base, Multilinear(k, std::move(terms))},
                         k == 2 ? Recipe::multiplicative_binary : Recipe::multiplicative_kary,
                         {{"p", p}, {"q", q}},
                         ""};
    if (k > 2) {
        r.parameters["k"] = k;
    }
    r.note =
        "p < q are the two smallest elements of B; S(q, y) = y + 1 climbs from p to q - 1, "
        "S(q - 1, q - 1) = 1, then y + 1 reaches everything";
    return r;
}

/// B = ℕ ∖ {a} where a = S(t) ≥ 1 for the lexicographically first t in
/// [1, search_cap]^k with S(t) ∉ coords(t).
inline ConstructionResult construct_b_for_s(const GenFn& f, Int search_cap) {
    if (search_cap < 1) {
        throw PreconditionError("search cap must be >= 1");
    }
    const auto k = static_cast<std::size_t>(f.arity());
    std::optional<SelfLoopWitness> found;
    bool seen_witness = false;
    Tuple t(k, 1);
    while (!found) {
        Int v = f.apply(t);
        if (is_witness(t, v)) {
            seen_witness = true;
            if (v >= 1) {
                found = SelfLoopWitness{t, v};
                break;
            }
        }
        std::size_t j = k;
        while (j > 0 && t[j - 1] == search_cap) {
            t[--j] = 1;
        }
        if (j == 0) {
            break;
        }
        ++t[j - 1];
    }
    if (!found) {
        throw RefusedError(
            seen_witness ? "every witness up to the search cap has a value outside ℕ"
                         : "no non-self-loop witness up to the search cap");
    }
    ConstructionResult r{InductionModel{SetSpec::cofinite({found->value}), f},
                         Recipe::cofinite_complement,
                         {{"a", found->value}},
                         ""};
    r.note = "S" + format_tuple(found->tuple) + " = " + std::to_string(found->value) +
             " is not a coordinate, so every coordinate lies in B = ℕ ∖ {" +
             std::to_string(found->value) + "} and one application adds the missing element";
    return r;
}

}  // namespace indmodel
