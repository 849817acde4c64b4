#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <variant>

#include "indmodel/closure.hpp"
#include "indmodel/gen_fn.hpp"
#include "indmodel/primes.hpp"

namespace indmodel {

/// A tuple whose image is not one of its own coordinates.
struct SelfLoopWitness {
    Tuple tuple;
    Int value = 0;

    bool operator==(const SelfLoopWitness&) const = default;
};

struct StructureReport {
    bool additive = false;
    bool multiplicative = false;
    std::optional<SelfLoopWitness> witness;
    /// Search covered [1, search_exhausted_to]^k; 0 when no search ran.
    Int search_exhausted_to = 0;
};

inline bool is_additive(const Multilinear& f) {
    for (const Term& t : f.terms()) {
        if (std::popcount(t.vars) >= 2) {
            return false;
        }
    }
    for (int j = 0; j < f.arity(); ++j) {
        if (f.coefficient(var_bit(j)) == 0) {
            return false;
        }
    }
    return true;
}

inline bool is_multiplicative(const Multilinear& f) { return f.coefficient(full_mask(f.arity())) != 0; }

/// Structural flags only. Piecewise and extremum forms never qualify.
inline StructureReport classify(const GenFn& f) {
    StructureReport r;
    if (const auto* ml = std::get_if<Multilinear>(&f.form())) {
        r.additive = is_additive(*ml);
        r.multiplicative = is_multiplicative(*ml);
    }
    return r;
}

inline bool is_witness(std::span<const Int> t, Int value) {
    return std::find(t.begin(), t.end(), value) == t.end();
}

/// Lexicographically smallest t ∈ [1, cap]^k with f(t) ∉ coords(t).
/// Absence only means "none up to cap".
inline std::optional<SelfLoopWitness> self_loop_search(const GenFn& f, Int search_cap) {
    if (search_cap < 1) {
        throw PreconditionError("search cap must be >= 1");
    }
    const int k = f.arity();
    Tuple t(static_cast<std::size_t>(k), 1);
    while (true) {
        Int v = f.apply(t);
        if (is_witness(t, v)) {
            return SelfLoopWitness{t, v};
        }
        int j = k - 1;
        while (j >= 0 && t[static_cast<std::size_t>(j)] == search_cap) {
            t[static_cast<std::size_t>(j)] = 1;
            --j;
        }
        if (j < 0) {
            return std::nullopt;
        }
        ++t[static_cast<std::size_t>(j)];
    }
}

inline StructureReport analyze_structure(const GenFn& f, Int search_cap) {
    StructureReport r = classify(f);
    r.witness = self_loop_search(f, search_cap);
    r.search_exhausted_to = search_cap;
    return r;
}

namespace structure_detail {

inline const Multilinear& require_multilinear(const GenFn& f, const char* what) {
    const auto* ml = std::get_if<Multilinear>(&f.form());
    if (ml == nullptr) {
        throw PreconditionError(std::string(what) + " needs a multilinear function");
    }
    return *ml;
}

inline SelfLoopWitness confirm(const Multilinear& f, Tuple t) {
    Int v = f.apply(t);
    if (!is_witness(t, v)) {
        throw Error("internal: constructed tuple " + format_tuple(t) + " is not a witness");
    }
    return {std::move(t), v};
}

}  // namespace structure_detail

/// Non-self-loop witness for a0 + a1 x1 + ... + ak xk with every ai ≠ 0.
///
/// Σ_{i=0..k} ai ≠ 1: the all-ones tuple maps to that sum. Otherwise take the
/// smallest l ≥ 1 with al ∉ {0, 1} and put 2 there: the value is 1 + al.
/// If every ai = 1 for i ≥ 1 then a0 = 1 - k; for k ≥ 2 the all-twos tuple
/// maps to 2 - a0 ≠ 2. The remaining case is the identity, a self-loop.
inline SelfLoopWitness additive_witness(const GenFn& f) {
    const Multilinear& ml = structure_detail::require_multilinear(f, "additive_witness");
    if (!is_additive(ml)) {
        throw PreconditionError("additive_witness: function has no additive structure");
    }
    const int k = ml.arity();
    const auto n = static_cast<std::size_t>(k);
    Int sum = ml.coefficient(0);
    for (int j = 0; j < k; ++j) {
        sum = checked_add(sum, ml.coefficient(var_bit(j)));
    }
    if (sum != 1) {
        return structure_detail::confirm(ml, Tuple(n, 1));
    }
    for (int j = 0; j < k; ++j) {
        Int a = ml.coefficient(var_bit(j));
        if (a != 0 && a != 1) {
            Tuple t(n, 1);
            t[static_cast<std::size_t>(j)] = 2;
            return structure_detail::confirm(ml, std::move(t));
        }
    }
    if (ml.coefficient(0) != 0) {
        return structure_detail::confirm(ml, Tuple(n, 2));
    }
    throw PreconditionError("additive_witness: the identity x -> x is a self-loop");
}

inline constexpr Int kDiagonalSearchLimit = 10000;

/// Non-self-loop witness for a multilinear f with non-zero leading
/// coefficient, always on the diagonal (m, ..., m). With
/// g(x) = Σ_{|I|≥1} a_I x^{|I|-1} we have f(m, ..., m) = a_∅ + m·g(m):
///   a_∅ ∉ {0, 1}: m = smallest prime p ∤ a_∅, value ≡ a_∅ ≢ 0 (mod p);
///   a_∅ = 1:      m = 2, value is odd;
///   a_∅ = 0:      m = first natural with g(m) ≠ 1, value m·g(m) ≠ m.
inline SelfLoopWitness multiplicative_witness(const GenFn& f) {
    const Multilinear& ml = structure_detail::require_multilinear(f, "multiplicative_witness");
    if (!is_multiplicative(ml)) {
        throw PreconditionError("multiplicative_witness: function has no multiplicative structure");
    }
    const auto n = static_cast<std::size_t>(ml.arity());
    const Int a_empty = ml.coefficient(0);
    if (a_empty != 0 && a_empty != 1) {
        return structure_detail::confirm(ml, Tuple(n, smallest_prime_not_dividing(a_empty)));
    }
    if (a_empty == 1) {
        return structure_detail::confirm(ml, Tuple(n, 2));
    }
    // Coefficients of g grouped by degree |I| - 1.
    std::vector<Int> g(n, 0);
    for (const Term& t : ml.terms()) {
        if (t.vars != 0) {
            auto d = static_cast<std::size_t>(std::popcount(t.vars) - 1);
            g[d] = checked_add(g[d], t.coeff);
        }
    }
    for (Int m = 1; m <= kDiagonalSearchLimit; ++m) {
        Int value = 0;
        for (std::size_t d = g.size(); d-- > 0;) {
            value = checked_add(checked_mul(value, m), g[d]);
        }
        if (value != 1) {
            return structure_detail::confirm(ml, Tuple(n, m));
        }
    }
    throw Error("multiplicative_witness: no m <= 10000 with g(m) != 1");
}

/// Only analytically known self-loops are labelled as such: the unary
/// identity, and min or max over all coordinates.
inline bool is_known_self_loop(const GenFn& f) {
    if (const auto* ml = std::get_if<Multilinear>(&f.form())) {
        return ml->arity() == 1 && ml->terms() == std::vector<Term>{{1, 1}};
    }
    if (const auto* ec = std::get_if<ExtremumCompose>(&f.form())) {
        return is_known_self_loop(ec->inner());
    }
    return false;
}

}  // namespace indmodel
