#pragma once

#include <string>

#include "indmodel/error.hpp"
#include "indmodel/gen_fn.hpp"
#include "indmodel/set_spec.hpp"

namespace indmodel {

/// ⟨B, S⟩.
struct InductionModel {
    SetSpec base;
    GenFn gen;

    bool operator==(const InductionModel&) const = default;
};

inline std::string to_string(const InductionModel& m) {
    return "<" + to_string(m.base) + ", " + to_string(m.gen) + ">";
}

/// Bounded semantics: verdicts concern [1, universe]; every set is clipped
/// to [1, cap]; fixpoint iteration stops after `cutoff` levels.
struct Bound {
    Int universe = 60;
    Int cap = 136;
    Int cutoff = 64;

    static constexpr Int kDefaultUniverse = 60;
    static constexpr Int kDefaultCutoff = 64;

    static Int default_cap(Int universe) { return 2 * universe + 16; }

    static Bound with_universe(Int universe, Int cutoff = kDefaultCutoff) {
        return make(universe, default_cap(universe), cutoff);
    }

    static Bound make(Int universe, Int cap, Int cutoff) {
        Bound b{universe, cap, cutoff};
        b.validate();
        return b;
    }

    void validate() const {
        if (universe < 1 || cap < universe) {
            throw PreconditionError("bound requires 1 <= N <= M");
        }
        if (cutoff < 1) {
            throw PreconditionError("bound requires cutoff >= 1");
        }
    }

    bool operator==(const Bound&) const = default;
};

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "unknown";
}

/// Step count: a decided finite value, or "no empty difference set within
/// `cutoff` levels", which is read as presumed ℵ₀.
class ExtNat {
public:
    static ExtNat finite(Int n) {
        if (n < 1) {
            throw PreconditionError("finite step counts are >= 1");
        }
        return ExtNat(true, n);
    }
    static ExtNat at_least(Int cutoff) { return ExtNat(false, cutoff); }

    bool is_finite() const noexcept { return finite_; }
    /// The finite value, or the cutoff for at_least.
    Int value() const noexcept { return value_; }

    bool operator==(const ExtNat&) const = default;

private:
    ExtNat(bool finite, Int v) : finite_(finite), value_(v) {}

    bool finite_;
    Int value_;
};

inline std::string to_string(const ExtNat& n) {
    if (n.is_finite()) {
        return std::to_string(n.value());
    }
    return "presumed ω (at least " + std::to_string(n.value()) + ")";
}

/// Outcome of a ≤ b under the three-valued rules.
struct ExtComparison {
    Tri result = Tri::unknown;
    /// Set when the answer treats two cutoff-exhausted counts as equal ω.
    bool presumes_omega = false;
};

inline ExtComparison compare_le(const ExtNat& a, const ExtNat& b) {
    if (a.is_finite() && b.is_finite()) {
        return {a.value() <= b.value() ? Tri::yes : Tri::no, false};
    }
    if (a.is_finite()) {
        // at_least(c) means D_i ≠ ∅ for every i ≤ c, so the true count exceeds c.
        return {a.value() <= b.value() ? Tri::yes : Tri::unknown, false};
    }
    if (b.is_finite()) {
        return {b.value() <= a.value() ? Tri::no : Tri::unknown, false};
    }
    return {Tri::yes, true};
}

}  // namespace indmodel
