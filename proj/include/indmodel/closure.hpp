#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indmodel/error.hpp"
#include "indmodel/model.hpp"
#include "indmodel/nat_set.hpp"

namespace indmodel {

/// Anything that maps k-tuples of naturals to integers.
template <class G>
concept Generator = requires(const G& g, std::span<const Int> t) {
    { g.arity() } -> std::convertible_to<int>;
    { g.apply(t) } -> std::convertible_to<Int>;
};

/// Calls f(span) for every tuple in slots[0] × slots[1] × ... in
/// lexicographic order. Empty slots produce no tuples.
template <class F>
void for_each_tuple(std::span<const NatSet* const> slots, F&& f) {
    const std::size_t k = slots.size();
    for (const NatSet* s : slots) {
        if (s->empty()) {
            return;
        }
    }
    std::vector<std::size_t> idx(k, 0);
    Tuple t(k);
    for (std::size_t j = 0; j < k; ++j) {
        t[j] = (*slots[j])[0];
    }
    while (true) {
        f(std::span<const Int>(t));
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++idx[j] < slots[j]->size()) {
                t[j] = (*slots[j])[idx[j]];
                break;
            }
            idx[j] = 0;
            t[j] = (*slots[j])[0];
            if (j == 0) {
                return;
            }
        }
        if (k == 0) {
            return;
        }
    }
}

template <class F>
void for_each_tuple(const NatSet& carrier, int arity, F&& f) {
    std::vector<const NatSet*> slots(static_cast<std::size_t>(arity), &carrier);
    for_each_tuple(std::span<const NatSet* const>(slots), std::forward<F>(f));
}

/// S^i(B), Cl_i and D_i for one level i.
struct ClosureLevel {
    NatSet power;
    NatSet closure;
    NatSet diff;
};

/// Per-level record of a bounded fixpoint computation. levels[0] holds
/// S^0 = Cl_0 = D_0 = materialized base.
struct ClosureTrace {
    Bound bound;
    std::vector<ClosureLevel> levels;
    /// l(x) indexed by x ∈ [0, cap]; -1 when x was never generated.
    std::vector<int> l_table;
    ExtNat stabilized_at = ExtNat::at_least(1);

    const NatSet& base() const { return levels.front().power; }
    const NatSet& closure() const { return levels.back().closure; }

    /// Cl_i, saturating at the last computed level.
    const NatSet& closure_at(std::size_t i) const {
        return levels[std::min(i, levels.size() - 1)].closure;
    }

    /// D_i, empty beyond the last computed level.
    NatSet diff_at(std::size_t i) const { return i < levels.size() ? levels[i].diff : NatSet{}; }

    std::optional<int> smallest_power(Int x) const {
        if (x < 1 || x > bound.cap || l_table[static_cast<std::size_t>(x)] < 0) {
            return std::nullopt;
        }
        return l_table[static_cast<std::size_t>(x)];
    }
};

/// Bounded powers of `gen` starting from `base` (already materialized).
///
/// S^i collects gen(t) ∩ [1, cap] over all k-tuples t of Cl_{i-1}. For
/// i ≥ 2 only tuples with a coordinate in D_{i-1} are evaluated: the rest
/// are tuples of Cl_{i-2}, whose images already make up S^{i-1} ⊆ S^i.
/// Stops at the first empty D_i or after `cutoff` levels.
template <Generator G>
ClosureTrace closure_trace(const NatSet& base, const G& gen, const Bound& bound) {
    bound.validate();
    if (base.empty()) {
        throw EmptyBaseError("closure of an empty base");
    }
    if (base.front() < 1 || base.back() > bound.cap) {
        throw PreconditionError("base must lie inside [1, cap]");
    }
    const int k = gen.arity();
    ClosureTrace tr;
    tr.bound = bound;
    tr.levels.push_back({base, base, base});

    Membership closure(bound.cap, base);
    Membership power(bound.cap);
    auto collect = [&](std::span<const Int> t) {
        Int v = gen.apply(t);
        if (power.in_range(v)) {
            power.insert(v);
        }
    };

    bool stabilized = false;
    for (Int i = 1; i <= bound.cutoff; ++i) {
        const ClosureLevel& prev = tr.levels.back();
        if (i == 1) {
            for_each_tuple(prev.closure, k, collect);
        } else {
            const NatSet& older = tr.levels[tr.levels.size() - 2].closure;
            std::vector<const NatSet*> slots(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) {
                for (int p = 0; p < k; ++p) {
                    slots[static_cast<std::size_t>(p)] =
                        p < j ? &older : (p == j ? &prev.diff : &prev.closure);
                }
                for_each_tuple(std::span<const NatSet* const>(slots), collect);
            }
        }
        ClosureLevel next;
        next.power = power.to_set();
        for (Int v : next.power) {
            if (!closure.test(v)) {
                next.diff.push_back(v);
            }
        }
        for (Int v : next.diff) {
            closure.insert(v);
        }
        next.closure = set_union(prev.closure, next.diff);
        const bool done = next.diff.empty();
        tr.levels.push_back(std::move(next));
        if (done) {
            tr.stabilized_at = ExtNat::finite(i);
            stabilized = true;
            break;
        }
    }
    if (!stabilized) {
        tr.stabilized_at = ExtNat::at_least(bound.cutoff);
    }

    tr.l_table.assign(static_cast<std::size_t>(bound.cap) + 1, -1);
    for (std::size_t i = tr.levels.size(); i-- > 0;) {
        for (Int x : tr.levels[i].diff) {
            tr.l_table[static_cast<std::size_t>(x)] = static_cast<int>(i);
        }
    }
    return tr;
}

inline ClosureTrace closure_trace(const InductionModel& m, const Bound& bound) {
    return closure_trace(m.base.materialize(bound.cap), m.gen, bound);
}

/// n(⟨B,S⟩): the first i ≥ 1 with D_i = ∅, or at_least(cutoff).
inline ExtNat step_count(const InductionModel& m, const Bound& bound) {
    return closure_trace(m, bound).stabilized_at;
}

struct NimVerdict {
    bool covered = false;
    NatSet missing;
    std::string caveat;
};

inline std::string bounded_caveat(const Bound& b) {
    return "bounded verdict: sets clipped to [1, " + std::to_string(b.cap) + "], at most " +
           std::to_string(b.cutoff) + " levels, coverage checked on [1, " +
           std::to_string(b.universe) + "]";
}

inline NimVerdict nim_verdict(const ClosureTrace& tr) {
    NimVerdict v;
    v.missing = set_difference(interval_set(1, tr.bound.universe), tr.closure());
    v.covered = v.missing.empty();
    v.caveat = bounded_caveat(tr.bound);
    return v;
}

/// Does Cl ⊇ [1, N]? The bounded surrogate of "⟨B,S⟩ is an ℕ-I.M.".
inline NimVerdict is_nim_bounded(const InductionModel& m, const Bound& bound) {
    return nim_verdict(closure_trace(m, bound));
}

/// Least G ⊆ [1, M] containing the base and closed under images landing in
/// [1, M], by plain iteration to a fixpoint. Ignores the cutoff and shares
/// no code with closure_trace.
template <Generator G>
NatSet minimal_closed_superset(const NatSet& base, const G& gen, Int cap) {
    Membership member(cap, base);
    NatSet current = member.to_set();
    bool changed = true;
    while (changed) {
        changed = false;
        for_each_tuple(current, gen.arity(), [&](std::span<const Int> t) {
            Int v = gen.apply(t);
            if (member.in_range(v) && member.insert(v)) {
                changed = true;
            }
        });
        current = member.to_set();
    }
    return current;
}

inline NatSet minimal_closed_superset(const InductionModel& m, const Bound& bound) {
    bound.validate();
    return minimal_closed_superset(m.base.materialize(bound.cap), m.gen, bound.cap);
}

inline constexpr Int kOracleMaxCap = 14;

/// Subset-enumeration check of the closure characterization: Cl is closed,
/// and every closed G ⊆ [1, M] containing the base contains Cl.
template <Generator G>
bool exhaustive_g_oracle(const NatSet& base, const G& gen, const Bound& tiny) {
    tiny.validate();
    if (tiny.cap > kOracleMaxCap) {
        throw PreconditionError("exhaustive oracle needs M <= " + std::to_string(kOracleMaxCap));
    }
    const int k = gen.arity();
    const Int m = tiny.cap;
    std::size_t table_size = 1;
    for (int j = 0; j < k; ++j) {
        table_size *= static_cast<std::size_t>(m);
        if (table_size > (std::size_t{1} << 22)) {
            throw PreconditionError("exhaustive oracle: M^k too large");
        }
    }
    // image[t] for every t ∈ [1, M]^k; masks use bit x-1 for element x.
    struct Entry {
        std::uint32_t coords;
        Int value;
    };
    std::vector<Entry> table;
    table.reserve(table_size);
    NatSet universe = interval_set(1, m);
    for_each_tuple(universe, k, [&](std::span<const Int> t) {
        std::uint32_t coords = 0;
        for (Int x : t) {
            coords |= std::uint32_t{1} << (x - 1);
        }
        table.push_back({coords, gen.apply(t)});
    });

    std::uint32_t base_mask = 0;
    for (Int x : base) {
        base_mask |= std::uint32_t{1} << (x - 1);
    }
    auto closed = [&](std::uint32_t g) {
        if ((g & base_mask) != base_mask) {
            return false;
        }
        for (const Entry& e : table) {
            if ((e.coords & ~g) == 0 && e.value >= 1 && e.value <= m &&
                !(g & (std::uint32_t{1} << (e.value - 1)))) {
                return false;
            }
        }
        return true;
    };

    ClosureTrace tr = closure_trace(base, gen, tiny);
    std::uint32_t cl_mask = 0;
    for (Int x : tr.closure()) {
        cl_mask |= std::uint32_t{1} << (x - 1);
    }
    if (!closed(cl_mask)) {
        return false;
    }
    const std::uint32_t all = (std::uint32_t{1} << m) - 1;
    for (std::uint32_t g = 0; g <= all; ++g) {
        if (closed(g) && (cl_mask & ~g) != 0) {
            return false;
        }
    }
    return true;
}

inline bool exhaustive_g_oracle(const InductionModel& m, const Bound& tiny) {
    tiny.validate();
    if (tiny.cap > kOracleMaxCap) {
        throw PreconditionError("exhaustive oracle needs M <= " + std::to_string(kOracleMaxCap));
    }
    return exhaustive_g_oracle(m.base.materialize(tiny.cap), m.gen, tiny);
}

}  // namespace indmodel
