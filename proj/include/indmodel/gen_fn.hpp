#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "indmodel/checked.hpp"
#include "indmodel/error.hpp"

namespace indmodel {

inline constexpr int kMaxArity = 16;

/// Subset I ⊆ {1..k} of variables; bit j stands for x_{j+1}.
using VarMask = std::uint32_t;

inline VarMask full_mask(int arity) { return (VarMask{1} << arity) - 1; }

inline VarMask var_bit(int index0) { return VarMask{1} << index0; }

struct Term {
    VarMask vars = 0;
    Int coeff = 0;

    bool operator==(const Term&) const = default;
};

inline void check_arity(int arity) {
    if (arity < 1 || arity > kMaxArity) {
        throw ArityError("arity must lie in [1, " + std::to_string(kMaxArity) + "], got " +
                         std::to_string(arity));
    }
}

/// Σ_I a_I · Π_{j∈I} x_j with integer coefficients.
///
/// Terms are kept canonical: sorted by mask, one entry per mask, no zero
/// coefficients. Construction sums repeated masks.
class Multilinear {
public:
    Multilinear() : Multilinear(1, {}) {}

    Multilinear(int arity, std::vector<Term> terms) : arity_(arity) {
        check_arity(arity);
        std::map<VarMask, Int> merged;
        for (const Term& t : terms) {
            if ((t.vars & ~full_mask(arity)) != 0) {
                throw ArityError("coefficient subset mentions a variable beyond arity " +
                                 std::to_string(arity));
            }
            merged[t.vars] = checked_add(merged[t.vars], t.coeff);
        }
        for (auto [vars, coeff] : merged) {
            if (coeff != 0) {
                terms_.push_back({vars, coeff});
            }
        }
    }

    static Multilinear constant(int arity, Int c) { return Multilinear(arity, {{0, c}}); }

    /// a + b·x on one variable.
    static Multilinear affine_unary(Int a, Int b) { return Multilinear(1, {{0, a}, {1, b}}); }

    int arity() const noexcept { return arity_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    Int coefficient(VarMask vars) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), vars,
                                   [](const Term& t, VarMask v) { return t.vars < v; });
        return (it != terms_.end() && it->vars == vars) ? it->coeff : 0;
    }

    /// Exact value; the caller guarantees t.size() == arity().
    Int apply(std::span<const Int> t) const {
        Int sum = 0;
        for (const Term& term : terms_) {
            Int prod = term.coeff;
            for (VarMask m = term.vars; m != 0; m &= m - 1) {
                prod = checked_mul(prod, t[static_cast<std::size_t>(std::countr_zero(m))]);
            }
            sum = checked_add(sum, prod);
        }
        return sum;
    }

    bool operator==(const Multilinear&) const = default;

private:
    int arity_ = 1;
    std::vector<Term> terms_;
};

/// Guarded cases "x_coord = equals ⇒ body", first match wins, else fallback.
class Piecewise {
public:
    struct Case {
        int coord = 0;  ///< 0-based coordinate index
        Int equals = 0;
        Multilinear body;

        bool operator==(const Case&) const = default;
    };

    Piecewise(int arity, std::vector<Case> cases, Multilinear fallback)
        : arity_(arity), cases_(std::move(cases)), fallback_(std::move(fallback)) {
        check_arity(arity);
        std::set<std::pair<int, Int>> seen;
        for (const Case& c : cases_) {
            if (c.coord < 0 || c.coord >= arity) {
                throw ArityError("piecewise guard coordinate out of range");
            }
            if (c.body.arity() != arity) {
                throw ArityError("piecewise case body arity differs from the function arity");
            }
            if (!seen.emplace(c.coord, c.equals).second) {
                throw PreconditionError("piecewise guards must be pairwise distinct");
            }
        }
        if (fallback_.arity() != arity) {
            throw ArityError("piecewise default body arity differs from the function arity");
        }
    }

    int arity() const noexcept { return arity_; }
    const std::vector<Case>& cases() const noexcept { return cases_; }
    const Multilinear& fallback() const noexcept { return fallback_; }

    Int apply(std::span<const Int> t) const {
        for (const Case& c : cases_) {
            if (t[static_cast<std::size_t>(c.coord)] == c.equals) {
                return c.body.apply(t);
            }
        }
        return fallback_.apply(t);
    }

    bool operator==(const Piecewise&) const = default;

private:
    int arity_;
    std::vector<Case> cases_;
    Multilinear fallback_;
};

class GenFn;

/// inner(min(x_1..x_k)) or inner(max(x_1..x_k)) for a unary `inner`.
class ExtremumCompose {
public:
    enum class Pick { min, max };

    ExtremumCompose(Pick pick, int arity, GenFn inner);

    Pick pick() const noexcept { return pick_; }
    int arity() const noexcept { return arity_; }
    const GenFn& inner() const noexcept { return *inner_; }

    Int apply(std::span<const Int> t) const;

    bool operator==(const ExtremumCompose& other) const;

private:
    Pick pick_;
    int arity_;
    std::shared_ptr<const GenFn> inner_;
};

/// Generating function S: ℕ^k → ℤ. Immutable value type.
class GenFn {
public:
    using Form = std::variant<Multilinear, Piecewise, ExtremumCompose>;

    GenFn(Multilinear f) : form_(std::move(f)) {}
    GenFn(Piecewise f) : form_(std::move(f)) {}
    GenFn(ExtremumCompose f) : form_(std::move(f)) {}

    const Form& form() const noexcept { return form_; }

    int arity() const {
        return std::visit([](const auto& f) { return f.arity(); }, form_);
    }

    /// Unchecked-arity evaluation used by the hot loops; overflow still throws.
    Int apply(std::span<const Int> t) const {
        return std::visit([&](const auto& f) { return f.apply(t); }, form_);
    }

    Int operator()(std::span<const Int> t) const { return apply(t); }

    bool operator==(const GenFn& other) const { return form_ == other.form_; }

private:
    Form form_;
};

inline ExtremumCompose::ExtremumCompose(Pick pick, int arity, GenFn inner)
    : pick_(pick), arity_(arity), inner_(std::make_shared<const GenFn>(std::move(inner))) {
    check_arity(arity);
    if (inner_->arity() != 1) {
        throw ArityError("extremum composition needs a unary inner function");
    }
}

inline Int ExtremumCompose::apply(std::span<const Int> t) const {
    Int pick = t[0];
    for (Int v : t) {
        pick = (pick_ == Pick::min) ? std::min(pick, v) : std::max(pick, v);
    }
    return inner_->apply(std::span<const Int>(&pick, 1));
}

inline bool ExtremumCompose::operator==(const ExtremumCompose& other) const {
    return pick_ == other.pick_ && arity_ == other.arity_ && *inner_ == *other.inner_;
}

/// Checked evaluation: arity must match and all coordinates must be ≥ 1.
inline Int eval(const GenFn& f, std::span<const Int> t) {
    if (static_cast<int>(t.size()) != f.arity()) {
        throw ArityError("tuple of length " + std::to_string(t.size()) +
                         " given to a function of arity " + std::to_string(f.arity()));
    }
    for (Int x : t) {
        if (x < 1) {
            throw PreconditionError("generating functions are evaluated on naturals only");
        }
    }
    return f.apply(t);
}

inline Int eval(const GenFn& f, std::initializer_list<Int> t) {
    return eval(f, std::span<const Int>(t.begin(), t.size()));
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string var_name(int index0, int arity) {
    if (arity == 1) {
        return "x";
    }
    if (arity == 2) {
        return index0 == 0 ? "x" : "y";
    }
    return "x" + std::to_string(index0 + 1);
}

}  // namespace detail

inline std::string to_string(const Multilinear& f) {
    std::vector<Term> order = f.terms();
    std::stable_sort(order.begin(), order.end(), [](const Term& a, const Term& b) {
        int da = std::popcount(a.vars);
        int db = std::popcount(b.vars);
        if ((da == 0) != (db == 0)) {
            return db == 0;
        }
        if (da != db) {
            return da > db;
        }
        // Lexicographic on the variable list, x1 first.
        VarMask diff = a.vars ^ b.vars;
        return diff != 0 && (a.vars & (diff & (~diff + 1))) != 0;
    });
    if (order.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const Term& t : order) {
        Int c = t.coeff;
        if (first) {
            if (c < 0) {
                os << "-";
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int mag = c < 0 ? -c : c;
        if (t.vars == 0) {
            os << mag;
        } else {
            if (mag != 1) {
                os << mag << "*";
            }
            bool firstVar = true;
            for (int j = 0; j < f.arity(); ++j) {
                if (t.vars & var_bit(j)) {
                    os << (firstVar ? "" : "*") << detail::var_name(j, f.arity());
                    firstVar = false;
                }
            }
        }
        first = false;
    }
    return os.str();
}

inline std::string to_string(const GenFn& f);

inline std::string to_string(const Piecewise& f) {
    std::ostringstream os;
    os << "piecewise(";
    for (const auto& c : f.cases()) {
        os << detail::var_name(c.coord, f.arity()) << " = " << c.equals << " -> "
           << to_string(c.body) << "; ";
    }
    os << "else " << to_string(f.fallback()) << ")";
    return os.str();
}

inline std::string to_string(const ExtremumCompose& f) {
    std::ostringstream os;
    os << "(" << to_string(f.inner()) << ")[x := "
       << (f.pick() == ExtremumCompose::Pick::min ? "min(" : "max(");
    for (int j = 0; j < f.arity(); ++j) {
        os << (j ? ", " : "") << detail::var_name(j, f.arity());
    }
    os << ")]";
    return os.str();
}

inline std::string to_string(const GenFn& f) {
    return std::visit([](const auto& g) { return to_string(g); }, f.form());
}

}  // namespace indmodel
