#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "indmodel/checked.hpp"

namespace indmodel {

/// Finite set of naturals kept as a strictly increasing vector.
using NatSet = std::vector<Int>;

/// A point of ℕ^k; coordinates in argument order.
using Tuple = std::vector<Int>;

inline NatSet normalized(NatSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool contains(const NatSet& s, Int x) { return std::binary_search(s.begin(), s.end(), x); }

inline NatSet set_union(const NatSet& a, const NatSet& b) {
    NatSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline NatSet set_difference(const NatSet& a, const NatSet& b) {
    NatSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline NatSet set_intersection(const NatSet& a, const NatSet& b) {
    NatSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const NatSet& a, const NatSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Elements of `s` inside [lo, hi].
inline NatSet clip(const NatSet& s, Int lo, Int hi) {
    auto first = std::lower_bound(s.begin(), s.end(), lo);
    auto last = std::upper_bound(s.begin(), s.end(), hi);
    return NatSet(first, last);
}

inline NatSet interval_set(Int lo, Int hi) {
    NatSet out;
    for (Int x = lo; x <= hi; ++x) {
        out.push_back(x);
    }
    return out;
}

/// Dense membership table over [0, cap].
class Membership {
public:
    explicit Membership(Int cap) : bits_(static_cast<std::size_t>(cap) + 1, 0) {}

    Membership(Int cap, const NatSet& init) : Membership(cap) {
        for (Int x : init) {
            insert(x);
        }
    }

    Int cap() const noexcept { return static_cast<Int>(bits_.size()) - 1; }

    bool in_range(Int x) const noexcept { return x >= 1 && x <= cap(); }

    bool test(Int x) const noexcept { return in_range(x) && bits_[static_cast<std::size_t>(x)]; }

    /// Returns true when `x` was not present before.
    bool insert(Int x) {
        auto& slot = bits_[static_cast<std::size_t>(x)];
        if (slot) {
            return false;
        }
        slot = 1;
        return true;
    }

    NatSet to_set() const {
        NatSet out;
        for (std::size_t i = 1; i < bits_.size(); ++i) {
            if (bits_[i]) {
                out.push_back(static_cast<Int>(i));
            }
        }
        return out;
    }

private:
    std::vector<unsigned char> bits_;
};

inline std::string format_tuple(const Tuple& t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << (i ? ", " : "") << t[i];
    }
    os << ')';
    return os.str();
}

/// Renders a set as "[a, b, c]"; sets larger than 20 elements print
/// maximal runs of three or more consecutive values as "lo..hi".
inline std::string format_set(const NatSet& s) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    auto emit = [&](const std::string& item) {
        os << (first ? "" : ", ") << item;
        first = false;
    };
    if (s.size() <= 20) {
        for (Int x : s) {
            emit(std::to_string(x));
        }
    } else {
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t j = i;
            while (j + 1 < s.size() && s[j + 1] == s[j] + 1) {
                ++j;
            }
            if (j - i >= 2) {
                emit(std::to_string(s[i]) + ".." + std::to_string(s[j]));
            } else {
                for (std::size_t t = i; t <= j; ++t) {
                    emit(std::to_string(s[t]));
                }
            }
            i = j + 1;
        }
    }
    os << ']';
    return os.str();
}

}  // namespace indmodel
