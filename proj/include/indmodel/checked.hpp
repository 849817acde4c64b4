#pragma once

#include <cstdint>

#include "indmodel/error.hpp"

namespace indmodel {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
    Int out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError("integer overflow in addition");
    }
    return out;
}

inline Int checked_sub(Int a, Int b) {
    Int out = 0;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw OverflowError("integer overflow in subtraction");
    }
    return out;
}

inline Int checked_mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw OverflowError("integer overflow in multiplication");
    }
    return out;
}

}  // namespace indmodel
