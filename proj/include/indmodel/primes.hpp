#pragma once

#include "indmodel/checked.hpp"
#include "indmodel/error.hpp"

namespace indmodel {

inline bool is_prime(Int n) {
    if (n < 2) {
        return false;
    }
    if (n % 2 == 0) {
        return n == 2;
    }
    for (Int d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// Number of prime factors of n counted with multiplicity; Ω(1) = 0.
inline int prime_omega(Int n) {
    if (n < 1) {
        throw PreconditionError("prime_omega requires n >= 1");
    }
    int count = 0;
    for (Int d = 2; d <= n / d; ++d) {
        while (n % d == 0) {
            n /= d;
            ++count;
        }
    }
    if (n > 1) {
        ++count;
    }
    return count;
}

/// Smallest prime p with p ∤ a. For a = 0 every prime divides, so this
/// precondition is the caller's.
inline Int smallest_prime_not_dividing(Int a) {
    if (a == 0) {
        throw PreconditionError("every prime divides 0");
    }
    for (Int p = 2;; ++p) {
        if (is_prime(p) && a % p != 0) {
            return p;
        }
    }
}

}  // namespace indmodel
