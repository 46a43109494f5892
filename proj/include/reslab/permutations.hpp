#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "reslab/errors.hpp"

namespace reslab {

/// N! enumeration cap shared by every permutation-expansion operation.
inline constexpr int kEnumerationCap = 10;

inline void check_enumeration_cap(int n, const char* op) {
    if (n > kEnumerationCap) {
        throw CapacityError(std::string(op) + ": N = " + std::to_string(n) +
                            " exceeds the N! enumeration cap of " +
                            std::to_string(kEnumerationCap) +
                            "; use size_assignment for the size of large configurations");
    }
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Visits every permutation of {0..n-1} whose first image is `first`,
/// in lexicographic order.  Concatenating blocks 0..n-1 reproduces the full
/// lexicographic enumeration of all n! permutations.
template <typename Fn>
void for_each_permutation_in_block(int n, int first, Fn&& fn) {
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(n) - 1);
    for (int v = 0; v < n; ++v) {
        if (v != first) rest.push_back(v);
    }
    std::vector<int> pi(static_cast<size_t>(n));
    pi[0] = first;
    do {
        std::copy(rest.begin(), rest.end(), pi.begin() + 1);
        fn(const_cast<const std::vector<int>&>(pi));
    } while (std::next_permutation(rest.begin(), rest.end()));
}

template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
    if (n == 0) return;
    if (n == 1) {
        const std::vector<int> pi{0};
        fn(pi);
        return;
    }
    for (int first = 0; first < n; ++first) {
        for_each_permutation_in_block(n, first, fn);
    }
}

inline int count_fixed_points(const std::vector<int>& pi) {
    int k = 0;
    for (size_t i = 0; i < pi.size(); ++i) {
        if (pi[i] == static_cast<int>(i)) ++k;
    }
    return k;
}

}  // namespace reslab
