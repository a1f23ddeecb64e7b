#ifndef LSORT_VERIFY_HPP
#define LSORT_VERIFY_HPP

#include <cstddef>
#include <span>

#include "keys.hpp"
#include "rng.hpp"

namespace lsort {

struct VerifyResult {
    bool sorted;
    std::size_t first_violation; // index i with a[i-1] > a[i]; 0 when sorted
};

inline VerifyResult verify_sorted(std::span<const Key> a) {
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i - 1] > a[i]) return {false, i};
    }
    return {true, 0};
}

// Order-independent content fingerprint; equal multisets hash equal.
inline std::uint64_t multiset_hash(std::span<const Key> a) {
    std::uint64_t h = 0;
    for (Key k : a) h += splitmix64(k);
    return h;
}

} // namespace lsort

#endif
