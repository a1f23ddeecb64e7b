// Sort element and the order-preserving double <-> integer key mapping.
//
// Keys are 64-bit unsigned integers compared in native unsigned order. Doubles
// enter through encode_double: flip the sign bit for non-negatives, flip all
// bits for negatives. The map is strictly monotone on non-NaN values and
// exactly invertible, with -0.0 ordering just below +0.0.

#ifndef LSORT_KEYS_HPP
#define LSORT_KEYS_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace lsort {

using Key = std::uint64_t;

constexpr std::uint64_t kSignBit = 0x8000000000000000ull;

// Precondition: x is not NaN. NaNs are rejected at ingestion (encode_doubles)
// so the sort core never sees them.
inline Key encode_double(double x) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    return (bits & kSignBit) ? ~bits : (bits ^ kSignBit);
}

inline double decode_double(Key k) {
    std::uint64_t bits = (k & kSignBit) ? (k ^ kSignBit) : ~k;
    return std::bit_cast<double>(bits);
}

// Bulk encode. Returns the index of the first NaN, or -1 if none (in which
// case all n outputs are valid).
inline std::ptrdiff_t encode_doubles(const double* in, Key* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(in[i])) return static_cast<std::ptrdiff_t>(i);
        out[i] = encode_double(in[i]);
    }
    return -1;
}

inline void decode_doubles(const Key* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = decode_double(in[i]);
}

} // namespace lsort

#endif
