// Seedable counter-based PRNG (splitmix64) with the distribution helpers the
// generators need. std::* distributions are implementation-defined, so every
// draw here is spelled out to keep outputs identical across platforms.

#ifndef LSORT_RNG_HPP
#define LSORT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace lsort {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_++); }

    // in [0, 1)
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // in (0, 1], safe as a log argument
    double next_unit_open() { return 1.0 - next_unit(); }

    // in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        return bound == 0 ? 0 : next_u64() % bound;
    }

    // Box-Muller; one value per pair of draws keeps the stream position
    // independent of call history.
    double next_normal() {
        double u1 = next_unit_open();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double next_exponential(double lambda) {
        return -std::log(next_unit_open()) / lambda;
    }

private:
    std::uint64_t state_;
};

} // namespace lsort

#endif
