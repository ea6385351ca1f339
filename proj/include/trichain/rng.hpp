#pragma once

#include <cstdint>
#include <random>

namespace trichain {

// Seedable generator used everywhere randomness is needed. The engine is
// std::mt19937_64, whose output stream is fixed by the standard, and the
// bounded/real draws below avoid the implementation-defined distributions,
// so trajectories are reproducible across platforms.
//
// Stream split rule for parallel chains: chain i uses seed ^ i.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static Rng for_chain(std::uint64_t master_seed, std::uint64_t chain_index) {
        return Rng(master_seed ^ chain_index);
    }

    std::uint64_t next() { return eng_(); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double real() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace trichain
