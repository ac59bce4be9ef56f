#pragma once

#include <cmath>
#include <cstdint>
#include <random>

/* Deterministic randomness: mt19937_64 output is pinned by the standard,
 * and the uniform/normal transforms are written out here because the
 * std:: distributions are implementation-defined. Same seed, same stream,
 * on every platform. */
namespace thrifty {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /* Uniform in [0, 1) with 53 random bits. */
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /* Standard normal via Box-Muller; no state is cached so the stream
     * position is a pure function of the draw count. */
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace thrifty
