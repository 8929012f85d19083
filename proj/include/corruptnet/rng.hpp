#pragma once

#include <cstdint>
#include <random>

namespace corruptnet {

// splitmix64 step; used both as a stream deriver and a cheap stateless hash.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive an independent stream seed from (base, index). Every piece of
// randomness in the toolkit flows through this so that trials are
// reproducible and independent given the base seed.
inline uint64_t mix_seed(uint64_t base, uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 wrapper with fully specified bounded draws (std distributions
// are implementation-defined; rejection sampling here is bit-exact
// everywhere).
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, bound), bound >= 1.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    bool coin() { return (engine_() >> 63) != 0; }

    // [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace corruptnet
