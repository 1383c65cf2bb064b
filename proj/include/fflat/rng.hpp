#ifndef FFLAT_RNG_HPP
#define FFLAT_RNG_HPP

#include <cstdint>

namespace ffl {

// Deterministic splitmix64 stream. We do not use <random> distributions
// anywhere: their output is implementation-defined and would break
// byte-identical report reproduction across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; n > 0.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Derive an independent stream for subtask `index`.
    static uint64_t derive(uint64_t seed, uint64_t index) {
        Rng r(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
        r.next();
        return r.next();
    }

private:
    uint64_t state_;
};

} // namespace ffl

#endif
