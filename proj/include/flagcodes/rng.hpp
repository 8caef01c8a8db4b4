#pragma once

#include <cstdint>

namespace flagcodes {

// xorshift64* with the classic 12/25/27 shift triple and multiplier
// 0x2545F4914F6CDD1D. The generator is part of the external interface:
// simulation streams must be reproducible bit-exactly from the seed, so the
// algorithm and the draw order are documented in the README and must not
// change. A zero seed is remapped to the golden-ratio constant because the
// all-zero state is a fixed point of the xorshift map.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // Uniform in [0, bound). Plain modulo; the bias is below 2^-50 for every
    // bound used here (all bounds are tiny) and keeping the draw to a single
    // next() call keeps cross-implementation replay simple.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

  private:
    std::uint64_t state_;
};

}  // namespace flagcodes
