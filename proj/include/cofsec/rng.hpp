#ifndef COFSEC_RNG_HPP
#define COFSEC_RNG_HPP

#include <cstdint>
#include <string_view>

namespace cofsec {

// Deterministic, platform-independent RNG. std::uniform_real_distribution is
// implementation-defined, so uniform doubles are derived from the raw 64-bit
// stream directly; outputs are bit-identical for a given seed everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // splitmix warm-up decorrelates small consecutive seeds
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling keeps the draw exactly uniform
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::uint64_t state_;
};

/// Derives the seed of a named substream so that independent modules
/// (channel sampling, dithers, lab experiments) consume decoupled streams
/// from one user-facing seed.
inline std::uint64_t substream_seed(std::uint64_t base, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return base ^ h;
}

}  // namespace cofsec

#endif
