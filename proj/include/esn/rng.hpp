#pragma once

#include <cstdint>

namespace esn {

/// Seedable splitmix64 generator. Chosen over std::mt19937 +
/// std::uniform_real_distribution because the standard distributions are
/// not bit-identical across standard libraries; this one is portable.
///
/// Stream splitting rule: substream(tag) derives an independent generator
/// from the original seed and the tag. Reservoir construction uses
/// tag 1 for W, tag 2 for W_in, tag 3 for W_back; experiment replica k
/// runs on seed base_seed + k.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Standard normal via Box-Muller; draws in pairs, caches the spare.
    double next_gaussian();

    Rng substream(std::uint64_t tag) const {
        // One mixing round over (seed, tag) so substreams are decorrelated
        // from each other and from the parent stream.
        std::uint64_t z = seed_ ^ (tag * 0xD1B54A32D192ED03ull + 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return Rng(z ^ (z >> 31));
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace esn
