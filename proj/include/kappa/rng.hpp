#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kappa {

// Deterministic random source. mt19937_64 is bit-stable across standard
// libraries; the variate transforms below are hand-rolled because the
// std::*_distribution algorithms are implementation-defined, which would break
// the byte-identical-output contract of the CLI.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on {0, 1, ..., k-1} by rejection (unbiased).
    std::uint64_t uniform_int(std::uint64_t k) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % k;
    }

    // Standard normal via the polar Box-Muller transform; caches the spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// SplitMix64 finalizer; good 64-bit avalanche mixer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from (master seed, task tag, indices).
// Replicate r of study tag at sample size n always sees the same stream, no
// matter how replicates are scheduled, so parallel fan-out stays deterministic.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t n, std::uint64_t replicate) {
    std::uint64_t h = mix64(master);
    for (char c : tag) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    h = mix64(h ^ n);
    h = mix64(h ^ replicate);
    return h;
}

}  // namespace kappa
