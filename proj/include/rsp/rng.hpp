// Deterministic 64-bit RNG: splitmix64 seeding into xoshiro256**.
// The scheme is fixed so ports in other languages can reproduce outcome
// sequences bit for bit; test vectors live in docs/rng.md.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rsp {

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256StarStar {
public:
    // State filled from four successive splitmix64 outputs.
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    Xoshiro256StarStar(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3)
        : s_{s0, s1, s2, s3} {}

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Per-run stream for run `i` of a batch seeded with `seed`: the xoshiro
// state is drawn from splitmix64 outputs 4i .. 4i+3 of the base stream, so
// streams never overlap and any run is reproducible in O(1).
inline Xoshiro256StarStar run_stream(std::uint64_t seed, std::uint64_t run_index) {
    constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    SplitMix64 sm(seed + 4 * run_index * kGamma);
    const std::uint64_t s0 = sm.next();
    const std::uint64_t s1 = sm.next();
    const std::uint64_t s2 = sm.next();
    const std::uint64_t s3 = sm.next();
    return Xoshiro256StarStar(s0, s1, s2, s3);
}

// Inverse-CDF sampling over exact probabilities; a draw landing exactly on
// a cumulative boundary resolves to the lower index.
inline std::size_t sample_index(const std::vector<double>& probs, double u) {
    if (probs.empty()) throw std::invalid_argument("sample_index: empty distribution");
    double cum = 0.0;
    std::size_t last_positive = 0;
    bool seen_positive = false;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        cum += probs[j];
        if (probs[j] > 0.0) {
            last_positive = j;
            seen_positive = true;
        }
        if (u <= cum && probs[j] > 0.0) return j;
    }
    if (!seen_positive) throw std::invalid_argument("sample_index: all-zero distribution");
    return last_positive;  // float round-off pushed u past the final boundary
}

}  // namespace rsp
