#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic random streams.
//
// Replay stability across builds requires that every transform from raw engine
// output to a sample is pinned down. The C++ standard specifies the exact output
// sequence of std::mt19937_64 but leaves std::uniform_real_distribution and
// std::normal_distribution implementation-defined, so both transforms are
// hand-rolled here:
//
//   u01:    (x >> 11) * 2^-53            in [0, 1), 53 random bits
//   normal: Marsaglia polar method with one cached spare
//
// Stream derivation hashes (master_seed, trial_index, purpose) through the
// splitmix64 finalizer so that per-trial streams are well separated and the
// model-draw stream does not depend on which policy consumes it.

namespace bai {

// splitmix64 output function: a bijective 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

enum class StreamPurpose : std::uint64_t {
    ModelDraw = 0,  // mu ~ H for the trial
    Reward = 1,     // observation noise
    Policy = 2,     // policy-internal randomness and final recommendation
};

// Seed shared by all streams of one trial; policy-independent by construction.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed ^ mix64(trial_index + 1));
}

inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                 StreamPurpose purpose) {
    return mix64(trial_seed(master_seed, trial_index) ^
                 (static_cast<std::uint64_t>(purpose) + 1));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1).
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal draw, Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * u01() - 1.0;
            v2 = 2.0 * u01() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        has_spare_ = true;
        return v1 * f;
    }

    // Uniform integer in {0, ..., n-1}; rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = eng_();
            if (x >= threshold) return x % n;
        }
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bai
