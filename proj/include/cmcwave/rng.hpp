#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cmcwave {

// Counter-based generator keyed by (seed, stream). Each draw hashes
// (key, counter) with the SplitMix64 finalizer, so independent streams are
// reproducible regardless of evaluation order or thread schedule.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    uint64_t next_u64() {
        return mix(key_ + 0x9E3779B97F4A7C15ULL * (++counter_));
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller (implementation-pinned for
    // reproducibility across platforms).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cmcwave
