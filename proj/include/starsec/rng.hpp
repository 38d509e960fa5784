#pragma once

#include <cmath>
#include <cstdint>

namespace starsec {

// SplitMix64; used to expand seeds into xoshiro state.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ with SplitMix64 seeding. The (seed, stream) constructor gives
// independent per-trial substreams: parallel runs are reproducible for a
// fixed seed regardless of thread count.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}

    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm{seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))};
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is absorbing
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe under log().
    double uniform01_open() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Marsaglia polar method with one cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double v1 = 0.0, v2 = 0.0, s = 0.0;
        do {
            v1 = 2.0 * uniform01() - 1.0;
            v2 = 2.0 * uniform01() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        has_spare_ = true;
        return v1 * f;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace starsec
