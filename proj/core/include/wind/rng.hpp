#pragma once

#include <cmath>
#include <cstdint>

namespace wind {

// Counter-based 64-bit generator (splitmix finalizer over an affine
// counter).  Every output is a pure function of (key, counter), so
// per-sample streams derived from (master_seed, sample_index) never
// overlap and results do not depend on how samples are scheduled
// across workers.
class RngStream {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
        : key_(mix64(mix64(master_seed + kGamma) ^ (stream_index * kGamma + 1))),
          counter_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + (counter_++) * kGamma); }

    // Unbiased draw in [0, k) (Lemire's multiply-reject).
    std::uint64_t uniform_below(std::uint64_t k) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * k;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < k) {
            std::uint64_t t = (0 - k) % k;
            while (lo < t) {
                m = static_cast<__uint128_t>(next_u64()) * k;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal pair, Box-Muller.  Always consumes exactly two
    // uniforms, which keeps streams alignment-stable.
    void gaussian_pair(double& g0, double& g1) {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        g0 = r * std::cos(a);
        g1 = r * std::sin(a);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double g0, g1;
        gaussian_pair(g0, g1);
        spare_ = g1;
        have_spare_ = true;
        return g0;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wind
