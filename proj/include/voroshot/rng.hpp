#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace voroshot {

// SplitMix64 stream. All randomness in the project flows through this
// generator so that seeded runs are identical across platforms; episode
// sampling, synthetic data generation and classifier initialization each
// derive their own independent stream from a 64-bit seed.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D649BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound). bound must be nonzero.
    uint64_t next_below(uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Consumes two draws per pair; the
    // second value of the pair is cached.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // (0,1] for the log argument
        double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    // Draws k distinct values from [0, n) by partial Fisher-Yates;
    // result order is the draw order.
    std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k);

    // In-place full shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            size_t j = i + static_cast<size_t>(next_below(v.size() - i));
            std::swap(v[i], v[j]);
        }
    }

private:
    uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace voroshot
