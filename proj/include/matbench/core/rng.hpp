// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "matbench/core/math.hpp"

namespace matbench {

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr uint64_t hash_combine(uint64_t seed) { return mix64(seed); }

/// Stable hash of an ordered tuple of integers.
template <typename... Rest>
constexpr uint64_t hash_combine(uint64_t seed, uint64_t v, Rest... rest) {
    return hash_combine(mix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2))), rest...);
}

/// Sub-seed for (seed, role, index) triples. Every random stream in the
/// project is keyed this way so results never depend on scheduling.
constexpr uint64_t derive_seed(uint64_t seed, std::string_view role, uint64_t index = 0) {
    return hash_combine(seed, fnv1a(role), index);
}

/// Counter-based generator: output n is mix64(key + n * golden).
/// The stream is infinite and two streams with different keys are independent.
class Rng {
  public:
    explicit constexpr Rng(uint64_t key = 0) : key_(mix64(key)) {}
    constexpr Rng(uint64_t seed, std::string_view role, uint64_t index = 0)
        : Rng(derive_seed(seed, role, index)) {}

    constexpr uint64_t next_u64() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }
    constexpr uint32_t next_u32() { return static_cast<uint32_t>(next_u64() >> 32); }

    /// Uniform double in [0, 1).
    constexpr double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    Vec2 uniform2() {
        const double a = uniform();
        return {a, uniform()};
    }

    /// Uniform integer in [0, n).
    uint64_t uniform_index(uint64_t n) { return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n; }

    constexpr uint64_t counter() const { return counter_; }

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// Kensler's hashed permutation of [0, length).
uint32_t permute_index(uint32_t i, uint32_t length, uint32_t pattern);

/// Per-pixel stratified sampler. Each dimension of sample `s` out of `count`
/// is drawn from a correlated multi-jittered pattern keyed by (key, dimension),
/// so the estimate for a pixel depends only on its key.
class StratifiedSampler {
  public:
    StratifiedSampler(uint64_t key, uint32_t count) : key_(key), count_(count) {}

    void start_sample(uint32_t index) {
        index_ = index;
        dimension_ = 0;
    }
    uint32_t sample_index() const { return index_; }
    uint32_t sample_count() const { return count_; }

    double get_1d();
    Vec2 get_2d();

  private:
    double jitter(uint64_t salt) const;

    uint64_t key_;
    uint32_t count_;
    uint32_t index_ = 0;
    uint32_t dimension_ = 0;
};

}  // namespace matbench
