// SPDX-License-Identifier: Apache-2.0

#include "matbench/core/rng.hpp"

#include <cmath>

namespace matbench {

// Kensler, "Correlated Multi-Jittered Sampling", Pixar TM 13-01.
uint32_t permute_index(uint32_t i, uint32_t length, uint32_t p) {
    if (length <= 1) return 0;
    uint32_t w = length - 1;
    w |= w >> 1;
    w |= w >> 2;
    w |= w >> 4;
    w |= w >> 8;
    w |= w >> 16;
    do {
        i ^= p;
        i *= 0xe170893d;
        i ^= p >> 16;
        i ^= (i & w) >> 4;
        i ^= p >> 8;
        i *= 0x0929eb3f;
        i ^= p >> 23;
        i ^= (i & w) >> 1;
        i *= 1 | p >> 27;
        i *= 0x6935fa69;
        i ^= (i & w) >> 11;
        i *= 0x74dcb303;
        i ^= (i & w) >> 2;
        i *= 0x9e501cc3;
        i ^= (i & w) >> 2;
        i *= 0xc860a3df;
        i &= w;
        i ^= i >> 5;
    } while (i >= length);
    return (i + p) % length;
}

double StratifiedSampler::jitter(uint64_t salt) const {
    const uint64_t h = hash_combine(key_, dimension_, index_, salt);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double StratifiedSampler::get_1d() {
    const auto pattern = static_cast<uint32_t>(hash_combine(key_, dimension_, 1));
    const uint32_t stratum = permute_index(index_, count_, pattern);
    const double value = (stratum + jitter(11)) / count_;
    ++dimension_;
    return std::min(value, 0x1.fffffffffffffp-1);
}

Vec2 StratifiedSampler::get_2d() {
    const auto p = static_cast<uint32_t>(hash_combine(key_, dimension_, 2));
    const auto n_total = count_;
    const auto m = std::max<uint32_t>(1, static_cast<uint32_t>(std::sqrt(static_cast<double>(n_total))));
    const uint32_t n = (n_total + m - 1) / m;
    const uint32_t s = permute_index(index_, n_total, p * 0x51633e2d);
    const uint32_t sx = permute_index(s % m, m, p * 0x68bc21eb);
    const uint32_t sy = permute_index(s / m, n, p * 0x02e5be93);
    const double jx = jitter(23);
    const double jy = jitter(37);
    Vec2 out{(sx + (sy + jx) / n) / m, (s / m + (sx + jy) / m) / n};
    ++dimension_;
    out.x = std::min(out.x, 0x1.fffffffffffffp-1);
    out.y = std::min(out.y, 0x1.fffffffffffffp-1);
    return out;
}

}  // namespace matbench
