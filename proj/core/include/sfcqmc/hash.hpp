// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace sfcqmc {

// Finalizer of the splitmix64 generator. Bijective on 64-bit words, so
// distinct keys never collide before the final mix.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr uint64_t hash_combine(uint64_t h, uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

// Counter-based hash of a small key tuple. All scramble randomness in the
// library is derived through this one function so results are reproducible
// across platforms.
template <typename... Words>
constexpr uint64_t hash_key(uint64_t first, Words... rest) {
    uint64_t h = mix64(first);
    ((h = hash_combine(h, static_cast<uint64_t>(rest))), ...);
    return h;
}

}  // namespace sfcqmc
