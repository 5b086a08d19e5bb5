// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/radical.hpp>

#include <sfcqmc/hash.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sfcqmc {

namespace {

constexpr uint64_t kNumeratorLimit = uint64_t(1) << 53;
constexpr uint32_t kMaxBase = 512;

void check_base(uint32_t base) {
    if (base < 2 || base > kMaxBase)
        throw std::invalid_argument("radical inverse base out of range");
}

// Number of digit positions processed for scrambles that do not fix zero.
// b^digits stays within 2^53 so the accumulated numerator converts to
// double exactly and the result is strictly below one.
uint32_t digit_window(uint32_t base) {
    uint32_t digits = 0;
    uint64_t pow = 1;
    while (pow <= kNumeratorLimit / base) {
        pow *= base;
        ++digits;
    }
    return digits;
}

// Fisher-Yates permutation of {0,...,base-1} drawn from a counter-based
// stream over the given key.
void keyed_permutation(uint32_t base, uint64_t key, std::array<uint16_t, kMaxBase>& perm) {
    for (uint32_t k = 0; k < base; ++k)
        perm[k] = uint16_t(k);
    for (uint32_t t = base - 1; t > 0; --t) {
        uint32_t r = uint32_t(hash_key(key, t) % (t + 1));
        std::swap(perm[t], perm[r]);
    }
}

uint32_t keyed_digit(uint32_t base, uint64_t key, uint32_t digit) {
    if (base == 2) {
        // matches the two-element Fisher-Yates above
        uint32_t flip = (hash_key(key, 1) & 1) == 0 ? 1u : 0u;
        return digit ^ flip;
    }
    std::array<uint16_t, kMaxBase> perm;
    keyed_permutation(base, key, perm);
    return perm[digit];
}

uint64_t owen_node_key(uint32_t base, uint64_t seed, uint32_t level, uint64_t prefix) {
    return hash_key(seed, base, level, prefix);
}

double reversed_digits_identity(uint32_t base, const std::vector<uint16_t>* perm,
                                uint64_t i) {
    // Zero-preserving permutations: only the digits of i contribute, so the
    // numerator over b^m with m = digit count is exact for moderate i.
    uint64_t num = 0;
    double denom = 1;
    while (i > 0) {
        uint32_t digit = uint32_t(i % base);
        num = num * base + (perm ? (*perm)[digit] : digit);
        denom *= base;
        i /= base;
    }
    return num / denom;
}

}  // namespace

double radical_inverse(const RadicalInverseSpec& spec, uint64_t i) {
    check_base(spec.base);
    uint32_t b = spec.base;
    switch (spec.scramble.mode) {
        case ScrambleMode::Identity:
            return reversed_digits_identity(b, nullptr, i);
        case ScrambleMode::Faure:
            return reversed_digits_identity(b, &faure_permutation(b), i);
        case ScrambleMode::Zaremba: {
            // (a + k) mod b maps zero digits beyond the last digit of i to
            // nonzero values, so the full digit window contributes.
            uint32_t window = digit_window(b);
            uint64_t num = 0;
            double denom = 1;
            for (uint32_t k = 0; k < window; ++k) {
                uint32_t digit = uint32_t(i % b);
                num = num * b + zaremba_digit(b, digit, k);
                denom *= b;
                i /= b;
            }
            return num / denom;
        }
        case ScrambleMode::RandomDigit: {
            uint32_t window = digit_window(b);
            uint64_t num = 0;
            double denom = 1;
            for (uint32_t k = 0; k < window; ++k) {
                uint32_t digit = uint32_t(i % b);
                num = num * b + keyed_digit(b, hash_key(spec.scramble.seed, b, k, 0), digit);
                denom *= b;
                i /= b;
            }
            return num / denom;
        }
        case ScrambleMode::Owen:
            return owen_scramble_index(b, spec.scramble.seed, spec.scramble.owen_depth, i);
    }
    throw std::logic_error("unreachable");
}

double radical_inverse(uint32_t base, uint64_t i) {
    return radical_inverse(RadicalInverseSpec{base, ScrambleSpec::identity()}, i);
}

uint32_t zaremba_digit(uint32_t base, uint32_t digit, uint32_t position) {
    if (digit >= base)
        throw std::invalid_argument("digit must be less than the base");
    return (digit + position) % base;
}

const std::vector<uint16_t>& faure_permutation(uint32_t base) {
    check_base(base);
    static std::mutex mutex;
    static std::map<uint32_t, std::vector<uint16_t>> cache;

    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(base);
    if (it != cache.end())
        return it->second;

    // Build all permutations up to base; each step only needs smaller ones.
    std::function<const std::vector<uint16_t>&(uint32_t)> build =
        [&](uint32_t b) -> const std::vector<uint16_t>& {
        auto found = cache.find(b);
        if (found != cache.end())
            return found->second;
        std::vector<uint16_t> perm;
        if (b == 2) {
            perm = {0, 1};
        } else if (b % 2 == 0) {
            const auto& half = build(b / 2);
            perm.resize(b);
            for (uint32_t k = 0; k < b / 2; ++k) {
                perm[k] = uint16_t(2 * half[k]);
                perm[k + b / 2] = uint16_t(2 * half[k] + 1);
            }
        } else {
            const auto& prev = build(b - 1);
            uint32_t c = (b - 1) / 2;
            perm.reserve(b);
            for (uint16_t e : prev)
                perm.push_back(uint16_t(e + (e >= c ? 1 : 0)));
            perm.insert(perm.begin() + c, uint16_t(c));
        }
        return cache.emplace(b, std::move(perm)).first->second;
    };
    return build(base);
}

std::vector<uint16_t> random_digit_permutation(uint32_t base, uint64_t seed,
                                               uint32_t position) {
    check_base(base);
    std::array<uint16_t, kMaxBase> perm;
    keyed_permutation(base, hash_key(seed, base, position, 0), perm);
    return std::vector<uint16_t>(perm.begin(), perm.begin() + base);
}

double owen_scramble_index(uint32_t base, uint64_t seed, uint32_t depth, uint64_t i) {
    check_base(base);
    if (depth < 1)
        throw std::invalid_argument("Owen depth must be at least 1");
    uint32_t window = digit_window(base);
    uint64_t num = 0;
    uint64_t prefix = 0;
    double denom = 1;
    for (uint32_t k = 0; k < window; ++k) {
        uint32_t digit = uint32_t(i % base);
        uint32_t scrambled = digit;
        if (k < depth)
            scrambled = keyed_digit(base, owen_node_key(base, seed, k, prefix), digit);
        num = num * base + scrambled;
        prefix = prefix * base + digit;
        denom *= base;
        i /= base;
    }
    return num / denom;
}

double owen_scramble_value(uint32_t base, uint64_t seed, uint32_t depth, double x) {
    check_base(base);
    if (depth < 1)
        throw std::invalid_argument("Owen depth must be at least 1");
    if (!(x >= 0.0) || x >= 1.0)
        throw std::invalid_argument("value must lie in [0,1)");
    uint64_t num = 0;
    uint64_t prefix = 0;
    double denom = 1;
    double rest = x;
    for (uint32_t k = 0; k < depth; ++k) {
        rest *= base;
        uint32_t digit = uint32_t(rest);
        rest -= digit;
        uint32_t scrambled = keyed_digit(base, owen_node_key(base, seed, k, prefix), digit);
        num = num * base + scrambled;
        prefix = prefix * base + digit;
        denom *= base;
    }
    // rest is zero for inputs with a finite expansion of <= depth digits;
    // deeper digits pass through unscrambled otherwise.
    return num / denom + rest / denom;
}

uint64_t inverse_radical(uint32_t base, uint32_t digits, uint64_t j) {
    check_base(base);
    uint64_t n = 1;
    for (uint32_t k = 0; k < digits; ++k) {
        if (n > kNumeratorLimit)
            throw std::length_error("digit count exceeds the supported range");
        n *= base;
    }
    if (j >= n)
        throw std::out_of_range("partition label out of range");
    uint64_t reversed = 0;
    for (uint32_t k = 0; k < digits; ++k) {
        reversed = reversed * base + j % base;
        j /= base;
    }
    return reversed;
}

uint64_t partition_label(uint32_t base, uint32_t digits, uint64_t i) {
    check_base(base);
    uint64_t n = 1;
    for (uint32_t k = 0; k < digits; ++k)
        n *= base;
    return inverse_radical(base, digits, i % n);
}

}  // namespace sfcqmc
