// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace sfcqmc {

enum class ScrambleMode : uint8_t { Identity, Zaremba, Faure, RandomDigit, Owen };

// Digit scrambling applied to a radical inverse. RandomDigit and Owen are
// keyed on a 64-bit seed; Owen additionally carries the number of digits it
// scrambles (deeper digits pass through unchanged).
struct ScrambleSpec {
    ScrambleMode mode = ScrambleMode::Identity;
    uint64_t seed = 0;
    uint32_t owen_depth = 32;

    static ScrambleSpec identity() { return {}; }
    static ScrambleSpec zaremba() { return {ScrambleMode::Zaremba, 0, 0}; }
    static ScrambleSpec faure() { return {ScrambleMode::Faure, 0, 0}; }
    static ScrambleSpec random_digit(uint64_t seed) {
        return {ScrambleMode::RandomDigit, seed, 0};
    }
    static ScrambleSpec owen(uint64_t seed, uint32_t depth = 32) {
        return {ScrambleMode::Owen, seed, depth};
    }

    friend bool operator==(const ScrambleSpec&, const ScrambleSpec&) = default;
};

struct RadicalInverseSpec {
    uint32_t base = 2;
    ScrambleSpec scramble;
};

/// Reflects the base-b digits of i at the radix point, permuting each digit
/// according to the scramble first. Digits are accumulated as an integer
/// numerator and divided by the digit-window size once, so there is no
/// accumulation error; the result is always in [0,1).
double radical_inverse(const RadicalInverseSpec& spec, uint64_t i);
double radical_inverse(uint32_t base, uint64_t i);

/// Zaremba's digit permutation (a + k) mod b for digit a at position k.
uint32_t zaremba_digit(uint32_t base, uint32_t digit, uint32_t position);

/// Faure's recursive permutation family: sigma_2 = (0,1), even bases
/// interleave the doubled half-base permutation, odd bases insert the middle
/// fixed point into sigma_{b-1} with increments. Cached per base.
const std::vector<uint16_t>& faure_permutation(uint32_t base);

/// The digit permutation used by ScrambleMode::RandomDigit at one digit
/// position, derived from a counter-based hash of (seed, base, position).
std::vector<uint16_t> random_digit_permutation(uint32_t base, uint64_t seed,
                                               uint32_t position);

/// Owen scrambling of the radical inverse of index i: every digit is
/// permuted by a pseudo-random decision keyed on the seed and all more
/// significant digits, which preserves the elementary-interval structure.
/// At depth 1 this's identical to random digit scrambling of the first digit.
double owen_scramble_index(uint32_t base, uint64_t seed, uint32_t depth, uint64_t i);

/// Owen scrambling of a value in [0,1) with a finite base-b expansion of at
/// most depth digits.
double owen_scramble_value(uint32_t base, uint64_t seed, uint32_t depth, double x);

/// The unique index i < b^digits whose radical inverse equals j / b^digits,
/// i.e. the digit reversal of j in base b over the given digit count.
uint64_t inverse_radical(uint32_t base, uint32_t digits, uint64_t j);

/// floor(N * phi_b(i)) for N = b^digits. Over any aligned window of N
/// consecutive indices this is a permutation of {0, ..., N-1} and it repeats
/// with period N.
uint64_t partition_label(uint32_t base, uint32_t digits, uint64_t i);

}  // namespace sfcqmc
