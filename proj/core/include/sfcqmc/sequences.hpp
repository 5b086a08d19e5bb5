// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sfcqmc/radical.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sfcqmc {

using SamplePoint = std::vector<double>;

constexpr uint32_t kMaxHaltonDimensions = 64;

/// The k-th prime, k < 64. Dimension k of the Halton sequence uses this base.
uint32_t nth_prime(uint32_t k);

// Multi-dimensional Halton sequence: dimension k is the radical inverse in
// the k-th prime base. Scrambles are per dimension; an empty list means
// identity everywhere, a single entry applies to every dimension.
struct HaltonSpec {
    uint32_t dimensions = 2;
    std::vector<ScrambleSpec> scrambles;

    ScrambleSpec scramble_for(uint32_t dim) const;
};

SamplePoint halton_point(const HaltonSpec& spec, uint64_t i);

/// Single Halton component, useful when only a slice of a point is needed.
double halton_component(const HaltonSpec& spec, uint64_t i, uint32_t dim);

// Extensible rank-1 lattice sequence in base 2. Component k of point i is
// the fractional part of phi_2(i) * z[k] evaluated in 32-bit fixed point,
// which keeps results bit-exact across platforms.
struct LatticeSpec {
    std::vector<uint32_t> z;

    uint32_t dimensions() const { return uint32_t(z.size()); }
};

/// The default generating vector shipped with the library (8 dimensions,
/// z[0] = 1). See core/data/rank1_z8.txt and the README for provenance.
LatticeSpec default_lattice(uint32_t dimensions = 8);

/// Loads a generating vector from a plain text file, one unsigned integer
/// per line; line k becomes z[k].
LatticeSpec load_lattice(const std::string& path);

void validate(const LatticeSpec& spec);

/// Component k of lattice point i in 32-bit fixed point: (rev32(i) * z[k])
/// mod 2^32 where rev32 is 32-bit bit reversal.
uint32_t lattice_component_fixed(const LatticeSpec& spec, uint64_t i, uint32_t dim);

SamplePoint lattice_point(const LatticeSpec& spec, uint64_t i);

/// Component-wise addition modulo one. The result stays strictly inside
/// [0,1) even when the sum rounds to an integer.
SamplePoint cranley_patterson(const SamplePoint& p, const SamplePoint& shift);

uint32_t reverse_bits32(uint32_t v);

}  // namespace sfcqmc
