// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/sequences.hpp>

#include <array>
#include <fstream>
#include <stdexcept>

namespace sfcqmc {

namespace {

constexpr std::array<uint16_t, kMaxHaltonDimensions> kPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
    43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

// Default rank-1 generating vector, 8 dimensions with z[0] = 1. Chosen by a
// randomized spectral-test search over odd 32-bit candidates: maximize the
// shortest dual-lattice vector across all 2D projections of the first 2^16
// points. Mirrored in core/data/rank1_z8.txt for the file interface.
constexpr std::array<uint32_t, 8> kDefaultLatticeZ = {
    1,          1471015369, 1876263141, 3223829425,
    128860715,  2792927579, 1977865899, 1128244527};

void check_dimensions(uint32_t dimensions) {
    if (dimensions < 1 || dimensions > kMaxHaltonDimensions)
        throw std::invalid_argument("Halton dimension count out of range");
}

}  // namespace

uint32_t nth_prime(uint32_t k) {
    if (k >= kMaxHaltonDimensions)
        throw std::out_of_range("prime index out of range");
    return kPrimes[k];
}

ScrambleSpec HaltonSpec::scramble_for(uint32_t dim) const {
    if (scrambles.empty())
        return ScrambleSpec::identity();
    if (scrambles.size() == 1)
        return scrambles.front();
    if (dim >= scrambles.size())
        throw std::out_of_range("no scramble configured for dimension");
    return scrambles[dim];
}

double halton_component(const HaltonSpec& spec, uint64_t i, uint32_t dim) {
    check_dimensions(spec.dimensions);
    if (dim >= spec.dimensions)
        throw std::out_of_range("Halton dimension out of range");
    return radical_inverse({nth_prime(dim), spec.scramble_for(dim)}, i);
}

SamplePoint halton_point(const HaltonSpec& spec, uint64_t i) {
    check_dimensions(spec.dimensions);
    SamplePoint p(spec.dimensions);
    for (uint32_t dim = 0; dim < spec.dimensions; ++dim)
        p[dim] = radical_inverse({nth_prime(dim), spec.scramble_for(dim)}, i);
    return p;
}

void validate(const LatticeSpec& spec) {
    if (spec.z.empty())
        throw std::invalid_argument("lattice generating vector is empty");
    if (spec.z[0] % 2 == 0)
        throw std::invalid_argument("lattice generating vector must have odd z[0]");
}

LatticeSpec default_lattice(uint32_t dimensions) {
    if (dimensions < 1 || dimensions > kDefaultLatticeZ.size())
        throw std::invalid_argument("default lattice supports 1 to 8 dimensions");
    LatticeSpec spec;
    spec.z.assign(kDefaultLatticeZ.begin(), kDefaultLatticeZ.begin() + dimensions);
    return spec;
}

LatticeSpec load_lattice(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open generating vector file: " + path);
    LatticeSpec spec;
    uint64_t value;
    while (in >> value) {
        if (value > 0xffffffffull)
            throw std::runtime_error("generating vector entry exceeds 32 bits");
        spec.z.push_back(uint32_t(value));
    }
    if (!in.eof())
        throw std::runtime_error("invalid generating vector file: " + path);
    validate(spec);
    return spec;
}

uint32_t reverse_bits32(uint32_t v) {
    v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
    v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
    v = ((v >> 4) & 0x0f0f0f0fu) | ((v & 0x0f0f0f0fu) << 4);
    v = ((v >> 8) & 0x00ff00ffu) | ((v & 0x00ff00ffu) << 8);
    return (v >> 16) | (v << 16);
}

uint32_t lattice_component_fixed(const LatticeSpec& spec, uint64_t i, uint32_t dim) {
    validate(spec);
    if (dim >= spec.dimensions())
        throw std::out_of_range("lattice dimension out of range");
    return reverse_bits32(uint32_t(i)) * spec.z[dim];
}

SamplePoint lattice_point(const LatticeSpec& spec, uint64_t i) {
    validate(spec);
    SamplePoint p(spec.dimensions());
    uint32_t rev = reverse_bits32(uint32_t(i));
    for (uint32_t dim = 0; dim < spec.dimensions(); ++dim)
        p[dim] = (rev * spec.z[dim]) * 0x1p-32;
    return p;
}

SamplePoint cranley_patterson(const SamplePoint& p, const SamplePoint& shift) {
    if (p.size() != shift.size())
        throw std::invalid_argument("Cranley-Patterson dimension mismatch");
    SamplePoint r(p.size());
    for (size_t k = 0; k < p.size(); ++k) {
        double v = p[k] + shift[k];
        if (v >= 1.0)
            v -= 1.0;
        r[k] = v;
    }
    return r;
}

}  // namespace sfcqmc
