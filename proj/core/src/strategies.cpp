// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/strategies.hpp>

#include <sfcqmc/hash.hpp>

#include <bit>
#include <stdexcept>

namespace sfcqmc {

namespace {

constexpr uint32_t kMaxCrtExp2 = 31;
constexpr uint32_t kMaxCrtExp3 = 19;

uint64_t rank_of(const std::shared_ptr<const RankMap>& ranks, const GridSpec& grid,
                 ImageDims dims, PixelCoord p) {
    if (ranks && ranks->grid() == grid && ranks->dims() == dims)
        return ranks->rank(p);
    return in_image_rank(grid, dims, p);
}

void check_pixel(ImageDims dims, PixelCoord p) {
    if (!dims.contains(p))
        throw std::out_of_range("pixel coordinate outside the image");
}

// Greatest common divisor via the extended Euclidean algorithm in signed
// 64-bit integers; returns x with a*x + b*y = gcd(a, b).
int64_t extended_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    int64_t x1, y1;
    int64_t g = extended_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Smallest non-negative solution of i = r2 (mod m2), i = r3 (mod m3) for
// coprime moduli.
uint64_t crt_combine(uint64_t r2, uint64_t m2, uint64_t r3, uint64_t m3) {
    int64_t u, v;
    extended_gcd(int64_t(m2), int64_t(m3), u, v);
    // i = r2 * v * m3 + r3 * u * m2 (mod m2*m3), folded through unsigned
    // 128-bit arithmetic to avoid overflow.
    unsigned __int128 m = (unsigned __int128)(m2)*m3;
    auto mod_m = [&](int64_t s, uint64_t r, uint64_t f) {
        unsigned __int128 t = (unsigned __int128)(r) % m;
        t = (t * ((unsigned __int128)(f) % m)) % m;
        uint64_t su = uint64_t(s < 0 ? -s : s) % uint64_t(m);
        t = (t * su) % m;
        return s < 0 ? (m - t) % m : t;
    };
    unsigned __int128 i = (mod_m(v, r2, m3) + mod_m(u, r3, m2)) % m;
    return uint64_t(i);
}

void check_scrambles_preserve_cells(const HaltonSpec& halton) {
    // Pixel addressing decodes the leading base-2/base-3 digits, which only
    // works for scrambles that fix the zero digit position-independently.
    // Faure is the identity in bases 2 and 3.
    for (uint32_t dim = 0; dim < 2 && dim < halton.dimensions; ++dim) {
        ScrambleMode mode = halton.scramble_for(dim).mode;
        if (mode != ScrambleMode::Identity && mode != ScrambleMode::Faure)
            throw std::invalid_argument(
                "ImagePlaneCRT requires identity or Faure scrambles on "
                "dimensions 0 and 1");
    }
}

uint64_t pow_u64(uint64_t base, uint32_t exp) {
    uint64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

ScrambleSpec reseed(const ScrambleSpec& original, uint64_t pass_seed) {
    switch (original.mode) {
        case ScrambleMode::Owen:
            return ScrambleSpec::owen(hash_key(pass_seed, original.seed),
                                      original.owen_depth);
        case ScrambleMode::RandomDigit:
            return ScrambleSpec::random_digit(hash_key(pass_seed, original.seed));
        default:
            return ScrambleSpec::random_digit(pass_seed);
    }
}

void reseed_scrambles(HaltonSpec& halton, uint64_t pass_seed, uint32_t first_dim) {
    std::vector<ScrambleSpec> per_dim(halton.dimensions);
    for (uint32_t dim = 0; dim < halton.dimensions; ++dim) {
        ScrambleSpec original = halton.scramble_for(dim);
        per_dim[dim] = dim < first_dim ? original : reseed(original, pass_seed);
    }
    halton.scrambles = std::move(per_dim);
}

}  // namespace

uint32_t partitioned_base(uint32_t curve_base, uint32_t dim) {
    uint32_t skip = curve_base == 2 ? 0 : 1;  // index of the curve base prime
    return nth_prime(dim < skip ? dim : dim + 1);
}

HilbertBlocksSpec make_hilbert_blocks(CurveKind kind, ImageDims dims, uint32_t spp,
                                      HaltonSpec halton) {
    if (spp < 1)
        throw std::invalid_argument("samples per pixel must be at least 1");
    GridSpec grid = fit_grid(kind, dims);
    auto ranks = std::make_shared<const RankMap>(grid, dims);
    return {grid, dims, std::move(halton), spp, std::move(ranks)};
}

PartitionedSpec make_partitioned(CurveKind kind, ImageDims dims, HaltonSpec halton,
                                 bool use_inverse_offset) {
    GridSpec grid = fit_grid(kind, dims);
    return {grid, dims, std::move(halton), use_inverse_offset};
}

ShiftedLatticeSpec make_shifted_lattice(CurveKind kind, ImageDims dims,
                                        LatticeSpec lattice, HaltonSpec shift) {
    validate(lattice);
    if (shift.dimensions != lattice.dimensions())
        throw std::invalid_argument(
            "shift sequence and lattice must have matching dimensions");
    GridSpec grid = fit_grid(kind, dims);
    auto ranks = std::make_shared<const RankMap>(grid, dims);
    return {grid, dims, std::move(shift), std::move(lattice), std::move(ranks)};
}

ImagePlaneCrtSpec make_image_plane_crt(ImageDims dims, HaltonSpec halton) {
    if (dims.width == 0 || dims.height == 0)
        throw std::invalid_argument("image dimensions must be positive");
    if (halton.dimensions < 2)
        throw std::invalid_argument("ImagePlaneCRT needs at least 2 dimensions");
    check_scrambles_preserve_cells(halton);
    ImagePlaneCrtSpec spec;
    spec.dims = dims;
    spec.halton = std::move(halton);
    while (pow_u64(2, spec.exp2) < dims.width) {
        if (++spec.exp2 > kMaxCrtExp2)
            throw std::length_error("image width exceeds the CRT grid range");
    }
    while (pow_u64(3, spec.exp3) < dims.height) {
        if (++spec.exp3 > kMaxCrtExp3)
            throw std::length_error("image height exceeds the CRT grid range");
    }
    return spec;
}

DoublingSpec make_doubling(CurveKind kind, ImageDims dims, HaltonSpec halton) {
    GridSpec grid = fit_grid(kind, dims);
    auto ranks = std::make_shared<const RankMap>(grid, dims);
    return {grid, dims, std::move(halton), std::move(ranks)};
}

Assignment assign_hilbert_blocks(const HilbertBlocksSpec& spec, SampleRequest req) {
    check_pixel(spec.dims, req.pixel);
    if (req.sample >= spec.spp)
        throw std::invalid_argument("sample index exceeds the per-pixel budget");
    uint64_t rank = rank_of(spec.ranks, spec.grid, spec.dims, req.pixel);
    uint64_t index = rank * spec.spp + req.sample;
    return {index, halton_point(spec.halton, index)};
}

Assignment assign_partitioned(const PartitionedSpec& spec, SampleRequest req) {
    check_pixel(spec.dims, req.pixel);
    uint64_t n = spec.grid.length();
    uint64_t j = curve_index(spec.grid, req.pixel);
    uint64_t offset = spec.use_inverse_offset
                          ? inverse_radical(spec.grid.base(), 2 * spec.grid.level, j)
                          : j;
    uint64_t index = req.sample * n + offset;
    SamplePoint point(spec.halton.dimensions);
    for (uint32_t dim = 0; dim < spec.halton.dimensions; ++dim) {
        RadicalInverseSpec ri{partitioned_base(spec.grid.base(), dim),
                              spec.halton.scramble_for(dim)};
        point[dim] = radical_inverse(ri, index);
    }
    return {index, std::move(point)};
}

SamplePoint assign_shifted_lattice(const ShiftedLatticeSpec& spec, SampleRequest req) {
    check_pixel(spec.dims, req.pixel);
    uint64_t rank = rank_of(spec.ranks, spec.grid, spec.dims, req.pixel);
    SamplePoint shift = halton_point(spec.shift, rank);
    return cranley_patterson(lattice_point(spec.lattice, req.sample), shift);
}

Assignment assign_image_plane_crt(const ImagePlaneCrtSpec& spec, SampleRequest req) {
    check_pixel(spec.dims, req.pixel);
    uint64_t m2 = pow_u64(2, spec.exp2);
    uint64_t m3 = pow_u64(3, spec.exp3);
    uint64_t stride = m2 * m3;
    // phi_2(i) falls in cell x iff i = rev2(x) (mod 2^exp2); same for y in
    // base 3. The two congruences combine into the pixel's base offset.
    uint64_t r2 = inverse_radical(2, spec.exp2, req.pixel.x);
    uint64_t r3 = inverse_radical(3, spec.exp3, req.pixel.y);
    uint64_t base_index = crt_combine(r2, m2, r3, m3);
    if (req.sample > (UINT64_MAX - base_index) / stride)
        throw std::overflow_error("sample index overflows the sequence index");
    uint64_t index = req.sample * stride + base_index;

    SamplePoint point(spec.halton.dimensions);
    point[0] = radical_inverse({2, spec.halton.scramble_for(0)}, index / m2);
    if (spec.halton.dimensions > 1)
        point[1] = radical_inverse({3, spec.halton.scramble_for(1)}, index / m3);
    for (uint32_t dim = 2; dim < spec.halton.dimensions; ++dim)
        point[dim] = halton_component(spec.halton, index, dim);
    return {index, std::move(point)};
}

Assignment assign_doubling(const DoublingSpec& spec, SampleRequest req) {
    check_pixel(spec.dims, req.pixel);
    uint64_t rank = rank_of(spec.ranks, spec.grid, spec.dims, req.pixel);
    uint64_t pixels = spec.dims.pixel_count();
    // iteration t holds 2^t samples per pixel; its segment starts after the
    // (2^t - 1) * W * H samples of all previous iterations
    uint32_t t = std::bit_width(req.sample + 1) - 1;
    uint64_t within = req.sample + 1 - (uint64_t(1) << t);
    uint64_t index = ((uint64_t(1) << t) - 1) * pixels + rank * (uint64_t(1) << t) + within;
    return {index, halton_point(spec.halton, index)};
}

InnerStrategy randomize_pass(const InnerStrategy& inner, uint32_t pass, uint64_t seed) {
    if (pass == 0 && seed == 0)
        return inner;
    uint64_t pass_seed = hash_key(seed, pass);
    InnerStrategy copy = inner;
    std::visit(
        [&](auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ImagePlaneCrtSpec>) {
                reseed_scrambles(spec.halton, pass_seed, 2);
            } else if constexpr (std::is_same_v<T, ShiftedLatticeSpec>) {
                reseed_scrambles(spec.shift, pass_seed, 0);
            } else {
                reseed_scrambles(spec.halton, pass_seed, 0);
            }
        },
        copy);
    return copy;
}

Assignment assign(const StrategySpec& strategy, SampleRequest req) {
    return std::visit(
        [&](const auto& spec) -> Assignment {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ImagePlaneCrtSpec>) {
                return assign_image_plane_crt(spec, req);
            } else if constexpr (std::is_same_v<T, HilbertBlocksSpec>) {
                return assign_hilbert_blocks(spec, req);
            } else if constexpr (std::is_same_v<T, ShiftedLatticeSpec>) {
                return {req.sample, assign_shifted_lattice(spec, req)};
            } else if constexpr (std::is_same_v<T, PartitionedSpec>) {
                return assign_partitioned(spec, req);
            } else if constexpr (std::is_same_v<T, DoublingSpec>) {
                return assign_doubling(spec, req);
            } else {
                if (spec.pass_samples < 1)
                    throw std::invalid_argument("pass budget must be at least 1");
                uint32_t pass = uint32_t(req.sample / spec.pass_samples);
                SampleRequest inner_req{req.pixel, req.sample % spec.pass_samples};
                InnerStrategy randomized = randomize_pass(spec.inner, pass, spec.seed);
                return std::visit(
                    [&](const auto& s) { return assign(StrategySpec(s), inner_req); },
                    randomized);
            }
        },
        strategy);
}

uint32_t sample_dimensions(const StrategySpec& strategy) {
    return std::visit(
        [](const auto& spec) -> uint32_t {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ShiftedLatticeSpec>) {
                return spec.lattice.dimensions();
            } else if constexpr (std::is_same_v<T, RandomizedSpec>) {
                return std::visit(
                    [](const auto& s) { return sample_dimensions(StrategySpec(s)); },
                    spec.inner);
            } else {
                return spec.halton.dimensions;
            }
        },
        strategy);
}

uint32_t integrand_dim_offset(const StrategySpec& strategy) {
    if (std::holds_alternative<ImagePlaneCrtSpec>(strategy))
        return 2;
    if (const auto* randomized = std::get_if<RandomizedSpec>(&strategy))
        return std::holds_alternative<ImagePlaneCrtSpec>(randomized->inner) ? 2 : 0;
    return 0;
}

ImageDims strategy_dims(const StrategySpec& strategy) {
    return std::visit(
        [](const auto& spec) -> ImageDims {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, RandomizedSpec>) {
                return std::visit([](const auto& s) { return s.dims; }, spec.inner);
            } else {
                return spec.dims;
            }
        },
        strategy);
}

}  // namespace sfcqmc
