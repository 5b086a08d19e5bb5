// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/strategies.hpp>

#include <sfcqmc/radical.hpp>

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

using namespace sfcqmc;

namespace {

HaltonSpec plain_halton(uint32_t dims) {
    HaltonSpec spec;
    spec.dimensions = dims;
    return spec;
}

}  // namespace

TEST_SUITE_BEGIN("strategies");

TEST_CASE("hilbert blocks index arithmetic") {
    auto spec = make_hilbert_blocks(CurveKind::Hilbert, {8, 8}, 4, plain_halton(2));

    // first pixel on the curve at s=0 -> sequence origin
    PixelCoord first = curve_point(spec.grid, 0);
    Assignment a = assign_hilbert_blocks(spec, {first, 0});
    CHECK(a.index == 0);
    CHECK(a.point == SamplePoint{0, 0});

    // pixel of rank 2 at s=3 -> index 11
    PixelCoord third = curve_point(spec.grid, 2);
    CHECK(assign_hilbert_blocks(spec, {third, 3}).index == 11);

    CHECK_THROWS_AS(assign_hilbert_blocks(spec, {first, 4}), std::invalid_argument);
    CHECK_THROWS_AS(assign_hilbert_blocks(spec, {{8, 0}, 0}), std::out_of_range);
}

TEST_CASE("hilbert blocks cover indices without gaps or repeats") {
    for (ImageDims dims : {ImageDims{8, 8}, ImageDims{5, 7}}) {
        for (uint32_t spp : {1u, 4u}) {
            auto spec = make_hilbert_blocks(CurveKind::Hilbert, dims, spp,
                                            plain_halton(2));
            std::set<uint64_t> seen;
            for (uint32_t y = 0; y < dims.height; ++y)
                for (uint32_t x = 0; x < dims.width; ++x)
                    for (uint32_t s = 0; s < spp; ++s)
                        seen.insert(assign_hilbert_blocks(spec, {{x, y}, s}).index);
            REQUIRE(seen.size() == dims.pixel_count() * spp);
            REQUIRE(*seen.begin() == 0);
            REQUIRE(*seen.rbegin() == dims.pixel_count() * spp - 1);
        }
    }
}

TEST_CASE("partitioned strategy leapfrogs with stride N") {
    auto spec = make_partitioned(CurveKind::Hilbert, {4, 4}, plain_halton(2), false);
    REQUIRE(spec.grid.length() == 16);

    PixelCoord origin = curve_point(spec.grid, 0);
    CHECK(assign_partitioned(spec, {origin, 0}).index == 0);

    PixelCoord fifth = curve_point(spec.grid, 5);
    CHECK(assign_partitioned(spec, {fifth, 3}).index == 53);

    // for every s the pixel indices cover exactly one stride window
    for (uint64_t s : {0ull, 1ull, 7ull}) {
        std::set<uint64_t> seen;
        for (uint32_t y = 0; y < 4; ++y)
            for (uint32_t x = 0; x < 4; ++x)
                seen.insert(assign_partitioned(spec, {{x, y}, s}).index);
        REQUIRE(seen.size() == 16);
        CHECK(*seen.begin() == s * 16);
        CHECK(*seen.rbegin() == (s + 1) * 16 - 1);
    }
}

TEST_CASE("partitioned inverse offset permutes within the window") {
    auto plain = make_partitioned(CurveKind::Hilbert, {4, 4}, plain_halton(2), false);
    auto inverse = make_partitioned(CurveKind::Hilbert, {4, 4}, plain_halton(2), true);

    for (uint64_t s : {0ull, 2ull}) {
        std::set<uint64_t> plain_set, inverse_set;
        bool differs = false;
        for (uint32_t y = 0; y < 4; ++y)
            for (uint32_t x = 0; x < 4; ++x) {
                uint64_t a = assign_partitioned(plain, {{x, y}, s}).index;
                uint64_t b = assign_partitioned(inverse, {{x, y}, s}).index;
                plain_set.insert(a);
                inverse_set.insert(b);
                differs = differs || a != b;
            }
        CHECK(plain_set == inverse_set);  // same window
        CHECK(differs);                   // different pixel assignment
    }

    // the offset is the inverse of the partition permutation: the pixel at
    // curve index j receives the subsequence whose partition label is j
    for (uint32_t y = 0; y < 4; ++y)
        for (uint32_t x = 0; x < 4; ++x) {
            uint64_t j = curve_index(inverse.grid, {x, y});
            uint64_t index = assign_partitioned(inverse, {{x, y}, 0}).index;
            CHECK(partition_label(2, 4, index) == j);
        }
}

TEST_CASE("partitioned point excludes the partitioning dimension") {
    CHECK(partitioned_base(2, 0) == 3);
    CHECK(partitioned_base(2, 1) == 5);
    CHECK(partitioned_base(3, 0) == 2);
    CHECK(partitioned_base(3, 1) == 5);

    auto spec = make_partitioned(CurveKind::Hilbert, {4, 4}, plain_halton(2), false);
    PixelCoord fifth = curve_point(spec.grid, 5);
    Assignment a = assign_partitioned(spec, {fifth, 3});
    CHECK(a.point[0] == radical_inverse(3, 53));
    CHECK(a.point[1] == radical_inverse(5, 53));
}

TEST_CASE("shifted lattice translates the same per pixel sequence") {
    LatticeSpec lattice = default_lattice(2);
    auto spec = make_shifted_lattice(CurveKind::Hilbert, {8, 8}, lattice,
                                     plain_halton(2));

    // rank-0 pixel: shift is the Halton origin, so points are raw lattice
    PixelCoord first = curve_point(spec.grid, 0);
    for (uint64_t s : {0ull, 3ull, 9ull}) {
        SamplePoint p = assign_shifted_lattice(spec, {first, s});
        CHECK(p == lattice_point(lattice, s));
    }

    // s = 0: the lattice origin, so the point is the pixel's shift itself
    RankMap ranks(spec.grid, spec.dims);
    for (uint32_t x = 0; x < 8; ++x) {
        SamplePoint p = assign_shifted_lattice(spec, {{x, 3}, 0});
        SamplePoint shift = halton_point(spec.shift, ranks.rank({x, 3}));
        CHECK(p == shift);
    }

    // two pixels at the same s differ by the difference of their shifts
    SamplePoint pa = assign_shifted_lattice(spec, {{1, 2}, 5});
    SamplePoint pb = assign_shifted_lattice(spec, {{6, 4}, 5});
    SamplePoint sa = halton_point(spec.shift, ranks.rank({1, 2}));
    SamplePoint sb = halton_point(spec.shift, ranks.rank({6, 4}));
    for (int d = 0; d < 2; ++d) {
        double lhs = pa[d] - pb[d] - (sa[d] - sb[d]);
        lhs -= std::floor(lhs + 0.5);  // mod 1, centered
        CHECK(std::abs(lhs) < 1e-12);
    }

    HaltonSpec mismatched = plain_halton(3);
    CHECK_THROWS_AS(
        make_shifted_lattice(CurveKind::Hilbert, {8, 8}, lattice, mismatched),
        std::invalid_argument);
}

TEST_CASE("image plane crt addresses cells through the radical inverses") {
    // 4x3 grid: pixel (1,0) at s=0 decodes to index 6
    auto spec = make_image_plane_crt({4, 3}, plain_halton(2));
    CHECK(spec.exp2 == 2);
    CHECK(spec.exp3 == 1);
    CHECK(assign_image_plane_crt(spec, {{1, 0}, 0}).index == 6);
    CHECK(assign_image_plane_crt(spec, {{0, 0}, 0}).index == 0);
}

TEST_CASE("image plane crt agrees with brute force binning") {
    // every index below the stride lands in exactly one cell, and the s-th
    // index of a cell is what the CRT decode returns
    auto spec = make_image_plane_crt({8, 9}, plain_halton(2));
    REQUIRE(spec.exp2 == 3);
    REQUIRE(spec.exp3 == 2);
    const uint64_t stride = 8 * 9;
    const uint64_t budget = stride * 4;

    std::map<std::pair<uint32_t, uint32_t>, std::vector<uint64_t>> cells;
    for (uint64_t i = 0; i < budget; ++i) {
        uint32_t cx = uint32_t(radical_inverse(2, i) * 8);
        uint32_t cy = uint32_t(radical_inverse(3, i) * 9);
        cells[{cx, cy}].push_back(i);
    }
    REQUIRE(cells.size() == stride);
    for (const auto& [cell, indices] : cells) {
        REQUIRE(indices.size() == 4);
        for (uint64_t s = 0; s < 4; ++s) {
            Assignment a = assign_image_plane_crt(spec, {{cell.first, cell.second}, s});
            REQUIRE(a.index == indices[s]);
        }
    }
}

TEST_CASE("image plane crt returns in-pixel offsets in dimensions 0 and 1") {
    auto spec = make_image_plane_crt({8, 9}, plain_halton(4));
    Assignment a = assign_image_plane_crt(spec, {{3, 5}, 2});
    CHECK(a.point[0] == radical_inverse(2, a.index / 8));
    CHECK(a.point[1] == radical_inverse(3, a.index / 9));
    CHECK(a.point[2] == radical_inverse(5, a.index));
    CHECK(a.point[3] == radical_inverse(7, a.index));
    for (double v : a.point) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("image plane crt rejects scrambles that break cell addressing") {
    HaltonSpec scrambled = plain_halton(2);
    scrambled.scrambles = {ScrambleSpec::zaremba()};
    CHECK_THROWS_AS(make_image_plane_crt({4, 3}, scrambled), std::invalid_argument);

    HaltonSpec faure = plain_halton(2);
    faure.scrambles = {ScrambleSpec::faure()};
    CHECK_NOTHROW(make_image_plane_crt({4, 3}, faure));
}

TEST_CASE("doubling segments") {
    auto spec = make_doubling(CurveKind::Hilbert, {4, 4}, plain_halton(2));
    const uint64_t pixels = 16;

    // s=0 reduces to hilbert blocks at one sample per pixel
    auto blocks = make_hilbert_blocks(CurveKind::Hilbert, {4, 4}, 1, plain_halton(2));
    for (uint32_t y = 0; y < 4; ++y)
        for (uint32_t x = 0; x < 4; ++x)
            CHECK(assign_doubling(spec, {{x, y}, 0}).index ==
                  assign_hilbert_blocks(blocks, {{x, y}, 0}).index);

    // rank-0 pixel: samples 1 and 2 come from the second iteration block
    PixelCoord first = curve_point(spec.grid, 0);
    CHECK(assign_doubling(spec, {first, 1}).index == pixels);
    CHECK(assign_doubling(spec, {first, 2}).index == pixels + 1);

    // iterations take disjoint contiguous segments and never reuse an index
    std::set<uint64_t> seen;
    for (uint32_t y = 0; y < 4; ++y)
        for (uint32_t x = 0; x < 4; ++x)
            for (uint64_t s = 0; s < 15; ++s)  // iterations t = 0..3 complete
                REQUIRE(seen.insert(assign_doubling(spec, {{x, y}, s}).index).second);
    CHECK(seen.size() == pixels * 15);
    CHECK(*seen.rbegin() == pixels * 15 - 1);
}

TEST_CASE("randomize pass") {
    auto inner = make_hilbert_blocks(CurveKind::Hilbert, {4, 4}, 2, plain_halton(2));

    // pass 0 with seed 0 is the unrandomized strategy
    InnerStrategy same = randomize_pass(InnerStrategy(inner), 0, 0);
    auto& same_spec = std::get<HilbertBlocksSpec>(same);
    for (uint32_t x = 0; x < 4; ++x) {
        Assignment a = assign_hilbert_blocks(inner, {{x, 1}, 1});
        Assignment b = assign_hilbert_blocks(same_spec, {{x, 1}, 1});
        CHECK(a.point == b.point);
    }

    // distinct passes draw distinct scramble seeds
    std::set<uint64_t> seeds;
    for (uint32_t pass = 0; pass < 1000; ++pass) {
        InnerStrategy r = randomize_pass(InnerStrategy(inner), pass, 1);
        seeds.insert(std::get<HilbertBlocksSpec>(r).halton.scrambles[0].seed);
    }
    CHECK(seeds.size() == 1000);

    // randomized passes change the points but stay in the unit interval
    InnerStrategy r1 = randomize_pass(InnerStrategy(inner), 1, 7);
    Assignment a = assign_hilbert_blocks(inner, {{2, 2}, 0});
    Assignment b = assign_hilbert_blocks(std::get<HilbertBlocksSpec>(r1), {{2, 2}, 0});
    CHECK(a.index == b.index);
    CHECK(a.point != b.point);
    for (double v : b.point) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }

    // CRT keeps its pixel-addressing dimensions unscrambled
    auto crt = make_image_plane_crt({4, 3}, plain_halton(3));
    InnerStrategy rc = randomize_pass(InnerStrategy(crt), 2, 7);
    const auto& crt_spec = std::get<ImagePlaneCrtSpec>(rc);
    CHECK(crt_spec.halton.scramble_for(0).mode == ScrambleMode::Identity);
    CHECK(crt_spec.halton.scramble_for(1).mode == ScrambleMode::Identity);
    CHECK(crt_spec.halton.scramble_for(2).mode == ScrambleMode::RandomDigit);
}

TEST_CASE("uniform assign dispatch and dimension bookkeeping") {
    auto hb = make_hilbert_blocks(CurveKind::Hilbert, {4, 4}, 2, plain_halton(3));
    StrategySpec strategy = hb;
    CHECK(sample_dimensions(strategy) == 3);
    CHECK(integrand_dim_offset(strategy) == 0);
    CHECK(strategy_dims(strategy) == ImageDims{4, 4});

    Assignment direct = assign_hilbert_blocks(hb, {{1, 1}, 1});
    Assignment via = assign(strategy, {{1, 1}, 1});
    CHECK(direct.index == via.index);
    CHECK(direct.point == via.point);

    StrategySpec crt = make_image_plane_crt({4, 3}, plain_halton(3));
    CHECK(integrand_dim_offset(crt) == 2);

    RandomizedSpec randomized{InnerStrategy(hb), 5, 2};
    StrategySpec rs = randomized;
    CHECK(sample_dimensions(rs) == 3);
    CHECK(strategy_dims(rs) == ImageDims{4, 4});
    // sample 3 = pass 1, inner sample 1
    Assignment inner_a = assign_hilbert_blocks(
        std::get<HilbertBlocksSpec>(randomize_pass(InnerStrategy(hb), 1, 5)),
        {{2, 1}, 1});
    Assignment outer_a = assign(rs, {{2, 1}, 3});
    CHECK(inner_a.index == outer_a.index);
    CHECK(inner_a.point == outer_a.point);
}

TEST_CASE("assignments are pure") {
    auto spec = make_partitioned(CurveKind::Peano, {5, 5}, plain_halton(2), true);
    Assignment a = assign_partitioned(spec, {{3, 4}, 11});
    Assignment b = assign_partitioned(spec, {{3, 4}, 11});
    CHECK(a.index == b.index);
    CHECK(a.point == b.point);
}

TEST_SUITE_END();
