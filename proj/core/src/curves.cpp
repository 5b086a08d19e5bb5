// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/curves.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace sfcqmc {

namespace {

// Interleaves the low 16 bits of v into the even bit positions.
uint64_t spread_even_bits(uint32_t v) {
    uint64_t r = v & 0xffffu;
    r = (r | (r << 8)) & 0x00ff00ffull;
    r = (r | (r << 4)) & 0x0f0f0f0full;
    r = (r | (r << 2)) & 0x3333333333ull;
    r = (r | (r << 1)) & 0x5555555555ull;
    return r;
}

uint32_t compact_even_bits(uint64_t v) {
    v &= 0x5555555555ull;
    v = (v | (v >> 1)) & 0x3333333333ull;
    v = (v | (v >> 2)) & 0x0f0f0f0full;
    v = (v | (v >> 4)) & 0x00ff00ffull;
    v = (v | (v >> 8)) & 0x0000ffffull;
    return uint32_t(v);
}

// x occupies the least significant interleaved bit, so the parity of a
// Morton index equals the parity of its x coordinate.
uint64_t morton_index(uint32_t x, uint32_t y) {
    return spread_even_bits(x) | (spread_even_bits(y) << 1);
}

PixelCoord morton_point(uint64_t index) {
    return {compact_even_bits(index), compact_even_bits(index >> 1)};
}

void hilbert_rotate(uint32_t s, uint32_t& x, uint32_t& y, uint32_t rx, uint32_t ry) {
    if (ry == 0) {
        if (rx == 1) {
            x = s - 1 - x;
            y = s - 1 - y;
        }
        std::swap(x, y);
    }
}

// Canonical Hilbert construction. At level 1 the visit order is
// (0,0) -> (0,1) -> (1,1) -> (1,0); the curve at every level starts in the
// origin corner and ends at (side-1, 0).
PixelCoord hilbert_point(uint32_t level, uint64_t d) {
    uint32_t x = 0, y = 0;
    for (uint32_t k = 0; k < level; ++k) {
        uint32_t s = 1u << k;
        uint32_t rx = uint32_t(d >> 1) & 1u;
        uint32_t ry = uint32_t(d ^ rx) & 1u;
        hilbert_rotate(s, x, y, rx, ry);
        x += s * rx;
        y += s * ry;
        d >>= 2;
    }
    return {x, y};
}

uint64_t hilbert_index(uint32_t level, uint32_t x, uint32_t y) {
    uint64_t d = 0;
    for (uint32_t k = level; k-- > 0;) {
        uint32_t s = 1u << k;
        uint32_t rx = (x & s) ? 1u : 0u;
        uint32_t ry = (y & s) ? 1u : 0u;
        d += uint64_t(s) * s * ((3 * rx) ^ ry);
        hilbert_rotate(s, x, y, rx, ry);
    }
    return d;
}

// The Moore curve is four rotated Hilbert sub-curves forming a closed loop:
// up the left half, down the right half. The level-3 trace starts at (3,0).
PixelCoord moore_point(uint32_t level, uint64_t d) {
    if (level == 0)
        return {0, 0};
    uint32_t s = 1u << (level - 1);
    uint64_t quarter = uint64_t(s) * s;
    uint32_t q = uint32_t(d / quarter);
    PixelCoord h = hilbert_point(level - 1, d % quarter);
    switch (q) {
        case 0: return {s - 1 - h.y, h.x};
        case 1: return {s - 1 - h.y, h.x + s};
        case 2: return {h.y + s, 2 * s - 1 - h.x};
        default: return {h.y + s, s - 1 - h.x};
    }
}

uint64_t moore_index(uint32_t level, uint32_t x, uint32_t y) {
    if (level == 0)
        return 0;
    uint32_t s = 1u << (level - 1);
    uint64_t quarter = uint64_t(s) * s;
    uint32_t q;
    uint32_t hx, hy;
    if (x < s) {
        q = (y < s) ? 0 : 1;
        hx = (y < s) ? y : y - s;
        hy = s - 1 - x;
    } else {
        q = (y < s) ? 3 : 2;
        hx = (y < s) ? s - 1 - y : 2 * s - 1 - y;
        hy = x - s;
    }
    return q * quarter + hilbert_index(level - 1, hx, hy);
}

// Classic serpentine Peano construction. The canonical 3x3 cell order walks
// up column 0, down column 1 and up column 2; sub-cells are reflections of
// the parent, never rotations. x is reflected in cells with odd cell-y and
// y in cells with odd cell-x.
PixelCoord peano_point(uint32_t level, uint64_t d) {
    uint32_t x = 0, y = 0;
    uint32_t fx = 0, fy = 0;
    std::array<uint64_t, 20> p9{};
    p9[0] = 1;
    for (uint32_t k = 1; k <= level; ++k)
        p9[k] = p9[k - 1] * 9;
    for (uint32_t k = level; k-- > 0;) {
        uint32_t digit = uint32_t((d / p9[k]) % 9);
        uint32_t cx = digit / 3;
        uint32_t cy = (cx & 1) ? 2 - digit % 3 : digit % 3;
        uint32_t ex = fx ? 2 - cx : cx;
        uint32_t ey = fy ? 2 - cy : cy;
        x = x * 3 + ex;
        y = y * 3 + ey;
        fx ^= cy & 1;
        fy ^= cx & 1;
    }
    return {x, y};
}

uint64_t peano_index(uint32_t level, uint32_t x, uint32_t y) {
    uint64_t d = 0;
    uint32_t fx = 0, fy = 0;
    std::array<uint32_t, 20> p3{};
    p3[0] = 1;
    for (uint32_t k = 1; k <= level; ++k)
        p3[k] = p3[k - 1] * 3;
    for (uint32_t k = level; k-- > 0;) {
        uint32_t ex = (x / p3[k]) % 3;
        uint32_t ey = (y / p3[k]) % 3;
        uint32_t cx = fx ? 2 - ex : ex;
        uint32_t cy = fy ? 2 - ey : ey;
        uint32_t dy = (cx & 1) ? 2 - cy : cy;
        d = d * 9 + (cx * 3 + dy);
        fx ^= cy & 1;
        fy ^= cx & 1;
    }
    return d;
}

uint32_t pow_u32(uint32_t base, uint32_t exp) {
    uint32_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

void check_grid(const GridSpec& grid) {
    if (grid.level > max_level(grid.kind))
        throw std::length_error("grid level " + std::to_string(grid.level) +
                                " exceeds the supported range for " +
                                curve_name(grid.kind));
}

}  // namespace

uint32_t curve_base(CurveKind kind) {
    return kind == CurveKind::Peano ? 3u : 2u;
}

const char* curve_name(CurveKind kind) {
    switch (kind) {
        case CurveKind::Morton: return "morton";
        case CurveKind::Hilbert: return "hilbert";
        case CurveKind::Moore: return "moore";
        case CurveKind::Peano: return "peano";
    }
    return "unknown";
}

uint32_t max_level(CurveKind kind) {
    return curve_base(kind) == 2 ? 15u : 9u;
}

uint32_t GridSpec::side() const {
    return pow_u32(base(), level);
}

GridSpec fit_grid(CurveKind kind, ImageDims dims) {
    if (dims.width == 0 || dims.height == 0)
        throw std::invalid_argument("image dimensions must be positive");
    uint32_t target = std::max(dims.width, dims.height);
    uint32_t base = curve_base(kind);
    GridSpec grid{kind, 0};
    uint64_t side = 1;
    while (side < target) {
        side *= base;
        ++grid.level;
    }
    check_grid(grid);
    return grid;
}

PixelCoord curve_point(const GridSpec& grid, uint64_t index) {
    check_grid(grid);
    if (index >= grid.length())
        throw std::out_of_range("curve index out of range");
    switch (grid.kind) {
        case CurveKind::Morton: return morton_point(index);
        case CurveKind::Hilbert: return hilbert_point(grid.level, index);
        case CurveKind::Moore: return moore_point(grid.level, index);
        case CurveKind::Peano: return peano_point(grid.level, index);
    }
    throw std::logic_error("unreachable");
}

uint64_t curve_index(const GridSpec& grid, PixelCoord p) {
    check_grid(grid);
    if (!grid.contains(p))
        throw std::out_of_range("pixel coordinate outside the grid");
    switch (grid.kind) {
        case CurveKind::Morton: return morton_index(p.x, p.y);
        case CurveKind::Hilbert: return hilbert_index(grid.level, p.x, p.y);
        case CurveKind::Moore: return moore_index(grid.level, p.x, p.y);
        case CurveKind::Peano: return peano_index(grid.level, p.x, p.y);
    }
    throw std::logic_error("unreachable");
}

uint64_t in_image_rank(const GridSpec& grid, ImageDims dims, PixelCoord p) {
    if (dims.width > grid.side() || dims.height > grid.side())
        throw std::invalid_argument("image does not fit inside the grid");
    if (!dims.contains(p))
        throw std::out_of_range("pixel coordinate outside the image");
    uint64_t target = curve_index(grid, p);
    uint64_t rank = 0;
    for (uint64_t i = 0; i < target; ++i) {
        if (dims.contains(curve_point(grid, i)))
            ++rank;
    }
    return rank;
}

int neighborhood_segments(const GridSpec& grid, PixelCoord p) {
    check_grid(grid);
    if (!grid.contains(p))
        throw std::out_of_range("pixel coordinate outside the grid");
    std::array<uint64_t, 9> indices;
    int n = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            int64_t nx = int64_t(p.x) + dx;
            int64_t ny = int64_t(p.y) + dy;
            if (nx < 0 || ny < 0 || nx >= grid.side() || ny >= grid.side())
                continue;
            indices[n++] = curve_index(grid, {uint32_t(nx), uint32_t(ny)});
        }
    }
    std::sort(indices.begin(), indices.begin() + n);
    int segments = 1;
    for (int i = 1; i < n; ++i)
        if (indices[i] != indices[i - 1] + 1)
            ++segments;
    return segments;
}

RankMap::RankMap(const GridSpec& grid, ImageDims dims) : grid_(grid), dims_(dims) {
    check_grid(grid);
    if (dims.width == 0 || dims.height == 0)
        throw std::invalid_argument("image dimensions must be positive");
    if (dims.width > grid.side() || dims.height > grid.side())
        throw std::invalid_argument("image does not fit inside the grid");
    rank_by_pixel_.assign(dims.pixel_count(), 0);
    uint32_t rank = 0;
    for (uint64_t i = 0, n = grid.length(); i < n; ++i) {
        PixelCoord p = curve_point(grid, i);
        if (dims.contains(p))
            rank_by_pixel_[uint64_t(p.y) * dims.width + p.x] = rank++;
    }
}

uint64_t RankMap::rank(PixelCoord p) const {
    if (!dims_.contains(p))
        throw std::out_of_range("pixel coordinate outside the image");
    return rank_by_pixel_[uint64_t(p.y) * dims_.width + p.x];
}

}  // namespace sfcqmc
