// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace sfcqmc {

// The four supported space-filling curves on square grids. Morton, Hilbert
// and Moore subdivide in base 2, Peano in base 3.
enum class CurveKind { Morton, Hilbert, Moore, Peano };

uint32_t curve_base(CurveKind kind);
const char* curve_name(CurveKind kind);

struct PixelCoord {
    uint32_t x = 0;
    uint32_t y = 0;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct ImageDims {
    uint32_t width = 1;
    uint32_t height = 1;

    uint64_t pixel_count() const { return uint64_t(width) * height; }
    bool contains(PixelCoord p) const { return p.x < width && p.y < height; }

    friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

// A curve of a given kind at subdivision level n covers a square grid of
// side base^n and length N = base^(2n). Levels are capped so N and per-pixel
// sample budgets never overflow 64-bit indices (side <= 2^15 in base 2,
// 3^9 in base 3).
struct GridSpec {
    CurveKind kind = CurveKind::Hilbert;
    uint32_t level = 0;

    uint32_t base() const { return curve_base(kind); }
    uint32_t side() const;
    uint64_t length() const { return uint64_t(side()) * side(); }
    bool contains(PixelCoord p) const { return p.x < side() && p.y < side(); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

uint32_t max_level(CurveKind kind);

/// Smallest grid of the given kind whose side is >= max(width, height).
/// Throws std::length_error if the required level exceeds the supported
/// range.
GridSpec fit_grid(CurveKind kind, ImageDims dims);

/// The index-th pixel visited by the curve. Inverse of curve_index.
PixelCoord curve_point(const GridSpec& grid, uint64_t index);

/// Position of pixel p along the curve. Inverse of curve_point.
uint64_t curve_index(const GridSpec& grid, PixelCoord p);

/// Number of in-image pixels strictly preceding p along the curve. Pixels
/// of the grid that fall outside dims are skipped, so ranks are a bijection
/// from in-image pixels to {0, ..., width*height - 1}.
///
/// Convenience form that scans the curve; use RankMap when ranking many
/// pixels of the same grid.
uint64_t in_image_rank(const GridSpec& grid, ImageDims dims, PixelCoord p);

/// Number of maximal runs of consecutive curve indices among the pixels of
/// the 3x3 neighborhood of p, clipped to the grid.
int neighborhood_segments(const GridSpec& grid, PixelCoord p);

// Precomputed in_image_rank for every pixel of an image. Immutable after
// construction and safe to share across threads.
class RankMap {
  public:
    RankMap(const GridSpec& grid, ImageDims dims);

    uint64_t rank(PixelCoord p) const;
    uint64_t total() const { return dims_.pixel_count(); }
    const GridSpec& grid() const { return grid_; }
    ImageDims dims() const { return dims_; }

  private:
    GridSpec grid_;
    ImageDims dims_;
    std::vector<uint32_t> rank_by_pixel_;  // row-major over dims
};

}  // namespace sfcqmc
