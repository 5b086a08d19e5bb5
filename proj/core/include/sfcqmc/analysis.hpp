// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sfcqmc/curves.hpp>
#include <sfcqmc/image.hpp>
#include <sfcqmc/radical.hpp>
#include <sfcqmc/strategies.hpp>

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sfcqmc {

/// Radical inverses of the per-pixel block start, one base per channel:
/// channel c of a pixel is phi_{b_c}(in_image_rank * spp). One base yields a
/// gray map, three bases an RGB map.
ImageBuffer dither_map(const GridSpec& grid, ImageDims dims,
                       const std::vector<RadicalInverseSpec>& bases, uint64_t spp);

// Absolute curve-index differences across all interior grid edges. The
// difference is one exactly on the curve's own steps; the histogram keeps
// the multiset of differences larger than one, which is what the figures
// print.
struct EdgeDiffMap {
    uint32_t side = 0;
    // edge (x,y)-(x+1,y) at y*(side-1)+x
    std::vector<uint64_t> horizontal;
    // edge (x,y)-(x,y+1) at y*side+x
    std::vector<uint64_t> vertical;
    std::map<uint64_t, uint64_t> large_diff_histogram;

    uint64_t horizontal_diff(uint32_t x, uint32_t y) const;
    uint64_t vertical_diff(uint32_t x, uint32_t y) const;
};

EdgeDiffMap diff_map(const GridSpec& grid);

struct SegmentStats {
    std::vector<uint64_t> histogram;  // histogram[s] = pixels with s segments
    int max = 0;
    std::vector<uint8_t> per_pixel;  // row-major over the grid
};

SegmentStats segment_stats(const GridSpec& grid);

/// Exact star discrepancy of a 2D point set in [0,1)^2 via a sweep over the
/// critical boxes anchored at the origin. Supports up to 4096 points.
double star_discrepancy_2d(std::span<const std::array<double, 2>> points);

/// Exact 1D star discrepancy, sort-based.
double star_discrepancy_1d(std::span<const double> values);

struct UniformityStats {
    double mean = 0;
    double max = 0;
    std::vector<double> per_pixel;  // row-major over the image
};

/// Local uniformity of one sample dimension: for every pixel, the 1D star
/// discrepancy of the values assigned within an odd window x window
/// neighborhood (clipped to the image) across all samples below spp.
UniformityStats neighborhood_uniformity(const StrategySpec& strategy, uint64_t spp,
                                        uint32_t dimension, uint32_t window = 3);

/// CSV with a `pixel_x,pixel_y,<metric>` header, one row per pixel.
void write_metric_csv(const std::string& path, ImageDims dims,
                      std::span<const double> values, const std::string& metric);

}  // namespace sfcqmc
