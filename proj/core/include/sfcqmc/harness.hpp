// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sfcqmc/image.hpp>
#include <sfcqmc/strategies.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sfcqmc {

// Analytic per-pixel test integrand g(pixel, u) -> [0,1]. Integrands with
// uses_pixel_offsets read u[0], u[1] as the sample position inside the
// pixel; any further components are plain integration variables. All
// shipped integrands have a closed-form per-pixel reference.
struct TestIntegrand {
    std::string name;
    uint32_t value_dims = 0;
    bool uses_pixel_offsets = false;
    std::function<double(PixelCoord, ImageDims, std::span<const double>)> eval;
    std::function<double(PixelCoord, ImageDims)> reference;  // may be empty

    uint32_t total_dims() const {
        return uses_pixel_offsets ? 2 + value_dims : value_dims;
    }
};

/// Shipped integrands: constant, gradient, disk, softshadow.
const TestIntegrand& find_integrand(const std::string& name);
std::vector<std::string> integrand_names();

/// Number of sample dimensions a strategy must provide for an integrand.
uint32_t required_dimensions(const StrategySpec& strategy, const TestIntegrand& g);

/// Renders the integrand: every pixel is the mean of g over its assigned
/// sample points, accumulated in ascending sample order. The result is
/// bit-identical for any thread count.
ImageBuffer render(const StrategySpec& strategy, const TestIntegrand& integrand,
                   uint64_t spp, uint32_t threads = 1);

/// Closed-form reference where available, otherwise enumeration along the
/// Hilbert curve at 2^14 samples per pixel.
ImageBuffer reference_image(const TestIntegrand& integrand, ImageDims dims);

// rmse realizes the l2 error; tile_splotchiness is the variance over 8x8
// tiles of the tile-mean signed error, a proxy for low-frequency noise
// clumping (tiles are clipped at the image borders).
struct ErrorReport {
    double rmse = 0;
    double tile_splotchiness = 0;
    double max_abs_error = 0;
};

constexpr uint32_t kSplotchinessTileSize = 8;

ErrorReport compare(const ImageBuffer& image, const ImageBuffer& reference);

struct ErrorCsvRow {
    std::string strategy;
    std::string integrand;
    uint64_t spp = 0;
    ErrorReport report;
};

/// CSV with a `strategy,integrand,spp,rmse,splotchiness,max_abs` header.
void write_error_csv(const std::string& path, std::span<const ErrorCsvRow> rows);

/// Exact area fraction of the pixel covered by the disk; the reference for
/// the disk integrand and a useful oracle on its own.
double disk_coverage(PixelCoord p, ImageDims dims);

}  // namespace sfcqmc
