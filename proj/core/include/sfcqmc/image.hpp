// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sfcqmc/curves.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sfcqmc {

// Row-major gray or RGB raster with values in [0,1] and origin in the
// bottom-left corner. PGM/PPM writers emit rows top-down so displayed
// images keep that orientation.
struct ImageBuffer {
    uint32_t width = 0;
    uint32_t height = 0;
    uint32_t channels = 1;  // 1 = gray, 3 = RGB
    std::vector<double> data;

    ImageBuffer() = default;
    ImageBuffer(uint32_t w, uint32_t h, uint32_t c);

    double& at(uint32_t x, uint32_t y, uint32_t c = 0);
    double at(uint32_t x, uint32_t y, uint32_t c = 0) const;
    ImageDims dims() const { return {width, height}; }
};

/// Quantizes a value in [0,1] to 8 bits, rounding half up.
uint8_t quantize8(double v);

void write_pgm(const ImageBuffer& image, const std::string& path);  // binary P5
void write_ppm(const ImageBuffer& image, const std::string& path);  // binary P6

/// Dispatches on the channel count: P5 for gray, P6 for RGB.
void write_image(const ImageBuffer& image, const std::string& path);

}  // namespace sfcqmc
