// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/image.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sfcqmc {

ImageBuffer::ImageBuffer(uint32_t w, uint32_t h, uint32_t c)
    : width(w), height(h), channels(c), data(uint64_t(w) * h * c, 0.0) {
    if (w == 0 || h == 0)
        throw std::invalid_argument("image dimensions must be positive");
    if (c != 1 && c != 3)
        throw std::invalid_argument("unsupported channel count");
}

double& ImageBuffer::at(uint32_t x, uint32_t y, uint32_t c) {
    return data[(uint64_t(y) * width + x) * channels + c];
}

double ImageBuffer::at(uint32_t x, uint32_t y, uint32_t c) const {
    return data[(uint64_t(y) * width + x) * channels + c];
}

uint8_t quantize8(double v) {
    if (!(v > 0.0))
        return 0;
    if (v >= 1.0)
        return 255;
    unsigned q = unsigned(v * 255.0 + 0.5);
    return uint8_t(q > 255 ? 255 : q);
}

namespace {

void write_binary(const ImageBuffer& image, const std::string& path,
                  const char* magic, uint32_t channels) {
    if (image.channels != channels)
        throw std::invalid_argument("image channel count does not match the format");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << magic << "\n" << image.width << " " << image.height << "\n255\n";
    std::vector<uint8_t> row(uint64_t(image.width) * channels);
    for (uint32_t y = image.height; y-- > 0;) {
        for (uint32_t x = 0; x < image.width; ++x)
            for (uint32_t c = 0; c < channels; ++c)
                row[uint64_t(x) * channels + c] = quantize8(image.at(x, y, c));
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out)
        throw std::runtime_error("failed writing image: " + path);
}

}  // namespace

void write_pgm(const ImageBuffer& image, const std::string& path) {
    write_binary(image, path, "P5", 1);
}

void write_ppm(const ImageBuffer& image, const std::string& path) {
    write_binary(image, path, "P6", 3);
}

void write_image(const ImageBuffer& image, const std::string& path) {
    if (image.channels == 1)
        write_pgm(image, path);
    else
        write_ppm(image, path);
}

}  // namespace sfcqmc
