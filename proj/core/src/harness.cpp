// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/harness.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace sfcqmc {

namespace {

constexpr double kDiskCenterX = 0.5;
constexpr double kDiskCenterY = 0.5;
constexpr double kDiskRadius = 0.3;

double gradient_scale(PixelCoord p, ImageDims dims) {
    return 0.5 * ((p.x + 0.5) / dims.width + (p.y + 0.5) / dims.height);
}

double shadow_threshold_x(PixelCoord p, ImageDims dims) {
    return 2.0 * (p.x + 0.5) / dims.width;
}

double shadow_threshold_y(PixelCoord p, ImageDims dims) {
    return 2.0 * (p.y + 0.5) / dims.height;
}

// P(u + v < t) for independent u, v uniform on [0,1).
double triangle_probability(double t) {
    if (t <= 0)
        return 0;
    if (t <= 1)
        return 0.5 * t * t;
    if (t < 2)
        return 1.0 - 0.5 * (2.0 - t) * (2.0 - t);
    return 1;
}

// integral of sqrt(r^2 - y^2) dy from -r to d, with d clamped to [-r, r]
double circle_slice(double r, double d) {
    d = std::clamp(d, -r, r);
    return 0.5 * (d * std::sqrt(std::max(0.0, r * r - d * d)) +
                  r * r * (std::asin(d / r) + std::numbers::pi / 2));
}

// Area of the disk of radius r around the origin intersected with the
// quadrant {x <= a, y <= b}.
double circle_quadrant_area(double r, double a, double b) {
    if (a <= -r || b <= -r)
        return 0;
    if (a >= r)
        return 2.0 * circle_slice(r, b);
    if (b >= r)
        return 2.0 * circle_slice(r, a);
    double ys = std::sqrt(std::max(0.0, r * r - a * a));
    if (a >= 0) {
        if (b <= -ys)
            return 2.0 * circle_slice(r, b);
        double area = 2.0 * circle_slice(r, -ys);
        if (b <= ys)
            return area + a * (b + ys) + circle_slice(r, b) - circle_slice(r, -ys);
        area += 2.0 * a * ys + circle_slice(r, ys) - circle_slice(r, -ys);
        return area + 2.0 * (circle_slice(r, b) - circle_slice(r, ys));
    }
    if (b <= -ys)
        return 0;
    if (b <= ys)
        return a * (b + ys) + circle_slice(r, b) - circle_slice(r, -ys);
    return 2.0 * a * ys + circle_slice(r, ys) - circle_slice(r, -ys);
}

double circle_rect_area(double cx, double cy, double r, double x0, double y0,
                        double x1, double y1) {
    return circle_quadrant_area(r, x1 - cx, y1 - cy) -
           circle_quadrant_area(r, x0 - cx, y1 - cy) -
           circle_quadrant_area(r, x1 - cx, y0 - cy) +
           circle_quadrant_area(r, x0 - cx, y0 - cy);
}

const std::vector<TestIntegrand>& integrands() {
    static const std::vector<TestIntegrand> table = [] {
        std::vector<TestIntegrand> t;

        TestIntegrand constant;
        constant.name = "constant";
        constant.value_dims = 0;
        constant.eval = [](PixelCoord, ImageDims, std::span<const double>) {
            return 0.5;
        };
        constant.reference = [](PixelCoord, ImageDims) { return 0.5; };
        t.push_back(std::move(constant));

        TestIntegrand gradient;
        gradient.name = "gradient";
        gradient.value_dims = 2;
        gradient.eval = [](PixelCoord p, ImageDims dims, std::span<const double> u) {
            return gradient_scale(p, dims) * u[0] * u[1];
        };
        gradient.reference = [](PixelCoord p, ImageDims dims) {
            return gradient_scale(p, dims) / 4.0;
        };
        t.push_back(std::move(gradient));

        TestIntegrand disk;
        disk.name = "disk";
        disk.value_dims = 0;
        disk.uses_pixel_offsets = true;
        disk.eval = [](PixelCoord p, ImageDims dims, std::span<const double> u) {
            double qx = (p.x + u[0]) / dims.width - kDiskCenterX;
            double qy = (p.y + u[1]) / dims.height - kDiskCenterY;
            return qx * qx + qy * qy <= kDiskRadius * kDiskRadius ? 1.0 : 0.0;
        };
        disk.reference = [](PixelCoord p, ImageDims dims) {
            return disk_coverage(p, dims);
        };
        t.push_back(std::move(disk));

        TestIntegrand shadow;
        shadow.name = "softshadow";
        shadow.value_dims = 4;
        shadow.eval = [](PixelCoord p, ImageDims dims, std::span<const double> u) {
            double a = u[0] + u[1] < shadow_threshold_x(p, dims) ? 1.0 : 0.0;
            double b = u[2] + u[3] < shadow_threshold_y(p, dims) ? 1.0 : 0.0;
            return a * b;
        };
        shadow.reference = [](PixelCoord p, ImageDims dims) {
            return triangle_probability(shadow_threshold_x(p, dims)) *
                   triangle_probability(shadow_threshold_y(p, dims));
        };
        t.push_back(std::move(shadow));
        return t;
    }();
    return table;
}

}  // namespace

double disk_coverage(PixelCoord p, ImageDims dims) {
    double x0 = double(p.x) / dims.width;
    double x1 = double(p.x + 1) / dims.width;
    double y0 = double(p.y) / dims.height;
    double y1 = double(p.y + 1) / dims.height;
    double area = circle_rect_area(kDiskCenterX, kDiskCenterY, kDiskRadius, x0, y0,
                                   x1, y1);
    return std::clamp(area * dims.width * dims.height, 0.0, 1.0);
}

const TestIntegrand& find_integrand(const std::string& name) {
    for (const auto& g : integrands())
        if (g.name == name)
            return g;
    throw std::invalid_argument("unknown integrand: " + name);
}

std::vector<std::string> integrand_names() {
    std::vector<std::string> names;
    for (const auto& g : integrands())
        names.push_back(g.name);
    return names;
}

uint32_t required_dimensions(const StrategySpec& strategy, const TestIntegrand& g) {
    if (g.uses_pixel_offsets)
        return 2 + g.value_dims;
    return integrand_dim_offset(strategy) + g.value_dims;
}

ImageBuffer render(const StrategySpec& strategy, const TestIntegrand& integrand,
                   uint64_t spp, uint32_t threads) {
    if (spp < 1)
        throw std::invalid_argument("samples per pixel must be at least 1");
    ImageDims dims = strategy_dims(strategy);
    if (sample_dimensions(strategy) < required_dimensions(strategy, integrand))
        throw std::invalid_argument("strategy provides too few sample dimensions");

    ImageBuffer image(dims.width, dims.height, 1);
    uint32_t offset = integrand_dim_offset(strategy);
    uint32_t u_dims = integrand.total_dims();

    auto run_rows = [&](uint32_t y_begin, uint32_t y_end) {
        std::vector<double> u(u_dims);
        for (uint32_t y = y_begin; y < y_end; ++y) {
            for (uint32_t x = 0; x < dims.width; ++x) {
                PixelCoord pixel{x, y};
                double acc = 0;
                for (uint64_t s = 0; s < spp; ++s) {
                    Assignment a = assign(strategy, {pixel, s});
                    if (integrand.uses_pixel_offsets) {
                        for (uint32_t k = 0; k < u_dims; ++k)
                            u[k] = a.point[k];
                    } else {
                        for (uint32_t k = 0; k < u_dims; ++k)
                            u[k] = a.point[offset + k];
                    }
                    acc += integrand.eval(pixel, dims, u);
                }
                image.at(x, y) = acc / double(spp);
            }
        }
    };

    threads = std::max(1u, std::min(threads, dims.height));
    if (threads == 1) {
        run_rows(0, dims.height);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        uint32_t rows = dims.height;
        for (uint32_t t = 0; t < threads; ++t) {
            uint32_t y_begin = uint32_t(uint64_t(rows) * t / threads);
            uint32_t y_end = uint32_t(uint64_t(rows) * (t + 1) / threads);
            pool.emplace_back(run_rows, y_begin, y_end);
        }
        for (auto& worker : pool)
            worker.join();
    }
    return image;
}

ImageBuffer reference_image(const TestIntegrand& integrand, ImageDims dims) {
    if (integrand.reference) {
        ImageBuffer image(dims.width, dims.height, 1);
        for (uint32_t y = 0; y < dims.height; ++y)
            for (uint32_t x = 0; x < dims.width; ++x)
                image.at(x, y) = integrand.reference({x, y}, dims);
        return image;
    }
    HaltonSpec halton;
    halton.dimensions = std::max(2u, integrand.total_dims());
    StrategySpec oversample =
        make_hilbert_blocks(CurveKind::Hilbert, dims, 1u << 14, halton);
    return render(oversample, integrand, uint64_t(1) << 14,
                  std::thread::hardware_concurrency());
}

ErrorReport compare(const ImageBuffer& image, const ImageBuffer& reference) {
    if (image.width != reference.width || image.height != reference.height ||
        image.channels != reference.channels)
        throw std::invalid_argument("image sizes do not match");

    ErrorReport report;
    double sum_sq = 0;
    for (size_t k = 0; k < image.data.size(); ++k) {
        double e = image.data[k] - reference.data[k];
        sum_sq += e * e;
        report.max_abs_error = std::max(report.max_abs_error, std::abs(e));
    }
    report.rmse = std::sqrt(sum_sq / double(image.data.size()));

    // variance over tiles of the tile-mean signed error
    uint32_t ts = kSplotchinessTileSize;
    std::vector<double> tile_means;
    for (uint32_t ty = 0; ty < image.height; ty += ts) {
        for (uint32_t tx = 0; tx < image.width; tx += ts) {
            double sum = 0;
            uint64_t count = 0;
            for (uint32_t y = ty; y < std::min(ty + ts, image.height); ++y)
                for (uint32_t x = tx; x < std::min(tx + ts, image.width); ++x)
                    for (uint32_t c = 0; c < image.channels; ++c) {
                        sum += image.at(x, y, c) - reference.at(x, y, c);
                        ++count;
                    }
            tile_means.push_back(sum / double(count));
        }
    }
    double mean = 0;
    for (double m : tile_means)
        mean += m;
    mean /= double(tile_means.size());
    double var = 0;
    for (double m : tile_means)
        var += (m - mean) * (m - mean);
    report.tile_splotchiness = var / double(tile_means.size());
    return report;
}

void write_error_csv(const std::string& path, std::span<const ErrorCsvRow> rows) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << "strategy,integrand,spp,rmse,splotchiness,max_abs\n";
    char buffer[160];
    for (const auto& row : rows) {
        std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g", row.report.rmse,
                      row.report.tile_splotchiness, row.report.max_abs_error);
        out << row.strategy << "," << row.integrand << "," << row.spp << ","
            << buffer << "\n";
    }
    if (!out)
        throw std::runtime_error("failed writing CSV: " + path);
}

}  // namespace sfcqmc
