// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sfcqmc {

ImageBuffer dither_map(const GridSpec& grid, ImageDims dims,
                       const std::vector<RadicalInverseSpec>& bases, uint64_t spp) {
    if (bases.size() != 1 && bases.size() != 3)
        throw std::invalid_argument("dither maps support 1 (gray) or 3 (RGB) bases");
    if (spp < 1)
        throw std::invalid_argument("samples per pixel must be at least 1");
    RankMap ranks(grid, dims);
    ImageBuffer image(dims.width, dims.height, uint32_t(bases.size()));
    for (uint32_t y = 0; y < dims.height; ++y) {
        for (uint32_t x = 0; x < dims.width; ++x) {
            uint64_t first_sample = ranks.rank({x, y}) * spp;
            for (uint32_t c = 0; c < image.channels; ++c)
                image.at(x, y, c) = radical_inverse(bases[c], first_sample);
        }
    }
    return image;
}

uint64_t EdgeDiffMap::horizontal_diff(uint32_t x, uint32_t y) const {
    return horizontal[uint64_t(y) * (side - 1) + x];
}

uint64_t EdgeDiffMap::vertical_diff(uint32_t x, uint32_t y) const {
    return vertical[uint64_t(y) * side + x];
}

EdgeDiffMap diff_map(const GridSpec& grid) {
    uint32_t side = grid.side();
    std::vector<uint64_t> index(grid.length());
    for (uint32_t y = 0; y < side; ++y)
        for (uint32_t x = 0; x < side; ++x)
            index[uint64_t(y) * side + x] = curve_index(grid, {x, y});

    EdgeDiffMap map;
    map.side = side;
    map.horizontal.resize(uint64_t(side) * (side - 1));
    map.vertical.resize(uint64_t(side) * (side - 1));
    auto record = [&](uint64_t a, uint64_t b) {
        uint64_t diff = a > b ? a - b : b - a;
        if (diff > 1)
            ++map.large_diff_histogram[diff];
        return diff;
    };
    for (uint32_t y = 0; y < side; ++y)
        for (uint32_t x = 0; x + 1 < side; ++x)
            map.horizontal[uint64_t(y) * (side - 1) + x] =
                record(index[uint64_t(y) * side + x], index[uint64_t(y) * side + x + 1]);
    for (uint32_t y = 0; y + 1 < side; ++y)
        for (uint32_t x = 0; x < side; ++x)
            map.vertical[uint64_t(y) * side + x] =
                record(index[uint64_t(y) * side + x], index[uint64_t(y + 1) * side + x]);
    return map;
}

SegmentStats segment_stats(const GridSpec& grid) {
    uint32_t side = grid.side();
    SegmentStats stats;
    stats.per_pixel.resize(grid.length());
    for (uint32_t y = 0; y < side; ++y) {
        for (uint32_t x = 0; x < side; ++x) {
            int s = neighborhood_segments(grid, {x, y});
            stats.per_pixel[uint64_t(y) * side + x] = uint8_t(s);
            if (size_t(s) >= stats.histogram.size())
                stats.histogram.resize(s + 1, 0);
            ++stats.histogram[s];
            stats.max = std::max(stats.max, s);
        }
    }
    return stats;
}

double star_discrepancy_2d(std::span<const std::array<double, 2>> points) {
    size_t n = points.size();
    if (n == 0)
        throw std::invalid_argument("star discrepancy of an empty point set");
    if (n > 4096)
        throw std::invalid_argument("star discrepancy supports up to 4096 points");

    std::vector<std::array<double, 2>> by_x(points.begin(), points.end());
    std::sort(by_x.begin(), by_x.end());

    std::vector<double> critical_x;
    critical_x.reserve(n + 1);
    for (const auto& p : by_x)
        critical_x.push_back(p[0]);
    critical_x.push_back(1.0);
    critical_x.erase(std::unique(critical_x.begin(), critical_x.end()),
                     critical_x.end());

    std::vector<double> critical_y;
    critical_y.reserve(n + 1);
    for (const auto& p : by_x)
        critical_y.push_back(p[1]);
    std::sort(critical_y.begin(), critical_y.end());
    critical_y.push_back(1.0);
    critical_y.erase(std::unique(critical_y.begin(), critical_y.end()),
                     critical_y.end());

    // Sweep the critical x values upwards, maintaining the y coordinates of
    // the points strictly left of a (open) and up to a (closed).
    std::vector<double> open_ys, closed_ys;
    open_ys.reserve(n);
    closed_ys.reserve(n);
    size_t next = 0;
    double worst = 0;
    for (double a : critical_x) {
        while (next < n && by_x[next][0] <= a) {
            closed_ys.insert(std::upper_bound(closed_ys.begin(), closed_ys.end(),
                                              by_x[next][1]),
                             by_x[next][1]);
            ++next;
        }
        size_t oi = 0, ci = 0;
        for (double b : critical_y) {
            while (oi < open_ys.size() && open_ys[oi] < b)
                ++oi;
            while (ci < closed_ys.size() && closed_ys[ci] <= b)
                ++ci;
            double volume = a * b;
            worst = std::max(worst, double(ci) / n - volume);
            worst = std::max(worst, volume - double(oi) / n);
        }
        // points with x == a become "open" once a moves past them
        open_ys = closed_ys;
    }
    return worst;
}

double star_discrepancy_1d(std::span<const double> values) {
    size_t n = values.size();
    if (n == 0)
        throw std::invalid_argument("star discrepancy of an empty value set");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double worst = 0;
    for (size_t i = 0; i < n; ++i) {
        worst = std::max(worst, sorted[i] - double(i) / n);
        worst = std::max(worst, double(i + 1) / n - sorted[i]);
    }
    return worst;
}

UniformityStats neighborhood_uniformity(const StrategySpec& strategy, uint64_t spp,
                                        uint32_t dimension, uint32_t window) {
    if (window % 2 == 0 || window < 1)
        throw std::invalid_argument("window must be odd and at least 1");
    if (dimension >= sample_dimensions(strategy))
        throw std::out_of_range("sample dimension out of range");
    ImageDims dims = strategy_dims(strategy);
    int radius = int(window / 2);

    UniformityStats stats;
    stats.per_pixel.resize(dims.pixel_count());
    std::vector<double> values;
    values.reserve(uint64_t(window) * window * spp);
    double sum = 0;
    for (uint32_t y = 0; y < dims.height; ++y) {
        for (uint32_t x = 0; x < dims.width; ++x) {
            values.clear();
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    int64_t nx = int64_t(x) + dx;
                    int64_t ny = int64_t(y) + dy;
                    if (nx < 0 || ny < 0 || nx >= dims.width || ny >= dims.height)
                        continue;
                    for (uint64_t s = 0; s < spp; ++s) {
                        Assignment a =
                            assign(strategy, {{uint32_t(nx), uint32_t(ny)}, s});
                        values.push_back(a.point[dimension]);
                    }
                }
            }
            double d = star_discrepancy_1d(values);
            stats.per_pixel[uint64_t(y) * dims.width + x] = d;
            stats.max = std::max(stats.max, d);
            sum += d;
        }
    }
    stats.mean = sum / double(dims.pixel_count());
    return stats;
}

void write_metric_csv(const std::string& path, ImageDims dims,
                      std::span<const double> values, const std::string& metric) {
    if (values.size() != dims.pixel_count())
        throw std::invalid_argument("metric value count does not match the image");
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << "pixel_x,pixel_y," << metric << "\n";
    char buffer[64];
    for (uint32_t y = 0; y < dims.height; ++y) {
        for (uint32_t x = 0; x < dims.width; ++x) {
            std::snprintf(buffer, sizeof(buffer), "%.17g",
                          values[uint64_t(y) * dims.width + x]);
            out << x << "," << y << "," << buffer << "\n";
        }
    }
    if (!out)
        throw std::runtime_error("failed writing CSV: " + path);
}

}  // namespace sfcqmc
