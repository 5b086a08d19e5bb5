// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/analysis.hpp>
#include <sfcqmc/harness.hpp>
#include <sfcqmc/image.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace sfcqmc;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

CurveKind parse_curve(const std::string& name) {
    if (name == "morton")
        return CurveKind::Morton;
    if (name == "hilbert")
        return CurveKind::Hilbert;
    if (name == "moore")
        return CurveKind::Moore;
    if (name == "peano")
        return CurveKind::Peano;
    throw CLI::ValidationError("--curve", "unknown curve: " + name);
}

ScrambleSpec parse_scramble(const std::string& text) {
    if (text == "none")
        return ScrambleSpec::identity();
    if (text == "zaremba")
        return ScrambleSpec::zaremba();
    if (text == "faure")
        return ScrambleSpec::faure();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string kind = text.substr(0, colon);
        uint64_t seed = 0;
        try {
            seed = std::stoull(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--scramble", "invalid seed in: " + text);
        }
        if (kind == "digit")
            return ScrambleSpec::random_digit(seed);
        if (kind == "owen")
            return ScrambleSpec::owen(seed);
    }
    throw CLI::ValidationError("--scramble", "unknown scramble: " + text);
}

uint32_t thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    if (const char* env = std::getenv("SFCQMC_THREADS")) {
        char* end = nullptr;
        unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap >= 1)
            hw = std::min<unsigned long>(hw, cap);
    }
    return uint32_t(hw);
}

std::string swap_extension(const std::string& path, const std::string& ext) {
    auto slash = path.find_last_of("/\\");
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

ImageBuffer index_map_image(const GridSpec& grid) {
    uint32_t side = grid.side();
    ImageBuffer image(side, side, 1);
    double scale = grid.length() > 1 ? 1.0 / double(grid.length() - 1) : 0.0;
    for (uint32_t y = 0; y < side; ++y)
        for (uint32_t x = 0; x < side; ++x)
            image.at(x, y) = double(curve_index(grid, {x, y})) * scale;
    return image;
}

struct RenderConfig {
    std::string strategy = "hilbert-blocks";
    std::string integrand = "constant";
    uint32_t width = 64;
    uint32_t height = 64;
    uint32_t spp = 1;
    uint64_t seed = 0;
    uint32_t passes = 4;
    std::string curve = "hilbert";
    std::string scramble = "faure";
    std::string lattice_file;
};

StrategySpec build_strategy(const RenderConfig& config, const TestIntegrand& g) {
    ImageDims dims{config.width, config.height};
    CurveKind curve = parse_curve(config.curve);
    ScrambleSpec scramble = parse_scramble(config.scramble);

    std::string name = config.strategy;
    bool randomized = false;
    if (name.starts_with("randomized:")) {
        randomized = true;
        name = name.substr(std::string("randomized:").size());
    }

    uint32_t value_dims =
        g.uses_pixel_offsets ? 2 + g.value_dims : std::max(2u, g.value_dims);
    auto halton = [&](uint32_t dimensions) {
        HaltonSpec spec;
        spec.dimensions = dimensions;
        spec.scrambles = {scramble};
        return spec;
    };

    InnerStrategy inner;
    if (name == "baseline-crt") {
        uint32_t dims_needed = g.uses_pixel_offsets ? 2 + g.value_dims : 2 + value_dims;
        inner = make_image_plane_crt(dims, halton(dims_needed));
    } else if (name == "hilbert-blocks") {
        inner = make_hilbert_blocks(curve, dims, config.spp, halton(value_dims));
    } else if (name == "shifted-lattice") {
        LatticeSpec lattice = config.lattice_file.empty()
                                  ? default_lattice(value_dims)
                                  : load_lattice(config.lattice_file);
        if (lattice.dimensions() < value_dims)
            throw std::runtime_error("generating vector has too few dimensions");
        inner = make_shifted_lattice(curve, dims, lattice, halton(lattice.dimensions()));
    } else if (name == "partitioned") {
        inner = make_partitioned(curve, dims, halton(value_dims), false);
    } else if (name == "partitioned-inverse") {
        inner = make_partitioned(curve, dims, halton(value_dims), true);
    } else if (name == "doubling") {
        inner = make_doubling(curve, dims, halton(value_dims));
    } else {
        throw CLI::ValidationError("--strategy", "unknown strategy: " + config.strategy);
    }

    if (randomized)
        return RandomizedSpec{std::move(inner), config.seed, config.spp};
    return std::visit([](auto&& spec) { return StrategySpec(std::move(spec)); },
                      std::move(inner));
}

const std::vector<std::string> kCurveNames = {"morton", "hilbert", "moore", "peano"};

std::string validate_scramble(const std::string& text) {
    try {
        parse_scramble(text);
    } catch (const CLI::Error&) {
        return "unknown scramble: " + text;
    }
    return {};
}

std::string validate_strategy(const std::string& text) {
    static const std::vector<std::string> names = {
        "baseline-crt", "hilbert-blocks", "shifted-lattice",
        "partitioned",  "partitioned-inverse", "doubling"};
    std::string name = text;
    if (name.starts_with("randomized:"))
        name = name.substr(std::string("randomized:").size());
    for (const auto& known : names)
        if (name == known)
            return {};
    return "unknown strategy: " + text;
}

int run(int argc, char** argv) {
    CLI::App app{"deterministic quasi-Monte Carlo sampling along space-filling curves"};
    app.require_subcommand(1);

    std::string curve = "hilbert";
    uint32_t level = 3;

    auto add_grid_options = [&](CLI::App* cmd) {
        cmd->add_option("--curve", curve, "morton|hilbert|moore|peano")
            ->default_val("hilbert")
            ->check(CLI::IsMember(kCurveNames));
        cmd->add_option("--level", level, "curve subdivision level")->default_val(3);
    };

    // curve-map
    auto* curve_map = app.add_subcommand("curve-map", "write the index map as PGM");
    std::string curve_map_out = "curve-map.pgm";
    add_grid_options(curve_map);
    curve_map->add_option("--out", curve_map_out, "output image path");

    // segments
    auto* segments = app.add_subcommand(
        "segments", "3x3 neighborhood segment counts (CSV and annotated map)");
    std::string segments_out = "segments.csv";
    add_grid_options(segments);
    segments->add_option("--out", segments_out, "output CSV path");

    // diff-map
    auto* diffmap = app.add_subcommand(
        "diff-map", "curve index differences across pixel edges (CSV)");
    std::string diffmap_out = "diff-map.csv";
    add_grid_options(diffmap);
    diffmap->add_option("--out", diffmap_out, "output CSV path");

    // dither
    auto* dither = app.add_subcommand(
        "dither", "radical inverse dither maps along the curve");
    std::string dither_out = "dither.pgm";
    std::vector<uint32_t> dither_bases = {2};
    std::string dither_scramble = "none";
    uint64_t dither_spp = 1;
    uint32_t dither_width = 0, dither_height = 0;
    add_grid_options(dither);
    dither->add_option("--bases", dither_bases,
                       "1 (gray) or 3 (RGB) radical inverse bases")
        ->delimiter(',');
    dither->add_option("--scramble", dither_scramble,
                       "none|zaremba|faure|digit:SEED|owen:SEED")
        ->check(validate_scramble);
    dither->add_option("--spp", dither_spp, "samples per pixel block size")
        ->check(CLI::PositiveNumber);
    dither->add_option("--width", dither_width, "image width (default: grid side)");
    dither->add_option("--height", dither_height, "image height (default: grid side)");
    dither->add_option("--out", dither_out, "output image path");

    // render
    auto* render_cmd = app.add_subcommand(
        "render", "render a test integrand and report error metrics");
    RenderConfig config;
    std::string render_out = "render.pgm";
    render_cmd->add_option("--strategy", config.strategy,
                           "baseline-crt|hilbert-blocks|shifted-lattice|partitioned|"
                           "partitioned-inverse|doubling|randomized:<inner>")
        ->check(validate_strategy);
    render_cmd->add_option("--integrand", config.integrand,
                           "constant|gradient|disk|softshadow")
        ->check(CLI::IsMember(integrand_names()));
    render_cmd->add_option("--width", config.width)->check(CLI::PositiveNumber);
    render_cmd->add_option("--height", config.height)->check(CLI::PositiveNumber);
    render_cmd->add_option("--spp", config.spp, "samples per pixel (per pass)")
        ->check(CLI::PositiveNumber);
    render_cmd->add_option("--seed", config.seed, "seed for randomized passes");
    render_cmd->add_option("--passes", config.passes,
                           "accumulation passes for randomized strategies");
    render_cmd->add_option("--lattice-file", config.lattice_file,
                           "generating vector file for shifted-lattice");
    render_cmd->add_option("--out", render_out, "output image path");

    // discrepancy
    auto* discrepancy = app.add_subcommand(
        "discrepancy", "exact 2D star discrepancy of a point set");
    std::string points_file;
    std::string halton_arg;
    std::string discrepancy_out;
    discrepancy->add_option("--points", points_file,
                            "text file with one `x y` pair per line");
    discrepancy->add_option("--halton", halton_arg,
                            "d:n = first n points of the d-dimensional Halton "
                            "sequence, projected to dimensions 0,1");
    discrepancy->add_option("--out", discrepancy_out, "optional CSV output");

    render_cmd->add_option("--curve", config.curve, "curve for block strategies")
        ->check(CLI::IsMember(kCurveNames));
    render_cmd->add_option("--scramble", config.scramble,
                           "sequence scramble (default faure)")
        ->check(validate_scramble);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (curve_map->parsed()) {
        GridSpec grid{parse_curve(curve), level};
        write_pgm(index_map_image(grid), curve_map_out);
        std::cout << "wrote " << curve_map_out << "\n";
        return kExitOk;
    }

    if (segments->parsed()) {
        GridSpec grid{parse_curve(curve), level};
        SegmentStats stats = segment_stats(grid);
        std::vector<double> values(stats.per_pixel.begin(), stats.per_pixel.end());
        write_metric_csv(segments_out, {grid.side(), grid.side()}, values, "segments");

        ImageBuffer map(grid.side(), grid.side(), 1);
        for (uint32_t y = 0; y < grid.side(); ++y)
            for (uint32_t x = 0; x < grid.side(); ++x)
                map.at(x, y) =
                    double(stats.per_pixel[uint64_t(y) * grid.side() + x]) / stats.max;
        std::string map_out = swap_extension(segments_out, ".pgm");
        write_pgm(map, map_out);

        std::cout << "max segments: " << stats.max << "\n";
        for (size_t s = 1; s < stats.histogram.size(); ++s)
            if (stats.histogram[s])
                std::cout << "segments " << s << ": " << stats.histogram[s]
                          << " pixels\n";
        std::cout << "wrote " << segments_out << " and " << map_out << "\n";
        return kExitOk;
    }

    if (diffmap->parsed()) {
        GridSpec grid{parse_curve(curve), level};
        EdgeDiffMap map = diff_map(grid);
        std::ofstream out(diffmap_out);
        if (!out)
            throw std::runtime_error("cannot open output file: " + diffmap_out);
        out << "x0,y0,x1,y1,diff\n";
        for (uint32_t y = 0; y < map.side; ++y)
            for (uint32_t x = 0; x + 1 < map.side; ++x)
                out << x << "," << y << "," << x + 1 << "," << y << ","
                    << map.horizontal_diff(x, y) << "\n";
        for (uint32_t y = 0; y + 1 < map.side; ++y)
            for (uint32_t x = 0; x < map.side; ++x)
                out << x << "," << y << "," << x << "," << y + 1 << ","
                    << map.vertical_diff(x, y) << "\n";
        std::cout << "wrote " << diffmap_out << "\n";
        return kExitOk;
    }

    if (dither->parsed()) {
        GridSpec grid{parse_curve(curve), level};
        if (dither_bases.size() != 1 && dither_bases.size() != 3)
            throw CLI::ValidationError("--bases", "expected 1 or 3 bases");
        ScrambleSpec scramble = parse_scramble(dither_scramble);
        std::vector<RadicalInverseSpec> specs;
        for (uint32_t b : dither_bases)
            specs.push_back({b, scramble});
        ImageDims dims{dither_width ? dither_width : grid.side(),
                       dither_height ? dither_height : grid.side()};
        ImageBuffer map = dither_map(grid, dims, specs, dither_spp);
        write_image(map, dither_out);
        std::cout << "wrote " << dither_out << "\n";
        return kExitOk;
    }

    if (render_cmd->parsed()) {
        const TestIntegrand& integrand = find_integrand(config.integrand);
        StrategySpec strategy = build_strategy(config, integrand);
        uint64_t total_spp = config.spp;
        if (std::holds_alternative<RandomizedSpec>(strategy))
            total_spp = uint64_t(config.spp) * config.passes;
        ImageBuffer image = render(strategy, integrand, total_spp, thread_budget());
        write_pgm(image, render_out);

        ImageBuffer ref = reference_image(integrand, image.dims());
        ErrorReport report = compare(image, ref);
        std::string csv_out = swap_extension(render_out, ".csv");
        std::vector<ErrorCsvRow> rows = {
            {config.strategy, config.integrand, total_spp, report}};
        write_error_csv(csv_out, rows);

        char line[160];
        std::snprintf(line, sizeof(line), "rmse %.6g splotchiness %.6g max %.6g",
                      report.rmse, report.tile_splotchiness, report.max_abs_error);
        std::cout << line << "\n"
                  << "wrote " << render_out << " and " << csv_out << "\n";
        return kExitOk;
    }

    if (discrepancy->parsed()) {
        std::vector<std::array<double, 2>> points;
        if (!points_file.empty()) {
            std::ifstream in(points_file);
            if (!in)
                throw std::runtime_error("cannot open points file: " + points_file);
            double x, y;
            while (in >> x >> y)
                points.push_back({x, y});
            if (!in.eof())
                throw std::runtime_error("invalid points file: " + points_file);
        } else if (!halton_arg.empty()) {
            auto colon = halton_arg.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--halton", "expected d:n");
            uint32_t d = uint32_t(std::stoul(halton_arg.substr(0, colon)));
            uint64_t n = std::stoull(halton_arg.substr(colon + 1));
            if (d < 2)
                throw CLI::ValidationError("--halton", "need at least 2 dimensions");
            HaltonSpec spec;
            spec.dimensions = d;
            for (uint64_t i = 0; i < n; ++i) {
                SamplePoint p = halton_point(spec, i);
                points.push_back({p[0], p[1]});
            }
        } else {
            throw CLI::ValidationError("discrepancy",
                                       "one of --points or --halton is required");
        }
        double value = star_discrepancy_2d(points);
        char line[64];
        std::snprintf(line, sizeof(line), "%.17g", value);
        std::cout << "points " << points.size() << " star-discrepancy " << line
                  << "\n";
        if (!discrepancy_out.empty()) {
            std::ofstream out(discrepancy_out);
            if (!out)
                throw std::runtime_error("cannot open output file: " +
                                         discrepancy_out);
            out << "points,discrepancy\n" << points.size() << "," << line << "\n";
        }
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
