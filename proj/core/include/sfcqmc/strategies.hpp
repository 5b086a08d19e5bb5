// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sfcqmc/curves.hpp>
#include <sfcqmc/sequences.hpp>

#include <memory>
#include <string>
#include <variant>

namespace sfcqmc {

struct SampleRequest {
    PixelCoord pixel;     // image coordinates
    uint64_t sample = 0;  // per-pixel sample counter
};

struct Assignment {
    uint64_t index = 0;  // global sequence index (per-pixel counter for lattices)
    SamplePoint point;
};

// Fixed-budget enumeration along a space-filling curve: pixel of in-image
// rank j draws its samples from the contiguous block [j*spp, (j+1)*spp).
// Pixels of the grid outside the image are skipped and consume no samples.
struct HilbertBlocksSpec {
    GridSpec grid;
    ImageDims dims;
    HaltonSpec halton;
    uint32_t spp = 1;
    std::shared_ptr<const RankMap> ranks;  // built by make_hilbert_blocks
};

// Progressive partitioning of one sequence into N = b^(2n) subsequences,
// one per grid cell. The pixel's raw curve index j (not the compact rank)
// selects the partition so the stride-N window structure holds exactly;
// partitions of out-of-image cells are simply never evaluated. The returned
// point excludes the partitioning dimension: component k uses the (k+1)-th
// prime for base-2 curves, and the primes with 3 removed for Peano grids.
struct PartitionedSpec {
    GridSpec grid;
    ImageDims dims;
    HaltonSpec halton;  // scrambles for the returned (partition-free) dims
    bool use_inverse_offset = false;
};

// Extensible rank-1 lattice sequence per pixel, Cranley-Patterson rotated
// by the Halton point enumerated along the curve at one sample per pixel.
struct ShiftedLatticeSpec {
    GridSpec grid;
    ImageDims dims;
    HaltonSpec shift;
    LatticeSpec lattice;
    std::shared_ptr<const RankMap> ranks;
};

// Baseline: the first two Halton dimensions address the pixel raster
// through a 2^exp2 x 3^exp3 grid of elementary intervals; the per-pixel
// sequence index is recovered with the Chinese remainder theorem. Returned
// dimensions 0 and 1 carry the offset within the pixel.
struct ImagePlaneCrtSpec {
    uint32_t exp2 = 0;
    uint32_t exp3 = 0;
    ImageDims dims;
    HaltonSpec halton;
};

// Progressive variant that doubles the per-pixel sampling rate with each
// iteration, consuming the sequence in contiguous per-pixel blocks inside
// each iteration segment. Kept to demonstrate its correlation defect; not a
// recommended preset.
struct DoublingSpec {
    GridSpec grid;
    ImageDims dims;
    HaltonSpec halton;
    std::shared_ptr<const RankMap> ranks;
};

using InnerStrategy = std::variant<ImagePlaneCrtSpec, HilbertBlocksSpec,
                                   ShiftedLatticeSpec, PartitionedSpec, DoublingSpec>;

// Re-randomizes the inner strategy's scrambles for each accumulation pass.
// Sample s belongs to pass s / pass_samples and is sample s % pass_samples
// of that pass. Pass 0 with seed 0 is the unrandomized inner strategy.
struct RandomizedSpec {
    InnerStrategy inner;
    uint64_t seed = 0;
    uint32_t pass_samples = 1;
};

using StrategySpec = std::variant<ImagePlaneCrtSpec, HilbertBlocksSpec,
                                  ShiftedLatticeSpec, PartitionedSpec,
                                  DoublingSpec, RandomizedSpec>;

HilbertBlocksSpec make_hilbert_blocks(CurveKind kind, ImageDims dims, uint32_t spp,
                                      HaltonSpec halton);
PartitionedSpec make_partitioned(CurveKind kind, ImageDims dims, HaltonSpec halton,
                                 bool use_inverse_offset);
ShiftedLatticeSpec make_shifted_lattice(CurveKind kind, ImageDims dims,
                                        LatticeSpec lattice, HaltonSpec shift);
ImagePlaneCrtSpec make_image_plane_crt(ImageDims dims, HaltonSpec halton);
DoublingSpec make_doubling(CurveKind kind, ImageDims dims, HaltonSpec halton);

/// Base of the k-th returned dimension of a Partitioned strategy (the primes
/// with the curve base removed).
uint32_t partitioned_base(uint32_t curve_base, uint32_t dim);

Assignment assign_hilbert_blocks(const HilbertBlocksSpec& spec, SampleRequest req);
Assignment assign_partitioned(const PartitionedSpec& spec, SampleRequest req);
SamplePoint assign_shifted_lattice(const ShiftedLatticeSpec& spec, SampleRequest req);
Assignment assign_image_plane_crt(const ImagePlaneCrtSpec& spec, SampleRequest req);
Assignment assign_doubling(const DoublingSpec& spec, SampleRequest req);

/// The inner strategy with every scramble re-seeded from hash(seed, pass).
/// Pass 0 with seed 0 returns the strategy unchanged. The two dimensions an
/// ImagePlaneCRT strategy uses for pixel addressing keep their scrambles.
InnerStrategy randomize_pass(const InnerStrategy& inner, uint32_t pass, uint64_t seed);

Assignment assign(const StrategySpec& strategy, SampleRequest req);
uint32_t sample_dimensions(const StrategySpec& strategy);

/// Index of the first returned dimension meant for the integrand: 2 for
/// ImagePlaneCRT (dimensions 0 and 1 are spent on pixel addressing), 0 for
/// every other strategy.
uint32_t integrand_dim_offset(const StrategySpec& strategy);

ImageDims strategy_dims(const StrategySpec& strategy);

}  // namespace sfcqmc
