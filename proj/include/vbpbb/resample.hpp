#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vbpbb/rng.hpp"
#include "vbpbb/series.hpp"

namespace vbpbb {

enum class BootstrapMethod { PBB, GSBB };

struct BootstrapSpec {
    BootstrapMethod method = BootstrapMethod::PBB;
    int block_length = 1;    // b
    int period = 1;          // d
    int replicates = 1000;   // B
    std::uint64_t seed = 0;

    void validate(std::int64_t n) const;  // throws on inconsistent settings
};

// One resample, described by the 1-based source start of each target block.
// Target blocks sit at 1, 1+b, 1+2b, ...; the final block truncates to n.
struct ResamplePlan {
    std::vector<std::int64_t> block_starts;
    std::int64_t n = 0;
    int block_length = 1;
    int period = 1;
};

// Period-aligned blocks, b = d: each target start t draws its source
// uniformly from {s : 1 <= s <= n-b+1, s ≡ t (mod d)}.
ResamplePlan plan_pbb(std::int64_t n, int d, RngStream& rng);

// Generalized variant with block length b a multiple of the period d.
ResamplePlan plan_gsbb(std::int64_t n, int b, int d, RngStream& rng);

std::vector<double> apply_plan(std::span<const double> source, const ResamplePlan& plan);
void apply_plan(std::span<const double> source, const ResamplePlan& plan,
                std::span<double> out);

// 1-based source index feeding each output position.
std::vector<std::int64_t> plan_provenance(const ResamplePlan& plan);

RegularSeries pbb_resample(const RegularSeries& s, int d, RngStream& rng);
RegularSeries gsbb_resample(const RegularSeries& s, int b, int d, RngStream& rng);

}  // namespace vbpbb
