#pragma once

#include <array>
#include <cstdint>

namespace vbpbb {

// xoshiro256** seeded through SplitMix64. Hand-rolled so resample plans and
// synthetic noise are bit-reproducible across platforms and standard-library
// versions (std:: distributions are implementation-defined).
class RngStream {
public:
    static RngStream from_seed(std::uint64_t seed);

    std::uint64_t next_u64();

    // Unbiased integer in [0, bound) via rejection; bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform in [0, 1) with 53 random bits.
    double uniform01();

    // Standard normal (Box-Muller, cached spare).
    double normal();

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Independent stream for bootstrap replicate i under a master seed.
RngStream replicate_stream(std::uint64_t seed, std::uint64_t replicate_index);

// Per-component master seed for summed bands; component 0 maps to `seed`
// itself so a single-component sum reproduces the plain bootstrap exactly.
std::uint64_t component_seed(std::uint64_t seed, std::uint64_t component_index);

}  // namespace vbpbb
