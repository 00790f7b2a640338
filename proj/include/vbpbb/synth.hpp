#pragma once

#include <cstdint>
#include <json.hpp>
#include <vector>

#include "vbpbb/series.hpp"

namespace vbpbb {

struct SineComponent {
    double amplitude = 0.0;
    double frequency = 0.0;  // cycles per step, 0 < v <= 0.5
    double phase = 0.0;      // radians
};

struct SyntheticSpec {
    std::int64_t n = 0;
    std::vector<SineComponent> components;
    double noise_sd = 0.0;
    double trend_slope = 0.0;
    std::uint64_t seed = 0;
    Date start{2001, 1, 1};

    void validate() const;  // throws std::invalid_argument
};

struct SynthResult {
    RegularSeries series;
    std::vector<RegularSeries> components;  // ground truth, same order as spec
};

// x(t) = sum_j A_j cos(2 pi v_j t + phi_j) + slope*t + sd*N(0,1), t = 1..n.
// Noise is drawn only when sd > 0; same seed gives identical bits.
SynthResult generate(const SyntheticSpec& spec);

SyntheticSpec synth_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json synth_spec_to_json(const SyntheticSpec& spec);

}  // namespace vbpbb
