#pragma once

#include <span>
#include <string>

#include "vbpbb/band.hpp"

namespace vbpbb {

enum class PlotDomain { Phase, Time };

struct PlotOptions {
    int width = 860;
    int height = 420;
    std::string title;
    PlotDomain domain = PlotDomain::Phase;
    std::int64_t span = 0;  // time-domain length; 0 = one full cycle of the widest band
};

// Deterministic SVG: per band a filled envelope polygon, explicit upper and
// lower bound polylines, and a point-estimate line. Same inputs, same bytes.
std::string render_band_svg(std::span<const ConfidenceBand> bands,
                            const PlotOptions& options);

}  // namespace vbpbb
