#include "vbpbb/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace vbpbb {

namespace {

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// largest {1,2,5}*10^k step giving 4..9 intervals over `range`
double nice_step(double range) {
    if (!(range > 0.0)) return 1.0;
    double raw = range / 6.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= mult * mag) return mult * mag;
    }
    return 10.0 * mag;
}

const char* kRed = "#d62728";
const char* kPalette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string render_band_svg(std::span<const ConfidenceBand> bands,
                            const PlotOptions& options) {
    if (bands.empty()) throw Error("nothing to plot");
    for (const auto& b : bands)
        if (b.point.empty() || b.upper.size() != b.point.size() ||
            b.lower.size() != b.point.size())
            throw Error("band has inconsistent curve lengths");

    const double width = options.width > 0 ? options.width : 860;
    const double height = options.height > 0 ? options.height : 420;
    const double left = 64, right = 16, top = 30, bottom = 44;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    // x extent: phases 0..p-1, or time 1..span
    std::int64_t span = options.span;
    std::int64_t max_period = 0;
    for (const auto& b : bands) max_period = std::max<std::int64_t>(max_period, b.period);
    if (options.domain == PlotDomain::Time && span <= 0) span = max_period;
    const double x_min = options.domain == PlotDomain::Phase ? 0.0 : 1.0;
    const double x_max = options.domain == PlotDomain::Phase
                             ? static_cast<double>(max_period - 1)
                             : static_cast<double>(span);

    double y_min = bands[0].lower[0], y_max = bands[0].upper[0];
    for (const auto& b : bands) {
        for (double v : b.lower) y_min = std::min(y_min, v);
        for (double v : b.upper) y_max = std::max(y_max, v);
        for (double v : b.point) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
    }
    y_min = std::min(y_min, 0.0);
    y_max = std::max(y_max, 0.0);
    double pad = (y_max - y_min) * 0.05;
    if (pad == 0.0) pad = 1.0;
    y_min -= pad;
    y_max += pad;

    auto x_px = [&](double x) {
        if (x_max == x_min) return left + pw / 2.0;
        return left + (x - x_min) / (x_max - x_min) * pw;
    };
    auto y_px = [&](double y) { return top + (y_max - y) / (y_max - y_min) * ph; };

    // sample positions along x for one band
    auto band_xy = [&](const ConfidenceBand& b, const std::vector<double>& curve) {
        std::string pts;
        if (options.domain == PlotDomain::Phase) {
            int p = b.period;
            for (int i = 0; i < p; ++i) {
                double x = p > 1 ? static_cast<double>(i) : x_max;
                if (p == 1 && i == 0) {
                    pts += fmt2(x_px(x_min)) + "," + fmt2(y_px(curve[0])) + " ";
                    pts += fmt2(x_px(x_max)) + "," + fmt2(y_px(curve[0]));
                    break;
                }
                pts += fmt2(x_px(x)) + "," + fmt2(y_px(curve[static_cast<std::size_t>(i)]));
                if (i + 1 < p) pts += " ";
            }
        } else {
            for (std::int64_t t = 1; t <= span; ++t) {
                auto phv = static_cast<std::size_t>(phase_of(t, b.period));
                pts += fmt2(x_px(static_cast<double>(t))) + "," + fmt2(y_px(curve[phv]));
                if (t < span) pts += " ";
            }
        }
        return pts;
    };
    auto band_polygon = [&](const ConfidenceBand& b) {
        std::string pts = band_xy(b, b.upper);
        // lower edge reversed closes the envelope
        std::string rev;
        if (options.domain == PlotDomain::Phase && b.period > 1) {
            for (int i = b.period - 1; i >= 0; --i) {
                rev += " " + fmt2(x_px(static_cast<double>(i))) + "," +
                       fmt2(y_px(b.lower[static_cast<std::size_t>(i)]));
            }
        } else if (options.domain == PlotDomain::Phase) {
            rev = " " + fmt2(x_px(x_max)) + "," + fmt2(y_px(b.lower[0])) + " " +
                  fmt2(x_px(x_min)) + "," + fmt2(y_px(b.lower[0]));
        } else {
            for (std::int64_t t = span; t >= 1; --t) {
                auto phv = static_cast<std::size_t>(phase_of(t, b.period));
                rev += " " + fmt2(x_px(static_cast<double>(t))) + "," + fmt2(y_px(b.lower[phv]));
            }
        }
        return pts + rev;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmtg(width) +
           "\" height=\"" + fmtg(height) + "\" viewBox=\"0 0 " + fmtg(width) + " " +
           fmtg(height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fmtg(width) + "\" height=\"" + fmtg(height) +
           "\" fill=\"#ffffff\"/>\n";

    // axes frame
    svg += "<rect x=\"" + fmt2(left) + "\" y=\"" + fmt2(top) + "\" width=\"" + fmt2(pw) +
           "\" height=\"" + fmt2(ph) + "\" fill=\"none\" stroke=\"#222222\"/>\n";

    // y ticks
    double ystep = nice_step(y_max - y_min);
    for (double yt = std::ceil(y_min / ystep) * ystep; yt <= y_max + 1e-12 * ystep;
         yt += ystep) {
        double py = y_px(yt);
        svg += "<line x1=\"" + fmt2(left - 4) + "\" y1=\"" + fmt2(py) + "\" x2=\"" +
               fmt2(left) + "\" y2=\"" + fmt2(py) + "\" stroke=\"#222222\"/>\n";
        svg += "<text x=\"" + fmt2(left - 8) + "\" y=\"" + fmt2(py + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               fmtg(std::fabs(yt) < 1e-12 * ystep ? 0.0 : yt) + "</text>\n";
    }
    // x ticks
    double xstep = std::max(1.0, std::round(nice_step(x_max - x_min)));
    for (double xt = std::ceil(x_min / xstep) * xstep; xt <= x_max + 1e-9; xt += xstep) {
        double px = x_px(xt);
        svg += "<line x1=\"" + fmt2(px) + "\" y1=\"" + fmt2(top + ph) + "\" x2=\"" +
               fmt2(px) + "\" y2=\"" + fmt2(top + ph + 4) + "\" stroke=\"#222222\"/>\n";
        svg += "<text x=\"" + fmt2(px) + "\" y=\"" + fmt2(top + ph + 16) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               fmtg(xt) + "</text>\n";
    }
    svg += "<text x=\"" + fmt2(left + pw / 2) + "\" y=\"" + fmt2(height - 10) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
           (options.domain == PlotDomain::Phase ? "phase" : "t") + "</text>\n";

    // zero reference
    if (y_min < 0.0 && 0.0 < y_max) {
        svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(y_px(0.0)) + "\" x2=\"" +
               fmt2(left + pw) + "\" y2=\"" + fmt2(y_px(0.0)) +
               "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
    }

    // bands: fill, bound polylines, then point estimate on top
    bool red_used = false;
    std::size_t palette_next = 0;
    std::vector<std::string> colors;
    for (const auto& b : bands) {
        if (b.method == "GSBB" && !red_used) {
            colors.push_back(kRed);
            red_used = true;
        } else {
            colors.push_back(kPalette[palette_next % (sizeof kPalette / sizeof *kPalette)]);
            ++palette_next;
        }
    }
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
        const auto& b = bands[bi];
        const std::string& color = colors[bi];
        svg += "<polygon points=\"" + band_polygon(b) + "\" fill=\"" + color +
               "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
        svg += "<polyline points=\"" + band_xy(b, b.upper) + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"1\"/>\n";
        svg += "<polyline points=\"" + band_xy(b, b.lower) + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"1\"/>\n";
        svg += "<polyline points=\"" + band_xy(b, b.point) + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"1.8\"/>\n";
    }

    // legend, top-right, one row per band
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
        double ly = top + 14 + 16 * static_cast<double>(bi);
        svg += "<rect x=\"" + fmt2(left + pw - 120) + "\" y=\"" + fmt2(ly - 9) +
               "\" width=\"12\" height=\"12\" fill=\"" + colors[bi] +
               "\" fill-opacity=\"0.6\"/>\n";
        svg += "<text x=\"" + fmt2(left + pw - 104) + "\" y=\"" + fmt2(ly + 1) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" +
               escape_text(bands[bi].method) + " p=" + std::to_string(bands[bi].period) +
               "</text>\n";
    }

    if (!options.title.empty()) {
        svg += "<text x=\"" + fmt2(width / 2) + "\" y=\"18\" font-family=\"sans-serif\" "
               "font-size=\"14\" text-anchor=\"middle\">" +
               escape_text(options.title) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace vbpbb
