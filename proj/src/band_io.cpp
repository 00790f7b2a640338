#include "vbpbb/band_io.hpp"

#include <fstream>
#include <limits>

namespace vbpbb {

nlohmann::ordered_json band_to_json(const ConfidenceBand& band) {
    nlohmann::ordered_json j;
    j["method"] = band.method;
    j["period"] = band.period;
    j["alpha"] = band.alpha;
    j["B"] = band.replicates;
    j["seed"] = band.seed;
    nlohmann::ordered_json phases = nlohmann::ordered_json::array();
    for (std::size_t ph = 0; ph < band.point.size(); ++ph) {
        nlohmann::ordered_json row;
        row["phase"] = ph;
        row["lower"] = band.lower[ph];
        row["point"] = band.point[ph];
        row["upper"] = band.upper[ph];
        phases.push_back(std::move(row));
    }
    j["phases"] = std::move(phases);
    j["upper_range"] = {band.upper_range.min, band.upper_range.max};
    j["lower_range"] = {band.lower_range.min, band.lower_range.max};
    j["significant"] = band.significant;
    return j;
}

ConfidenceBand band_from_json(const nlohmann::json& j) {
    ConfidenceBand band;
    band.method = j.at("method").get<std::string>();
    band.period = j.at("period").get<int>();
    band.alpha = j.at("alpha").get<double>();
    band.replicates = j.at("B").get<int>();
    band.seed = j.at("seed").get<std::uint64_t>();
    const auto& phases = j.at("phases");
    if (!phases.is_array() || static_cast<int>(phases.size()) != band.period)
        throw Error("band JSON: phases array does not match period");
    band.lower.reserve(phases.size());
    band.point.reserve(phases.size());
    band.upper.reserve(phases.size());
    for (const auto& row : phases) {
        band.lower.push_back(row.at("lower").get<double>());
        band.point.push_back(row.at("point").get<double>());
        band.upper.push_back(row.at("upper").get<double>());
    }
    band.upper_range = {j.at("upper_range").at(0).get<double>(),
                        j.at("upper_range").at(1).get<double>()};
    band.lower_range = {j.at("lower_range").at(0).get<double>(),
                        j.at("lower_range").at(1).get<double>()};
    band.significant = j.at("significant").get<bool>();
    return band;
}

nlohmann::ordered_json report_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["vbpbb"] = band_to_json(report.vbpbb);
    j["gsbb"] = band_to_json(report.gsbb);
    j["median_width_ratio"] = report.median_width_ratio;
    j["ratio_of_median_widths"] = report.ratio_of_median_widths;
    j["per_phase_ratios"] = report.per_phase_ratios;
    return j;
}

ComparisonReport report_from_json(const nlohmann::json& j) {
    // non-finite doubles serialize as null; read them back as +inf
    auto double_or_inf = [](const nlohmann::json& v) {
        return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
    };
    ComparisonReport report;
    report.vbpbb = band_from_json(j.at("vbpbb"));
    report.gsbb = band_from_json(j.at("gsbb"));
    report.median_width_ratio = double_or_inf(j.at("median_width_ratio"));
    report.ratio_of_median_widths = double_or_inf(j.at("ratio_of_median_widths"));
    for (const auto& r : j.at("per_phase_ratios"))
        report.per_phase_ratios.push_back(double_or_inf(r));
    return report;
}

void write_json_file(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

}  // namespace vbpbb
