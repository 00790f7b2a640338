#pragma once

#include <json.hpp>

#include "vbpbb/band.hpp"

namespace vbpbb {

nlohmann::ordered_json band_to_json(const ConfidenceBand& band);
ConfidenceBand band_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace vbpbb
