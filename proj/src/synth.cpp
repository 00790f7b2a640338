#include "vbpbb/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vbpbb/kz.hpp"
#include "vbpbb/rng.hpp"

namespace vbpbb {

void SyntheticSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
    if (!std::isfinite(trend_slope)) throw std::invalid_argument("trend_slope must be finite");
    for (std::size_t j = 0; j < components.size(); ++j) {
        const auto& c = components[j];
        if (!std::isfinite(c.amplitude) || !std::isfinite(c.phase))
            throw std::invalid_argument("component amplitude/phase must be finite");
        if (!(c.frequency > 0.0) || c.frequency > 0.5)
            throw std::invalid_argument("component frequency must lie in (0, 0.5]");
        for (std::size_t i = 0; i < j; ++i)
            if (components[i].frequency == c.frequency)
                throw std::invalid_argument("component frequencies must be distinct");
    }
}

SynthResult generate(const SyntheticSpec& spec) {
    spec.validate();
    const auto count = static_cast<std::size_t>(spec.n);

    std::vector<std::vector<double>> truth(spec.components.size(),
                                           std::vector<double>(count));
    std::vector<double> total(count, 0.0);
    for (std::size_t j = 0; j < spec.components.size(); ++j) {
        const auto& c = spec.components[j];
        for (std::size_t i = 0; i < count; ++i) {
            double t = static_cast<double>(i + 1);
            double v = c.amplitude *
                       std::cos(2.0 * std::numbers::pi * c.frequency * t + c.phase);
            truth[j][i] = v;
            total[i] += v;
        }
    }
    if (spec.trend_slope != 0.0)
        for (std::size_t i = 0; i < count; ++i)
            total[i] += spec.trend_slope * static_cast<double>(i + 1);
    if (spec.noise_sd > 0.0) {
        RngStream rng = RngStream::from_seed(spec.seed);
        for (std::size_t i = 0; i < count; ++i) total[i] += spec.noise_sd * rng.normal();
    }

    SynthResult out{RegularSeries(spec.start, std::move(total)), {}};
    out.components.reserve(truth.size());
    for (auto& values : truth)
        out.components.emplace_back(spec.start, std::move(values));
    return out;
}

namespace {

double frequency_field(const nlohmann::json& v) {
    if (v.is_string()) return parse_frequency(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
    throw std::invalid_argument("frequency must be a number or an 'a/b' string");
}

// Specs are written by hand; a misspelled key silently changes the experiment,
// so reject anything unrecognized instead of ignoring it.
void require_known_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                        const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (ok) continue;
        std::string msg = "unknown key \"" + item.key() + "\" in " + where + " (accepted:";
        for (const char* k : known) msg += std::string(" ") + k;
        throw std::invalid_argument(msg + ")");
    }
}

}  // namespace

SyntheticSpec synth_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("synthetic spec must be a JSON object");
    require_known_keys(j, {"n", "seed", "noise_sd", "trend_slope", "start_date", "components"},
                       "synthetic spec");
    SyntheticSpec spec;
    spec.n = j.at("n").get<std::int64_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.noise_sd = j.value("noise_sd", 0.0);
    spec.trend_slope = j.value("trend_slope", 0.0);
    if (j.contains("start_date")) spec.start = parse_date(j.at("start_date").get<std::string>());
    if (j.contains("components")) {
        for (const auto& c : j.at("components")) {
            if (!c.is_object()) throw std::invalid_argument("each component must be a JSON object");
            require_known_keys(c, {"amplitude", "frequency", "phase"}, "component");
            SineComponent sc;
            sc.amplitude = c.at("amplitude").get<double>();
            sc.frequency = frequency_field(c.at("frequency"));
            sc.phase = c.value("phase", 0.0);
            spec.components.push_back(sc);
        }
    }
    spec.validate();
    return spec;
}

nlohmann::ordered_json synth_spec_to_json(const SyntheticSpec& spec) {
    nlohmann::ordered_json j;
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    j["noise_sd"] = spec.noise_sd;
    j["trend_slope"] = spec.trend_slope;
    j["start_date"] = format_date(spec.start);
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& c : spec.components) {
        nlohmann::ordered_json row;
        row["amplitude"] = c.amplitude;
        row["frequency"] = c.frequency;
        row["phase"] = c.phase;
        comps.push_back(std::move(row));
    }
    j["components"] = std::move(comps);
    return j;
}

}  // namespace vbpbb
