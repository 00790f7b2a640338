// vbpbb command-line front end: synthesize, scan, filter, bootstrap, compare,
// plot. Every subcommand writes a JSON manifest next to its main output so a
// run can be reproduced from the manifest alone.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "vbpbb/band.hpp"
#include "vbpbb/band_io.hpp"
#include "vbpbb/kz.hpp"
#include "vbpbb/plot.hpp"
#include "vbpbb/series.hpp"
#include "vbpbb/spectral.hpp"
#include "vbpbb/synth.hpp"
#include "vbpbb/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Relative outputs land under $VBPBB_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    fs::path p(path);
    if (!p.is_absolute()) {
        if (const char* dir = std::getenv("VBPBB_OUT_DIR"); dir && *dir)
            p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p.string();
}

void write_manifest(const std::string& main_out, const std::string& subcommand,
                    ordered_json parameters, std::vector<std::string> inputs,
                    std::vector<std::string> outputs) {
    ordered_json m;
    m["tool"] = vbpbb::kToolName;
    m["version"] = vbpbb::kToolVersion;
    m["subcommand"] = subcommand;
    m["parameters"] = std::move(parameters);
    m["inputs"] = std::move(inputs);
    m["outputs"] = std::move(outputs);
    vbpbb::write_json_file(m, main_out + ".manifest.json");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vbpbb::Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw vbpbb::Error("write failed: " + path);
}

struct FilterArgs {
    int period = 0;
    std::string v_text;
    int m = 0;  // 0 = derive from period
    int k = 1;
    std::string edge = "renormalize";

    void add_to(CLI::App* sub) {
        sub->add_option("--period", period, "periodic correlation period in steps")
            ->required()
            ->check(CLI::PositiveNumber);
        sub->add_option("--v", v_text, "center frequency, 'a/b' or decimal (default 1/period)");
        sub->add_option("--m", m, "filter window length, odd (default ~2 years of steps)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--k", k, "filter iterations")->check(CLI::PositiveNumber);
        sub->add_option("--edge", edge, "edge policy: renormalize|trim")
            ->check(CLI::IsMember({"renormalize", "trim"}));
    }

    double frequency() const {
        return v_text.empty() ? 1.0 / period : vbpbb::parse_frequency(v_text);
    }
    int window() const { return m > 0 ? m : vbpbb::default_window_for_period(period); }

    vbpbb::PCComponent extract(const vbpbb::RegularSeries& series) const {
        vbpbb::FilterSpec spec{window(), k, frequency()};
        double dev = vbpbb::window_frequency_deviation(spec.m, spec.v);
        if (dev > 1e-9)
            std::cerr << "warning: m*v = " << spec.m * spec.v
                      << " is not an integer (deviation " << dev
                      << "); the window does not hold a whole number of cycles\n";
        auto z = vbpbb::kzft_filter(series, spec, vbpbb::parse_edge_policy(edge));
        return vbpbb::reconstruct_component(z, spec.v, period);
    }

    ordered_json params() const {
        ordered_json p;
        p["period"] = period;
        p["v"] = frequency();
        p["m"] = window();
        p["k"] = k;
        p["edge"] = edge;
        return p;
    }
};

std::string band_summary(const vbpbb::ConfidenceBand& band) {
    std::string s = band.method + " p=" + std::to_string(band.period) +
                    " significant=" + (band.significant ? "yes" : "no");
    char buf[160];
    std::snprintf(buf, sizeof buf, " upper_range=[%.4g, %.4g] lower_range=[%.4g, %.4g]",
                  band.upper_range.min, band.upper_range.max, band.lower_range.min,
                  band.lower_range.max);
    return s + buf;
}

// "period=365,v=2/365,m=731,k=1" -> FilterArgs
FilterArgs parse_component_spec(const std::string& text, const std::string& edge) {
    FilterArgs args;
    args.edge = edge;
    std::string rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string item = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--component", "expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        try {
            if (key == "period") args.period = std::stoi(value);
            else if (key == "v") args.v_text = value;
            else if (key == "m") args.m = std::stoi(value);
            else if (key == "k") args.k = std::stoi(value);
            else
                throw CLI::ValidationError("--component", "unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--component", "bad value for '" + key + "'");
        }
    }
    if (args.period < 1)
        throw CLI::ValidationError("--component", "a positive period= is required");
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-component bandpass bootstrap toolkit"};
    app.set_version_flag("--version", std::string(vbpbb::kToolName) + " " +
                                          vbpbb::kToolVersion);
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic series from a JSON spec");
    std::string synth_spec_path, synth_out, synth_truth_dir;
    synth->add_option("--spec", synth_spec_path, "JSON spec file")->required();
    synth->add_option("--out", synth_out, "output series CSV")->required();
    synth->add_option("--truth-dir", synth_truth_dir,
                      "directory for ground-truth component CSVs");

    // ---- periodogram ----
    auto* pgram = app.add_subcommand("periodogram", "raw periodogram of a series");
    std::string pg_in, pg_out, pg_minsep_text;
    std::size_t pg_peaks = 0;
    pgram->add_option("--in", pg_in)->required();
    pgram->add_option("--out", pg_out, "output CSV (frequency,period,power)")->required();
    pgram->add_option("--peaks", pg_peaks, "print the top N peaks to stdout");
    pgram->add_option("--min-sep", pg_minsep_text,
                      "minimum frequency separation between printed peaks");

    // ---- filter ----
    auto* filter = app.add_subcommand("filter", "extract one bandpass component");
    std::string fl_in, fl_out;
    FilterArgs fl_args;
    filter->add_option("--in", fl_in)->required();
    filter->add_option("--out", fl_out, "output CSV (t,date,value,valid)")->required();
    fl_args.add_to(filter);

    // ---- vbpbb ----
    auto* vb = app.add_subcommand(
        "vbpbb", "bandpass component + period-aligned block bootstrap band");
    std::string vb_in, vb_out;
    FilterArgs vb_args;
    int vb_B = 1000, vb_fold = 0, vb_threads = 1;
    std::uint64_t vb_seed = 0;
    double vb_alpha = 0.05;
    vb->add_option("--in", vb_in)->required();
    vb->add_option("--out", vb_out, "output band JSON")->required();
    vb_args.add_to(vb);
    vb->add_option("--B", vb_B, "bootstrap replicates")->check(CLI::PositiveNumber);
    vb->add_option("--seed", vb_seed, "master seed");
    vb->add_option("--alpha", vb_alpha, "two-sided level");
    vb->add_option("--fold", vb_fold, "fold period for the band (default --period)")
        ->check(CLI::PositiveNumber);
    vb->add_option("--threads", vb_threads, "worker threads (does not affect output bytes)")
        ->check(CLI::PositiveNumber);

    // ---- gsbb ----
    auto* gs = app.add_subcommand(
        "gsbb", "seasonal block bootstrap band of the centered raw series");
    std::string gs_in, gs_out;
    int gs_period = 0, gs_block = 0, gs_B = 1000, gs_fold = 0, gs_threads = 1;
    std::uint64_t gs_seed = 0;
    double gs_alpha = 0.05;
    gs->add_option("--in", gs_in)->required();
    gs->add_option("--out", gs_out, "output band JSON")->required();
    gs->add_option("--period", gs_period, "seasonal period in steps")
        ->required()
        ->check(CLI::PositiveNumber);
    gs->add_option("--block", gs_block, "block length, a multiple of the period (default = period)")
        ->check(CLI::PositiveNumber);
    gs->add_option("--B", gs_B)->check(CLI::PositiveNumber);
    gs->add_option("--seed", gs_seed);
    gs->add_option("--alpha", gs_alpha);
    gs->add_option("--fold", gs_fold, "fold period (default --period)")
        ->check(CLI::PositiveNumber);
    gs->add_option("--threads", gs_threads)->check(CLI::PositiveNumber);

    // ---- sum-band ----
    auto* sum = app.add_subcommand("sum-band",
                                   "band of a sum of components, each block-resampled "
                                   "with its own period");
    std::string sum_in, sum_out, sum_edge = "renormalize";
    std::vector<std::string> sum_components;
    int sum_B = 1000, sum_fold = 0, sum_threads = 1, sum_gsbb_period = 0, sum_gsbb_block = 0;
    std::uint64_t sum_seed = 0;
    double sum_alpha = 0.05;
    sum->add_option("--in", sum_in)->required();
    sum->add_option("--out", sum_out, "output JSON")->required();
    sum->add_option("--component", sum_components,
                    "component spec 'period=P[,v=F][,m=M][,k=K]' (repeatable)")
        ->required();
    sum->add_option("--edge", sum_edge)->check(CLI::IsMember({"renormalize", "trim"}));
    sum->add_option("--B", sum_B)->check(CLI::PositiveNumber);
    sum->add_option("--seed", sum_seed);
    sum->add_option("--alpha", sum_alpha);
    sum->add_option("--fold", sum_fold,
                    "fold period for the summed band (default lcm of component periods)")
        ->check(CLI::PositiveNumber);
    sum->add_option("--gsbb-period", sum_gsbb_period,
                    "also build a seasonal-block baseline band at this single period")
        ->check(CLI::PositiveNumber);
    sum->add_option("--gsbb-block", sum_gsbb_block,
                    "block length for the baseline (default = its period)")
        ->check(CLI::PositiveNumber);
    sum->add_option("--threads", sum_threads)->check(CLI::PositiveNumber);

    // ---- compare ----
    auto* cmp = app.add_subcommand(
        "compare", "same series, same seed: filtered+PBB band vs centered GSBB band");
    std::string cmp_in, cmp_out;
    FilterArgs cmp_args;
    int cmp_B = 1000, cmp_threads = 1;
    std::uint64_t cmp_seed = 0;
    double cmp_alpha = 0.05;
    cmp->add_option("--in", cmp_in)->required();
    cmp->add_option("--out", cmp_out, "output report JSON")->required();
    cmp_args.add_to(cmp);
    cmp->add_option("--B", cmp_B)->check(CLI::PositiveNumber);
    cmp->add_option("--seed", cmp_seed);
    cmp->add_option("--alpha", cmp_alpha);
    cmp->add_option("--threads", cmp_threads)->check(CLI::PositiveNumber);

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "render bands to a deterministic SVG");
    std::vector<std::string> plot_bands;
    std::string plot_compare, plot_out, plot_title, plot_domain = "phase";
    std::int64_t plot_span = 0;
    int plot_w = 860, plot_h = 420;
    plot->add_option("--band", plot_bands, "band JSON file (repeatable)");
    plot->add_option("--compare", plot_compare, "comparison report JSON");
    plot->add_option("--out", plot_out, "output SVG")->required();
    plot->add_option("--title", plot_title);
    plot->add_option("--domain", plot_domain, "x axis: phase|time")
        ->check(CLI::IsMember({"phase", "time"}));
    plot->add_option("--span", plot_span, "time-domain length (default one full cycle)");
    plot->add_option("--width", plot_w)->check(CLI::PositiveNumber);
    plot->add_option("--height", plot_h)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*synth) {
            auto spec = vbpbb::synth_spec_from_json(vbpbb::read_json_file(synth_spec_path));
            auto result = vbpbb::generate(spec);
            std::string out = resolve_out(synth_out);
            vbpbb::write_series_csv(result.series, out);
            std::vector<std::string> outputs{out};
            if (!synth_truth_dir.empty()) {
                std::string dir = resolve_out(synth_truth_dir);
                fs::create_directories(dir);
                for (std::size_t j = 0; j < result.components.size(); ++j) {
                    std::string path =
                        (fs::path(dir) / ("component_" + std::to_string(j) + ".csv")).string();
                    vbpbb::write_series_csv(result.components[j], path);
                    outputs.push_back(path);
                }
            }
            write_manifest(out, "synth", vbpbb::synth_spec_to_json(spec),
                           {synth_spec_path}, outputs);
        } else if (*pgram) {
            auto series = vbpbb::read_series_csv(pg_in);
            auto pg = vbpbb::periodogram(series);
            std::string out = resolve_out(pg_out);
            std::ofstream file(out);
            if (!file) throw vbpbb::Error("cannot open " + out + " for writing");
            vbpbb::write_periodogram_csv(pg, file);
            if (!file) throw vbpbb::Error("write failed: " + out);
            double minsep =
                pg_minsep_text.empty() ? 0.0 : vbpbb::parse_frequency(pg_minsep_text);
            if (pg_peaks > 0) {
                for (const auto& peak : vbpbb::top_peaks(pg, pg_peaks, minsep)) {
                    char buf[128];
                    std::snprintf(buf, sizeof buf, "%.10g\t%.10g\t%.10g", peak.frequency,
                                  1.0 / peak.frequency, peak.power);
                    std::cout << buf << '\n';
                }
            }
            ordered_json params;
            params["peaks"] = pg_peaks;
            params["min_separation"] = minsep;
            write_manifest(out, "periodogram", params, {pg_in}, {out});
        } else if (*filter) {
            auto series = vbpbb::read_series_csv(fl_in);
            auto component = fl_args.extract(series);
            std::string out = resolve_out(fl_out);
            vbpbb::write_component_csv(component, out);
            write_manifest(out, "filter", fl_args.params(), {fl_in}, {out});
        } else if (*vb) {
            auto series = vbpbb::read_series_csv(vb_in);
            auto component = vb_args.extract(series);
            int fold = vb_fold > 0 ? vb_fold : vb_args.period;
            vbpbb::BootstrapSpec spec{vbpbb::BootstrapMethod::PBB, vb_args.period,
                                      vb_args.period, vb_B, vb_seed};
            auto band = vbpbb::bootstrap_band(component, spec, fold, vb_alpha, vb_threads);
            std::string out = resolve_out(vb_out);
            vbpbb::write_json_file(vbpbb::band_to_json(band), out);
            std::cout << band_summary(band) << '\n';
            ordered_json params = vb_args.params();
            params["B"] = vb_B;
            params["seed"] = vb_seed;
            params["alpha"] = vb_alpha;
            params["fold"] = fold;
            write_manifest(out, "vbpbb", params, {vb_in}, {out});
        } else if (*gs) {
            auto series = vbpbb::read_series_csv(gs_in);
            auto centered = vbpbb::center(series);
            int block = gs_block > 0 ? gs_block : gs_period;
            int fold = gs_fold > 0 ? gs_fold : gs_period;
            vbpbb::BootstrapSpec spec{vbpbb::BootstrapMethod::GSBB, block, gs_period, gs_B,
                                      gs_seed};
            auto band = vbpbb::bootstrap_band(
                vbpbb::SeriesView{centered.values(), 1}, spec, fold, gs_alpha, gs_threads);
            std::string out = resolve_out(gs_out);
            vbpbb::write_json_file(vbpbb::band_to_json(band), out);
            std::cout << band_summary(band) << '\n';
            ordered_json params;
            params["period"] = gs_period;
            params["block"] = block;
            params["B"] = gs_B;
            params["seed"] = gs_seed;
            params["alpha"] = gs_alpha;
            params["fold"] = fold;
            write_manifest(out, "gsbb", params, {gs_in}, {out});
        } else if (*sum) {
            auto series = vbpbb::read_series_csv(sum_in);
            std::vector<vbpbb::PCComponent> components;
            std::vector<vbpbb::BootstrapSpec> specs;
            ordered_json comp_params = ordered_json::array();
            std::int64_t fold_lcm = 1;
            for (const auto& text : sum_components) {
                FilterArgs args = parse_component_spec(text, sum_edge);
                components.push_back(args.extract(series));
                specs.push_back({vbpbb::BootstrapMethod::PBB, args.period, args.period,
                                 sum_B, sum_seed});
                comp_params.push_back(args.params());
                fold_lcm = std::lcm(fold_lcm, static_cast<std::int64_t>(args.period));
            }
            int fold;
            if (sum_fold > 0) {
                fold = sum_fold;
            } else {
                if (fold_lcm > 10'000'000)
                    throw vbpbb::Error(
                        "combined fold period " + std::to_string(fold_lcm) +
                        " is too large; pass --fold explicitly");
                fold = static_cast<int>(fold_lcm);
            }
            auto band = vbpbb::sum_components_band(components, specs, sum_seed, fold,
                                                   sum_alpha, sum_threads);
            std::string out = resolve_out(sum_out);
            ordered_json params;
            params["components"] = comp_params;
            params["edge"] = sum_edge;
            params["B"] = sum_B;
            params["seed"] = sum_seed;
            params["alpha"] = sum_alpha;
            params["fold"] = fold;
            if (sum_gsbb_period > 0) {
                auto centered = vbpbb::center(series);
                int gblock = sum_gsbb_block > 0 ? sum_gsbb_block : sum_gsbb_period;
                vbpbb::BootstrapSpec gspec{vbpbb::BootstrapMethod::GSBB, gblock,
                                           sum_gsbb_period, sum_B, sum_seed};
                auto gband = vbpbb::bootstrap_band(
                    vbpbb::SeriesView{centered.values(), 1}, gspec, sum_gsbb_period,
                    sum_alpha, sum_threads);
                // widths compared along original time, phase-by-phase of each band
                std::vector<double> ratios(static_cast<std::size_t>(series.size()));
                for (std::int64_t t = 1; t <= series.size(); ++t) {
                    auto pv = static_cast<std::size_t>(vbpbb::phase_of(t, band.period));
                    auto pg2 = static_cast<std::size_t>(vbpbb::phase_of(t, gband.period));
                    double wv = band.upper[pv] - band.lower[pv];
                    double wg = gband.upper[pg2] - gband.lower[pg2];
                    ratios[static_cast<std::size_t>(t - 1)] =
                        (wg == wv) ? 1.0
                        : (wv == 0.0) ? std::numeric_limits<double>::infinity()
                                      : wg / wv;
                }
                ordered_json j;
                j["vbpbb"] = vbpbb::band_to_json(band);
                j["gsbb"] = vbpbb::band_to_json(gband);
                j["median_width_ratio_over_time"] = vbpbb::median(std::move(ratios));
                vbpbb::write_json_file(j, out);
                std::cout << band_summary(band) << '\n' << band_summary(gband) << '\n';
                params["gsbb_period"] = sum_gsbb_period;
                params["gsbb_block"] = gblock;
            } else {
                vbpbb::write_json_file(vbpbb::band_to_json(band), out);
                std::cout << band_summary(band) << '\n';
            }
            write_manifest(out, "sum-band", params, {sum_in}, {out});
        } else if (*cmp) {
            auto series = vbpbb::read_series_csv(cmp_in);
            vbpbb::ComponentSpec cspec{cmp_args.frequency(), cmp_args.window(), cmp_args.k,
                                       vbpbb::parse_edge_policy(cmp_args.edge)};
            auto report = vbpbb::compare_methods(series, cspec, cmp_args.period, cmp_B,
                                                 cmp_seed, cmp_alpha, cmp_threads);
            std::string out = resolve_out(cmp_out);
            vbpbb::write_json_file(vbpbb::report_to_json(report), out);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "median width ratio (GSBB/VBPBB): %.6g  (ratio of medians %.6g)",
                          report.median_width_ratio, report.ratio_of_median_widths);
            std::cout << buf << '\n'
                      << band_summary(report.vbpbb) << '\n'
                      << band_summary(report.gsbb) << '\n';
            ordered_json params = cmp_args.params();
            params["B"] = cmp_B;
            params["seed"] = cmp_seed;
            params["alpha"] = cmp_alpha;
            write_manifest(out, "compare", params, {cmp_in}, {out});
        } else if (*plot) {
            std::vector<vbpbb::ConfidenceBand> bands;
            std::vector<std::string> inputs;
            if (!plot_compare.empty()) {
                auto report = vbpbb::report_from_json(vbpbb::read_json_file(plot_compare));
                bands.push_back(std::move(report.gsbb));  // baseline under the narrow band
                bands.push_back(std::move(report.vbpbb));
                inputs.push_back(plot_compare);
            }
            for (const auto& path : plot_bands) {
                auto j = vbpbb::read_json_file(path);
                if (j.contains("phases")) {
                    bands.push_back(vbpbb::band_from_json(j));
                } else if (j.contains("vbpbb")) {
                    if (j.contains("gsbb")) bands.push_back(vbpbb::band_from_json(j.at("gsbb")));
                    bands.push_back(vbpbb::band_from_json(j.at("vbpbb")));
                } else {
                    throw vbpbb::Error(path + ": not a band or comparison JSON");
                }
                inputs.push_back(path);
            }
            if (bands.empty())
                throw CLI::ValidationError("plot", "pass --band and/or --compare");
            vbpbb::PlotOptions options;
            options.width = plot_w;
            options.height = plot_h;
            options.title = plot_title;
            options.domain =
                plot_domain == "time" ? vbpbb::PlotDomain::Time : vbpbb::PlotDomain::Phase;
            options.span = plot_span;
            std::string out = resolve_out(plot_out);
            write_text_file(out, vbpbb::render_band_svg(bands, options));
            ordered_json params;
            params["domain"] = plot_domain;
            params["span"] = plot_span;
            params["title"] = plot_title;
            params["width"] = plot_w;
            params["height"] = plot_h;
            write_manifest(out, "plot", params, inputs, {out});
        }
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
