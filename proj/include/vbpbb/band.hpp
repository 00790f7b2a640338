#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vbpbb/kz.hpp"
#include "vbpbb/resample.hpp"
#include "vbpbb/series.hpp"

namespace vbpbb {

// Per-phase means of an indexed window; phases use the original 1-based t.
struct PeriodicMeanProfile {
    int period = 1;
    std::vector<double> means;
    std::vector<std::int64_t> counts;
};

PeriodicMeanProfile periodic_mean(std::span<const double> values,
                                  std::int64_t first_t, int period);
PeriodicMeanProfile periodic_mean(const RegularSeries& s, int period);
// Uses the valid window when the component was built with EdgePolicy::Trim.
PeriodicMeanProfile periodic_mean(const PCComponent& c, int period);

// Linear interpolation between order statistics at rank q*(B-1), zero-based.
double percentile_sorted(std::span<const double> sorted_values, double q);

// Median of the given values (sorted internally; even count averages the
// middle pair).
double median(std::vector<double> values);

struct EnvelopeRange {
    double min = 0.0;
    double max = 0.0;
};

struct ConfidenceBand {
    std::string method;  // "PBB", "GSBB", "PBB_SUM"
    int period = 1;      // fold period, = number of phases
    double alpha = 0.05;
    int replicates = 0;
    std::uint64_t seed = 0;
    std::vector<double> lower, point, upper;
    EnvelopeRange upper_range, lower_range;
    bool significant = false;
};

// Values with their 1-based anchor in original time (so phase alignment
// survives trimming).
struct SeriesView {
    std::span<const double> values;
    std::int64_t first_t = 1;
};

// Point profile plus percentile envelope from `spec.replicates` resamples.
// Deterministic for a given spec regardless of `threads`.
ConfidenceBand bootstrap_band(SeriesView input, const BootstrapSpec& spec,
                              int fold_period, double alpha = 0.05, int threads = 1);
ConfidenceBand bootstrap_band(const PCComponent& c, const BootstrapSpec& spec,
                              int fold_period, double alpha = 0.05, int threads = 1);

// (upper_range, lower_range): min/max of each envelope curve over phases.
std::pair<EnvelopeRange, EnvelopeRange> envelope_ranges(const ConfidenceBand& band);

// Strict rule for a zero-reference band: significant iff 0 lies strictly
// inside both envelope ranges (some phase's CI entirely below 0 and some
// entirely above).
bool significance(const ConfidenceBand& band);

// Band of a sum of components, each resampled independently with its own
// period under streams derived from (seed, component index, replicate).
// One spec per component; methods must be PBB and replicate counts equal.
// The specs' own seeds are ignored in favor of the master seed.
ConfidenceBand sum_components_band(std::span<const PCComponent> components,
                                   std::span<const BootstrapSpec> specs,
                                   std::uint64_t seed, int fold_period,
                                   double alpha = 0.05, int threads = 1);

// How a component is extracted for a method comparison.
struct ComponentSpec {
    double frequency = 0.0;
    int m = 1;
    int k = 1;
    EdgePolicy edge = EdgePolicy::Renormalize;
};

struct ComparisonReport {
    ConfidenceBand vbpbb;
    ConfidenceBand gsbb;
    std::vector<double> per_phase_ratios;  // GSBB width / VBPBB width
    double median_width_ratio = 0.0;
    double ratio_of_median_widths = 0.0;
};

// Per-phase ratio of band widths numer/denom. Equal widths give 1 (covers
// 0/0); a zero denominator alone gives +inf.
std::vector<double> band_width_ratios(const ConfidenceBand& numer,
                                      const ConfidenceBand& denom);

// Same series, same seed: filtered component + PBB versus centered raw
// series + GSBB, folded to the same period.
ComparisonReport compare_methods(const RegularSeries& s, const ComponentSpec& cspec,
                                 int fold_period, int replicates, std::uint64_t seed,
                                 double alpha = 0.05, int threads = 1);

}  // namespace vbpbb
