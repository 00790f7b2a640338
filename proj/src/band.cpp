#include "vbpbb/band.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace vbpbb {

PeriodicMeanProfile periodic_mean(std::span<const double> values, std::int64_t first_t,
                                  int period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    if (first_t < 1) throw std::invalid_argument("first index must be >= 1");
    if (values.empty()) throw Error("periodic mean of an empty window");

    PeriodicMeanProfile out;
    out.period = period;
    std::vector<double> sums(static_cast<std::size_t>(period), 0.0);
    out.counts.assign(static_cast<std::size_t>(period), 0);
    // plain left-to-right accumulation, one pass
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto ph = static_cast<std::size_t>(
            (first_t + static_cast<std::int64_t>(i) - 1) % period);
        sums[ph] += values[i];
        ++out.counts[ph];
    }
    out.means.resize(static_cast<std::size_t>(period));
    for (int ph = 0; ph < period; ++ph) {
        if (out.counts[static_cast<std::size_t>(ph)] == 0)
            throw Error("phase " + std::to_string(ph) + " of period " +
                        std::to_string(period) + " has no observations (window too short)");
        out.means[static_cast<std::size_t>(ph)] =
            sums[static_cast<std::size_t>(ph)] /
            static_cast<double>(out.counts[static_cast<std::size_t>(ph)]);
    }
    return out;
}

PeriodicMeanProfile periodic_mean(const RegularSeries& s, int period) {
    return periodic_mean(s.values(), 1, period);
}

namespace {

// trim restricts the component to its full-support window
SeriesView component_window(const PCComponent& c) {
    if (c.edge == EdgePolicy::Trim) {
        if (c.valid.empty()) throw Error("trimmed component has no valid samples");
        return SeriesView{std::span<const double>(c.values).subspan(
                              static_cast<std::size_t>(c.valid.first_t - 1),
                              static_cast<std::size_t>(c.valid.length())),
                          c.valid.first_t};
    }
    return SeriesView{c.values, 1};
}

int min_replicates(double alpha) {
    return static_cast<int>(std::ceil(2.0 / alpha));
}

void check_band_args(double alpha, int replicates, int fold_period) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie strictly between 0 and 1");
    if (fold_period < 1) throw std::invalid_argument("fold period must be positive");
    if (replicates < min_replicates(alpha))
        throw Error("replicate count " + std::to_string(replicates) +
                     " is too small for alpha " + std::to_string(alpha) +
                     " (need at least " + std::to_string(min_replicates(alpha)) + ")");
}

// Runs fn(i) for i in [0, count) across `threads` workers; deterministic
// output as long as fn(i) writes only to slot i.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    threads = std::clamp(threads, 1, count);
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const int chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(count, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ConfidenceBand finish_band(std::string method, int fold_period, double alpha,
                           const BootstrapSpec& spec, std::uint64_t seed,
                           const PeriodicMeanProfile& point,
                           const std::vector<double>& rows) {
    const int B = spec.replicates;
    ConfidenceBand band;
    band.method = std::move(method);
    band.period = fold_period;
    band.alpha = alpha;
    band.replicates = B;
    band.seed = seed;
    band.point = point.means;
    band.lower.resize(static_cast<std::size_t>(fold_period));
    band.upper.resize(static_cast<std::size_t>(fold_period));
    std::vector<double> column(static_cast<std::size_t>(B));
    for (int ph = 0; ph < fold_period; ++ph) {
        for (int i = 0; i < B; ++i)
            column[static_cast<std::size_t>(i)] =
                rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(fold_period) +
                     static_cast<std::size_t>(ph)];
        std::sort(column.begin(), column.end());
        band.lower[static_cast<std::size_t>(ph)] = percentile_sorted(column, alpha / 2.0);
        band.upper[static_cast<std::size_t>(ph)] =
            percentile_sorted(column, 1.0 - alpha / 2.0);
    }
    auto [ur, lr] = envelope_ranges(band);
    band.upper_range = ur;
    band.lower_range = lr;
    band.significant = significance(band);
    return band;
}

}  // namespace

double percentile_sorted(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty()) throw Error("percentile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
    const std::size_t n = sorted_values.size();
    double rank = q * static_cast<double>(n - 1);
    auto lo = static_cast<std::size_t>(rank);
    if (lo >= n - 1) return sorted_values[n - 1];
    double frac = rank - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

ConfidenceBand bootstrap_band(SeriesView input, const BootstrapSpec& spec,
                              int fold_period, double alpha, int threads) {
    const std::int64_t n = static_cast<std::int64_t>(input.values.size());
    spec.validate(n);
    check_band_args(alpha, spec.replicates, fold_period);

    const auto point = periodic_mean(input.values, input.first_t, fold_period);
    const int B = spec.replicates;
    std::vector<double> rows(static_cast<std::size_t>(B) *
                             static_cast<std::size_t>(fold_period));
    parallel_for_index(B, threads, [&](int i) {
        RngStream stream = replicate_stream(spec.seed, static_cast<std::uint64_t>(i));
        ResamplePlan plan = spec.method == BootstrapMethod::PBB
                                ? plan_pbb(n, spec.period, stream)
                                : plan_gsbb(n, spec.block_length, spec.period, stream);
        std::vector<double> buffer(static_cast<std::size_t>(n));
        apply_plan(input.values, plan, buffer);
        auto profile = periodic_mean(buffer, input.first_t, fold_period);
        std::copy(profile.means.begin(), profile.means.end(),
                  rows.begin() +
                      static_cast<std::size_t>(i) * static_cast<std::size_t>(fold_period));
    });

    return finish_band(spec.method == BootstrapMethod::PBB ? "PBB" : "GSBB", fold_period,
                       alpha, spec, spec.seed, point, rows);
}

ConfidenceBand bootstrap_band(const PCComponent& c, const BootstrapSpec& spec,
                              int fold_period, double alpha, int threads) {
    return bootstrap_band(component_window(c), spec, fold_period, alpha, threads);
}

std::pair<EnvelopeRange, EnvelopeRange> envelope_ranges(const ConfidenceBand& band) {
    if (band.upper.empty() || band.lower.empty())
        throw Error("band has no envelope curves");
    auto [umin, umax] = std::minmax_element(band.upper.begin(), band.upper.end());
    auto [lmin, lmax] = std::minmax_element(band.lower.begin(), band.lower.end());
    return {EnvelopeRange{*umin, *umax}, EnvelopeRange{*lmin, *lmax}};
}

bool significance(const ConfidenceBand& band) {
    auto [ur, lr] = envelope_ranges(band);
    return ur.min < 0.0 && 0.0 < ur.max && lr.min < 0.0 && 0.0 < lr.max;
}

ConfidenceBand sum_components_band(std::span<const PCComponent> components,
                                   std::span<const BootstrapSpec> specs,
                                   std::uint64_t seed, int fold_period, double alpha,
                                   int threads) {
    if (components.empty()) throw Error("no components to sum");
    if (components.size() != specs.size())
        throw Error("mismatched lengths: " + std::to_string(components.size()) +
                     " components vs " + std::to_string(specs.size()) + " specs");
    const int B = specs[0].replicates;
    for (const auto& spec : specs) {
        if (spec.method != BootstrapMethod::PBB)
            throw Error("summed bands resample each component with period-aligned blocks");
        if (spec.replicates != B)
            throw Error("mismatched replicate counts across component specs");
    }
    for (std::size_t j = 1; j < components.size(); ++j) {
        if (components[j].values.size() != components[0].values.size() ||
            !(components[j].start == components[0].start))
            throw Error("components must share the same time base");
    }

    // common window: intersection of the components' usable ranges
    std::int64_t first_t = 1;
    std::int64_t last_t = static_cast<std::int64_t>(components[0].values.size());
    for (const auto& c : components) {
        if (c.edge == EdgePolicy::Trim) {
            first_t = std::max(first_t, c.valid.first_t);
            last_t = std::min(last_t, c.valid.last_t);
        }
    }
    if (first_t > last_t) throw Error("components have no common valid window");
    const std::int64_t n = last_t - first_t + 1;
    for (const auto& spec : specs) spec.validate(n);
    check_band_args(alpha, B, fold_period);

    auto window = [&](const PCComponent& c) {
        return std::span<const double>(c.values).subspan(
            static_cast<std::size_t>(first_t - 1), static_cast<std::size_t>(n));
    };

    std::vector<double> total(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < components.size(); ++j) {
        auto w = window(components[j]);
        if (j == 0)
            std::copy(w.begin(), w.end(), total.begin());
        else
            for (std::size_t i = 0; i < w.size(); ++i) total[i] += w[i];
    }
    const auto point = periodic_mean(total, first_t, fold_period);

    std::vector<double> rows(static_cast<std::size_t>(B) *
                             static_cast<std::size_t>(fold_period));
    parallel_for_index(B, threads, [&](int i) {
        std::vector<double> acc(static_cast<std::size_t>(n));
        std::vector<double> tmp(static_cast<std::size_t>(n));
        for (std::size_t j = 0; j < components.size(); ++j) {
            RngStream stream =
                replicate_stream(component_seed(seed, static_cast<std::uint64_t>(j)),
                                 static_cast<std::uint64_t>(i));
            ResamplePlan plan = plan_pbb(n, specs[j].period, stream);
            if (j == 0) {
                apply_plan(window(components[j]), plan, acc);
            } else {
                apply_plan(window(components[j]), plan, tmp);
                for (std::size_t idx = 0; idx < acc.size(); ++idx) acc[idx] += tmp[idx];
            }
        }
        auto profile = periodic_mean(acc, first_t, fold_period);
        std::copy(profile.means.begin(), profile.means.end(),
                  rows.begin() +
                      static_cast<std::size_t>(i) * static_cast<std::size_t>(fold_period));
    });

    BootstrapSpec master = specs[0];
    master.seed = seed;
    return finish_band("PBB_SUM", fold_period, alpha, master, seed, point, rows);
}

std::vector<double> band_width_ratios(const ConfidenceBand& numer,
                                      const ConfidenceBand& denom) {
    if (numer.period != denom.period)
        throw Error("width ratio requires bands folded to the same period");
    std::vector<double> out(static_cast<std::size_t>(numer.period));
    for (std::size_t ph = 0; ph < out.size(); ++ph) {
        double wn = numer.upper[ph] - numer.lower[ph];
        double wd = denom.upper[ph] - denom.lower[ph];
        if (wn == wd)
            out[ph] = 1.0;  // covers 0/0 on degenerate noiseless bands
        else if (wd == 0.0)
            out[ph] = std::numeric_limits<double>::infinity();
        else
            out[ph] = wn / wd;
    }
    return out;
}

ComparisonReport compare_methods(const RegularSeries& s, const ComponentSpec& cspec,
                                 int fold_period, int replicates, std::uint64_t seed,
                                 double alpha, int threads) {
    FilterSpec fs{cspec.m, cspec.k, cspec.frequency};
    auto z = kzft_filter(s, fs, cspec.edge);
    auto component = reconstruct_component(z, cspec.frequency, fold_period);
    BootstrapSpec vspec{BootstrapMethod::PBB, fold_period, fold_period, replicates, seed};
    ComparisonReport report;
    report.vbpbb = bootstrap_band(component, vspec, fold_period, alpha, threads);

    // baseline: plain seasonal block bootstrap of the centered raw series
    auto centered = center(s);
    BootstrapSpec gspec{BootstrapMethod::GSBB, fold_period, fold_period, replicates, seed};
    report.gsbb = bootstrap_band(SeriesView{centered.values(), 1}, gspec, fold_period,
                                 alpha, threads);

    report.per_phase_ratios = band_width_ratios(report.gsbb, report.vbpbb);
    report.median_width_ratio = median(report.per_phase_ratios);

    std::vector<double> wv(report.vbpbb.upper.size()), wg(report.gsbb.upper.size());
    for (std::size_t ph = 0; ph < wv.size(); ++ph)
        wv[ph] = report.vbpbb.upper[ph] - report.vbpbb.lower[ph];
    for (std::size_t ph = 0; ph < wg.size(); ++ph)
        wg[ph] = report.gsbb.upper[ph] - report.gsbb.lower[ph];
    double mv = median(wv), mg = median(wg);
    report.ratio_of_median_widths = (mg == mv) ? 1.0 : (mv == 0.0)
        ? std::numeric_limits<double>::infinity()
        : mg / mv;
    return report;
}

}  // namespace vbpbb
