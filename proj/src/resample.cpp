#include "vbpbb/resample.hpp"

#include <algorithm>
#include <string>

namespace vbpbb {

void BootstrapSpec::validate(std::int64_t n) const {
    if (n < 1) throw Error("series is empty");
    if (block_length < 1) throw Error("block length must be positive");
    if (period < 1) throw Error("period must be positive");
    if (block_length > n)
        throw Error("block length " + std::to_string(block_length) +
                     " exceeds series length " + std::to_string(n));
    if (replicates < 1) throw Error("replicate count must be positive");
    if (method == BootstrapMethod::PBB) {
        if (block_length != period)
            throw Error("period-aligned bootstrap requires block length equal to the period");
    } else {
        if (block_length % period != 0)
            throw Error("block length must be a multiple of the period");
    }
}

namespace {

// Source starts admissible for target start t: {s : 1 <= s <= n-b+1,
// s ≡ t (mod d)}. Count and enumerate-by-index without materializing.
std::int64_t admissible_count(std::int64_t n, std::int64_t b, std::int64_t d,
                              std::int64_t t) {
    std::int64_t max_start = n - b + 1;
    std::int64_t first = (t - 1) % d + 1;  // smallest admissible start
    if (first > max_start) return 0;
    return (max_start - first) / d + 1;
}

ResamplePlan plan_blocks(std::int64_t n, int b, int d, RngStream& rng) {
    ResamplePlan plan;
    plan.n = n;
    plan.block_length = b;
    plan.period = d;
    for (std::int64_t t = 1; t <= n; t += b) {
        std::int64_t count = admissible_count(n, b, d, t);
        if (count == 0)
            throw Error("no admissible source block for target position " +
                         std::to_string(t));
        std::int64_t first = (t - 1) % d + 1;
        std::int64_t pick = static_cast<std::int64_t>(
            rng.uniform_below(static_cast<std::uint64_t>(count)));
        plan.block_starts.push_back(first + pick * d);
    }
    return plan;
}

}  // namespace

ResamplePlan plan_pbb(std::int64_t n, int d, RngStream& rng) {
    BootstrapSpec spec{BootstrapMethod::PBB, d, d, 1, 0};
    spec.validate(n);
    return plan_blocks(n, d, d, rng);
}

ResamplePlan plan_gsbb(std::int64_t n, int b, int d, RngStream& rng) {
    BootstrapSpec spec{BootstrapMethod::GSBB, b, d, 1, 0};
    spec.validate(n);
    return plan_blocks(n, b, d, rng);
}

void apply_plan(std::span<const double> source, const ResamplePlan& plan,
                std::span<double> out) {
    if (static_cast<std::int64_t>(source.size()) != plan.n)
        throw Error("plan was built for a different series length");
    if (static_cast<std::int64_t>(out.size()) != plan.n)
        throw Error("output buffer length mismatch");
    const std::int64_t b = plan.block_length;
    std::int64_t t = 1;
    for (std::int64_t s : plan.block_starts) {
        std::int64_t len = std::min<std::int64_t>(b, plan.n - t + 1);  // final block truncates
        for (std::int64_t i = 0; i < len; ++i)
            out[static_cast<std::size_t>(t - 1 + i)] =
                source[static_cast<std::size_t>(s - 1 + i)];
        t += b;
    }
}

std::vector<double> apply_plan(std::span<const double> source, const ResamplePlan& plan) {
    std::vector<double> out(static_cast<std::size_t>(plan.n));
    apply_plan(source, plan, out);
    return out;
}

std::vector<std::int64_t> plan_provenance(const ResamplePlan& plan) {
    std::vector<std::int64_t> src(static_cast<std::size_t>(plan.n));
    const std::int64_t b = plan.block_length;
    std::int64_t t = 1;
    for (std::int64_t s : plan.block_starts) {
        std::int64_t len = std::min<std::int64_t>(b, plan.n - t + 1);
        for (std::int64_t i = 0; i < len; ++i)
            src[static_cast<std::size_t>(t - 1 + i)] = s + i;
        t += b;
    }
    return src;
}

RegularSeries pbb_resample(const RegularSeries& s, int d, RngStream& rng) {
    auto plan = plan_pbb(s.size(), d, rng);
    return RegularSeries(s.start(), apply_plan(s.values(), plan));
}

RegularSeries gsbb_resample(const RegularSeries& s, int b, int d, RngStream& rng) {
    auto plan = plan_gsbb(s.size(), b, d, rng);
    return RegularSeries(s.start(), apply_plan(s.values(), plan));
}

}  // namespace vbpbb
