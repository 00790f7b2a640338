#include "vbpbb/kz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vbpbb {

namespace {

// generous cap on kernel length; k is otherwise bounded only by memory
constexpr std::int64_t kMaxKernelLength = std::int64_t(1) << 24;

}  // namespace

void FilterSpec::validate() const {
    if (m < 1 || m % 2 == 0)
        throw std::invalid_argument("window length m must be a positive odd integer");
    if (k < 1) throw std::invalid_argument("iteration count k must be >= 1");
    if (!(v >= 0.0) || v > 0.5)
        throw std::invalid_argument("frequency v must lie in [0, 0.5]");
    std::int64_t len = static_cast<std::int64_t>(k) * (m - 1) + 1;
    if (len > kMaxKernelLength)
        throw std::invalid_argument("k(m-1)+1 exceeds the supported kernel length");
}

EdgePolicy parse_edge_policy(std::string_view name) {
    if (name == "renormalize") return EdgePolicy::Renormalize;
    if (name == "trim") return EdgePolicy::Trim;
    throw std::invalid_argument("edge policy must be 'renormalize' or 'trim'");
}

std::string_view edge_policy_name(EdgePolicy p) {
    return p == EdgePolicy::Renormalize ? "renormalize" : "trim";
}

std::vector<double> kz_coefficients(int m, int k) {
    FilterSpec{m, k, 0.0}.validate();
    // coefficients of (1 + z + ... + z^(m-1))^k by repeated convolution;
    // integer-valued until the final scaling
    std::vector<double> c(static_cast<std::size_t>(m), 1.0);
    for (int iter = 1; iter < k; ++iter) {
        std::vector<double> next(c.size() + static_cast<std::size_t>(m) - 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (int j = 0; j < m; ++j) next[i + static_cast<std::size_t>(j)] += c[i];
        c = std::move(next);
    }
    double total = 0.0;
    for (double w : c) total += w;
    for (double& w : c) w /= total;
    return c;
}

FilterResult kz_filter(const RegularSeries& x, int m, int k, EdgePolicy edge) {
    FilterSpec spec{m, k, 0.0};
    spec.validate();
    const auto a = kz_coefficients(m, k);
    const std::int64_t h = spec.half_width();
    const std::int64_t n = x.size();
    const auto& xs = x.values();

    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {  // 0-based position
        const std::int64_t lo = std::max<std::int64_t>(-h, -t);
        const std::int64_t hi = std::min<std::int64_t>(h, n - 1 - t);
        double acc = 0.0;
        for (std::int64_t s = lo; s <= hi; ++s)
            acc += a[static_cast<std::size_t>(s + h)] * xs[static_cast<std::size_t>(t + s)];
        if (lo > -h || hi < h) {
            double wsum = 0.0;
            for (std::int64_t s = lo; s <= hi; ++s) wsum += a[static_cast<std::size_t>(s + h)];
            acc /= wsum;  // rescale the available weights to sum 1
        }
        out[static_cast<std::size_t>(t)] = acc;
    }

    ValidRange valid{1 + h, n - h};
    return FilterResult{RegularSeries(x.start(), std::move(out)), valid, edge};
}

ComplexSeries kzft_filter(const RegularSeries& x, const FilterSpec& spec, EdgePolicy edge) {
    spec.validate();
    const auto a = kz_coefficients(spec.m, spec.k);
    const std::int64_t h = spec.half_width();
    const std::int64_t n = x.size();
    const auto& xs = x.values();

    // kernel_s = a_s * e^{-i 2 pi v s}, s = -h..h
    std::vector<std::complex<double>> kernel(a.size());
    for (std::int64_t s = -h; s <= h; ++s) {
        double angle = -2.0 * std::numbers::pi * spec.v * static_cast<double>(s);
        kernel[static_cast<std::size_t>(s + h)] =
            a[static_cast<std::size_t>(s + h)] * std::polar(1.0, angle);
    }

    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        const std::int64_t lo = std::max<std::int64_t>(-h, -t);
        const std::int64_t hi = std::min<std::int64_t>(h, n - 1 - t);
        std::complex<double> acc = 0.0;
        for (std::int64_t s = lo; s <= hi; ++s)
            acc += kernel[static_cast<std::size_t>(s + h)] * xs[static_cast<std::size_t>(t + s)];
        if (lo > -h || hi < h) {
            double wsum = 0.0;  // renormalize the a_s only
            for (std::int64_t s = lo; s <= hi; ++s) wsum += a[static_cast<std::size_t>(s + h)];
            acc /= wsum;
        }
        out[static_cast<std::size_t>(t)] = acc;
    }

    ComplexSeries z;
    z.start = x.start();
    z.values = std::move(out);
    z.filter = spec;
    z.valid = ValidRange{1 + h, n - h};
    z.edge = edge;
    return z;
}

PCComponent reconstruct_component(const ComplexSeries& z, double v, int period) {
    if (v != z.filter.v)
        throw std::invalid_argument("reconstruction frequency differs from the filter's");
    if (period < 1) throw std::invalid_argument("period must be positive");
    PCComponent c;
    c.start = z.start;
    c.values.resize(z.values.size());
    const double scale = v > 0.0 ? 2.0 : 1.0;
    for (std::size_t i = 0; i < z.values.size(); ++i)
        c.values[i] = scale * z.values[i].real();
    c.frequency = v;
    c.period = period;
    c.filter = z.filter;
    c.valid = z.valid;
    c.edge = z.edge;
    return c;
}

int default_window(int period, int multiple) {
    if (period < 1 || multiple < 1)
        throw std::invalid_argument("period and multiple must be positive");
    std::int64_t q = static_cast<std::int64_t>(period) * multiple;
    if (q % 2 == 0) ++q;
    if (q > kMaxKernelLength) throw std::invalid_argument("window too large");
    return static_cast<int>(q);
}

int default_window_for_period(int period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    // aim for about two years of daily steps
    int multiple = static_cast<int>(std::llround(730.0 / period));
    if (multiple < 1) multiple = 1;
    return default_window(period, multiple);
}

double window_frequency_deviation(int m, double v) {
    double mv = static_cast<double>(m) * v;
    return std::fabs(mv - std::round(mv));
}

void export_component_csv(const PCComponent& c, std::ostream& out) {
    out << "t,date,value,valid\n";
    char buf[40];
    for (std::int64_t t = 1; t <= c.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%.17g", c.values[static_cast<std::size_t>(t - 1)]);
        bool valid = t >= c.valid.first_t && t <= c.valid.last_t;
        out << t << ',' << format_date(add_days(c.start, t - 1)) << ',' << buf << ','
            << (valid ? 1 : 0) << '\n';
    }
}

void write_component_csv(const PCComponent& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    export_component_csv(c, out);
    if (!out) throw Error("write failed: " + path);
}

double parse_frequency(std::string_view text) {
    auto parse_number = [](std::string_view s) {
        double out = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("invalid frequency '" + std::string(s) + "'");
        return out;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_number(text);
    double num = parse_number(text.substr(0, slash));
    double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("frequency denominator is zero");
    return num / den;
}

}  // namespace vbpbb
