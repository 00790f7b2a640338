#include "vbpbb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace vbpbb {

Periodogram periodogram(std::span<const double> values) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    if (n < 2) throw Error("periodogram requires at least two observations");

    double m = mean(values);
    std::vector<double> x(values.begin(), values.end());
    for (double& v : x) v -= m;

    // exact phasor table: e^{-i 2 pi q / n} for q = 0..n-1; bin j uses
    // table[(j*t) mod n], so no incremental drift
    std::vector<std::complex<double>> table(static_cast<std::size_t>(n));
    for (std::int64_t q = 0; q < n; ++q)
        table[static_cast<std::size_t>(q)] =
            std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(q) /
                                static_cast<double>(n));

    const std::int64_t nbins = n / 2;
    Periodogram pg;
    pg.frequencies.resize(static_cast<std::size_t>(nbins));
    pg.powers.resize(static_cast<std::size_t>(nbins));
    for (std::int64_t j = 1; j <= nbins; ++j) {
        std::complex<double> acc = 0.0;
        std::int64_t q = 0;
        for (std::int64_t t = 1; t <= n; ++t) {
            q += j;
            if (q >= n) q -= n;  // j <= n/2, so one subtraction is enough
            acc += x[static_cast<std::size_t>(t - 1)] * table[static_cast<std::size_t>(q)];
        }
        pg.frequencies[static_cast<std::size_t>(j - 1)] =
            static_cast<double>(j) / static_cast<double>(n);
        pg.powers[static_cast<std::size_t>(j - 1)] = std::norm(acc) / static_cast<double>(n);
    }
    return pg;
}

Periodogram periodogram(const RegularSeries& s) { return periodogram(s.values()); }

std::vector<Peak> top_peaks(const Periodogram& pg, std::size_t count,
                            double min_separation) {
    const auto& p = pg.powers;
    const std::size_t n = p.size();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        bool left_ok = (i == 0) || p[i] > p[i - 1];
        bool right_ok = (i + 1 == n) || p[i] > p[i + 1];
        if (n == 1) left_ok = right_ok = true;
        if (left_ok && right_ok) candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return pg.frequencies[a] < pg.frequencies[b];
    });
    std::vector<Peak> out;
    for (std::size_t i : candidates) {
        if (out.size() >= count) break;
        bool suppressed = false;
        for (const Peak& kept : out)
            if (std::fabs(pg.frequencies[i] - kept.frequency) < min_separation)
                suppressed = true;
        if (!suppressed) out.push_back({pg.frequencies[i], p[i]});
    }
    return out;
}

void write_periodogram_csv(const Periodogram& pg, std::ostream& out) {
    out << "frequency,period,power\n";
    char buf[128];
    for (std::size_t i = 0; i < pg.frequencies.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", pg.frequencies[i],
                      1.0 / pg.frequencies[i], pg.powers[i]);
        out << buf << '\n';
    }
}

}  // namespace vbpbb
