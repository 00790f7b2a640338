#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "vbpbb/series.hpp"

namespace vbpbb {

// Iterated moving-average filter: window m (odd), iterations k, center
// frequency v in cycles per step. v = 0 is the plain low-pass case.
struct FilterSpec {
    int m = 1;
    int k = 1;
    double v = 0.0;

    // Half-width of the full impulse response, h = k(m-1)/2.
    std::int64_t half_width() const { return static_cast<std::int64_t>(k) * (m - 1) / 2; }

    void validate() const;  // throws std::invalid_argument
};

// What to do where the window would run past the series ends: rescale the
// available weights to sum 1, or keep full-support positions only.
enum class EdgePolicy { Renormalize, Trim };

EdgePolicy parse_edge_policy(std::string_view name);
std::string_view edge_policy_name(EdgePolicy p);

// 1-based inclusive index range; empty when first_t > last_t.
struct ValidRange {
    std::int64_t first_t = 1;
    std::int64_t last_t = 0;
    bool empty() const { return first_t > last_t; }
    std::int64_t length() const { return empty() ? 0 : last_t - first_t + 1; }
};

struct FilterResult {
    RegularSeries series;
    ValidRange valid;        // where the full window fit
    EdgePolicy edge = EdgePolicy::Renormalize;
};

struct ComplexSeries {
    Date start;
    std::vector<std::complex<double>> values;
    FilterSpec filter;
    ValidRange valid;
    EdgePolicy edge = EdgePolicy::Renormalize;
};

// Periodically correlated component on the real axis, carrying the metadata
// needed for folding and block resampling.
struct PCComponent {
    Date start;
    std::vector<double> values;
    double frequency = 0.0;
    int period = 1;  // nominal fold/block period in steps
    FilterSpec filter;
    ValidRange valid;
    EdgePolicy edge = EdgePolicy::Renormalize;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// Weights of the k-fold iterated length-m moving average: the coefficients of
// (1 + z + ... + z^(m-1))^k scaled by m^-k. Length k(m-1)+1, symmetric,
// nonnegative, sums to 1.
std::vector<double> kz_coefficients(int m, int k);

FilterResult kz_filter(const RegularSeries& x, int m, int k,
                       EdgePolicy edge = EdgePolicy::Renormalize);

// Bandpass transform: Z(t) = sum_s a_s X(t+s) e^{-i 2 pi v s}. Renormalize
// rescales the a_s only; the complex exponential is untouched.
ComplexSeries kzft_filter(const RegularSeries& x, const FilterSpec& spec,
                          EdgePolicy edge = EdgePolicy::Renormalize);

// Back to the real axis: 2 Re(Z) for v > 0, Re(Z) for v = 0. `v` must match
// the frequency Z was filtered at; `period` becomes the component's fold and
// block period.
PCComponent reconstruct_component(const ComplexSeries& z, double v, int period);

// Smallest odd integer >= multiple * period.
int default_window(int period, int multiple);

// Window covering roughly two years of daily steps: multiple = round(730/p).
int default_window_for_period(int period);

// |m*v - nearest integer|; nonzero means the window does not hold a whole
// number of cycles and DC leaks through.
double window_frequency_deviation(int m, double v);

// Accepts "a/b" fractions or plain decimals; throws std::invalid_argument.
double parse_frequency(std::string_view text);

// `t,date,value,valid` rows, 17 significant digits, valid in {0, 1}.
void export_component_csv(const PCComponent& c, std::ostream& out);
void write_component_csv(const PCComponent& c, const std::string& path);

}  // namespace vbpbb
