#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "vbpbb/series.hpp"

namespace vbpbb {

// Raw periodogram of a mean-centered series at Fourier frequencies j/n,
// j = 1..floor(n/2): I(j/n) = |sum_t x(t) e^{-i 2 pi j t / n}|^2 / n.
struct Periodogram {
    std::vector<double> frequencies;
    std::vector<double> powers;
};

Periodogram periodogram(std::span<const double> values);
Periodogram periodogram(const RegularSeries& s);

struct Peak {
    double frequency = 0.0;
    double power = 0.0;
};

// Local maxima ranked by power (ties to the lower frequency); candidates
// closer than min_separation to an already accepted peak are suppressed.
std::vector<Peak> top_peaks(const Periodogram& pg, std::size_t count,
                            double min_separation = 0.0);

// `frequency,period,power` rows; period = 1/frequency.
void write_periodogram_csv(const Periodogram& pg, std::ostream& out);

}  // namespace vbpbb
