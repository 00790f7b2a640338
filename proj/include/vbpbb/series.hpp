#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbpbb/date.hpp"

namespace vbpbb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV ingestion failure. `row` counts data rows (1-based, header excluded);
// 0 means the problem is not tied to a particular row.
struct CsvError : Error {
    CsvError(const std::string& what, long row_) : Error(what), row(row_) {}
    long row = 0;
};

// Evenly sampled daily series. Index t is 1-based: t = 1 falls on start().
// Values are finite by construction.
class RegularSeries {
public:
    RegularSeries(Date start, std::vector<double> values);

    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    double value(std::int64_t t) const;  // 1-based, range-checked
    Date start() const { return start_; }
    Date date_at(std::int64_t t) const { return add_days(start_, t - 1); }

private:
    Date start_;
    std::vector<double> values_;
};

// Phase of index t under period p: (t - 1) mod p, in 0..p-1.
int phase_of(std::int64_t t, int period);

double mean(std::span<const double> values);

// Series minus its grand mean.
RegularSeries center(const RegularSeries& s);

// Reads `date,value` CSV: strict header, ISO dates, consecutive days.
// Throws CsvError naming the offending data row.
RegularSeries ingest_csv(std::istream& in);
RegularSeries read_series_csv(const std::string& path);

// Writes `date,value` with 17 significant digits (round-trips exactly).
void export_csv(const RegularSeries& s, std::ostream& out);
void write_series_csv(const RegularSeries& s, const std::string& path);

}  // namespace vbpbb
