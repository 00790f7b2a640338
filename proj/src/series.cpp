#include "vbpbb/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

namespace vbpbb {

RegularSeries::RegularSeries(Date start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    if (values_.empty()) throw Error("series must hold at least one value");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error("series values must be finite");
}

double RegularSeries::value(std::int64_t t) const {
    if (t < 1 || t > size()) throw Error("series index out of range");
    return values_[static_cast<std::size_t>(t - 1)];
}

int phase_of(std::int64_t t, int period) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    if (t < 1) throw std::invalid_argument("index must be >= 1");
    return static_cast<int>((t - 1) % period);
}

double mean(std::span<const double> values) {
    if (values.empty()) throw Error("mean of empty range");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

RegularSeries center(const RegularSeries& s) {
    double m = mean(s.values());
    std::vector<double> out(s.values());
    for (double& v : out) v -= m;
    return RegularSeries(s.start(), std::move(out));
}

namespace {

void strip_eol(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
}

double parse_value(const std::string& field, long row) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw CsvError("non-numeric value at row " + std::to_string(row), row);
    if (!std::isfinite(v))
        throw CsvError("non-finite value at row " + std::to_string(row), row);
    return v;
}

}  // namespace

RegularSeries ingest_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError("empty file", 0);
    strip_eol(line);
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);  // UTF-8 BOM
    if (line != "date,value")
        throw CsvError("expected header 'date,value', got '" + line + "'", 0);

    std::vector<double> values;
    Date start{};
    std::int64_t prev_day = 0;
    long row = 0;
    while (std::getline(in, line)) {
        strip_eol(line);
        ++row;
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw CsvError("malformed row " + std::to_string(row) +
                               ": expected 'date,value'",
                           row);
        Date d{};
        try {
            d = parse_date(std::string_view(line).substr(0, comma));
        } catch (const std::invalid_argument& e) {
            throw CsvError("invalid date at row " + std::to_string(row) + ": " + e.what(),
                           row);
        }
        double v = parse_value(line.substr(comma + 1), row);
        std::int64_t day = days_from_civil(d);
        if (row == 1) {
            start = d;
        } else if (day == prev_day) {
            throw CsvError("duplicate date at row " + std::to_string(row), row);
        } else if (day != prev_day + 1) {
            throw CsvError("date gap at row " + std::to_string(row), row);
        }
        prev_day = day;
        values.push_back(v);
    }
    if (values.empty()) throw CsvError("empty file: header but no data rows", 0);
    return RegularSeries(start, std::move(values));
}

RegularSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return ingest_csv(in);
    } catch (const CsvError& e) {
        throw CsvError(path + ": " + e.what(), e.row);
    }
}

void export_csv(const RegularSeries& s, std::ostream& out) {
    out << "date,value\n";
    char buf[40];
    for (std::int64_t t = 1; t <= s.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%.17g", s.value(t));
        out << format_date(s.date_at(t)) << ',' << buf << '\n';
    }
}

void write_series_csv(const RegularSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    export_csv(s, out);
    if (!out) throw Error("write failed: " + path);
}

}  // namespace vbpbb
