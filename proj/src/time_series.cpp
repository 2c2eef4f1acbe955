#include "spurion/time_series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace spurion {

namespace {

std::string wrap_unit(const std::string& op, const std::string& unit) {
    if (unit.empty()) return op;
    return op + "(" + unit + ")";
}

// Locale-independent parse of a full token; returns false on trailing junk.
bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& tok, int& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

std::string to_string(TransformTag tag) {
    switch (tag) {
        case TransformTag::Level: return "level";
        case TransformTag::Log: return "ln";
        case TransformTag::FirstDifference: return "diff";
        case TransformTag::GrowthRate: return "growth";
    }
    return "?";
}

TimeSeries TimeSeries::make(std::string label, int start_index, Eigen::VectorXd values,
                            std::string unit, std::string provenance) {
    if (values.size() < 1) throw_usage("series '" + label + "': length must be >= 1");
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw_usage("series '" + label + "': non-finite value at index " +
                        std::to_string(start_index + static_cast<int>(i)));
    }
    TimeSeries s;
    s.label = std::move(label);
    s.start_index = start_index;
    s.values = std::move(values);
    s.unit = std::move(unit);
    s.provenance = std::move(provenance);
    return s;
}

TimeSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw_usage("cannot open dataset file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw_usage(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
    if (line != "year,value")
        throw_usage(path.string() + ": line 1: header must be exactly 'year,value'");

    std::vector<double> vals;
    int start_year = 0;
    int prev_year = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw_usage(path.string() + ": line " + std::to_string(lineno) + ": expected 'year,value'");
        int year = 0;
        double value = 0.0;
        if (!parse_int(line.substr(0, comma), year))
            throw_usage(path.string() + ": line " + std::to_string(lineno) + ": unparseable year");
        if (!parse_double(line.substr(comma + 1), value) || !std::isfinite(value))
            throw_usage(path.string() + ": line " + std::to_string(lineno) +
                        ": unparseable or non-finite value");
        if (vals.empty()) {
            start_year = year;
        } else if (year != prev_year + 1) {
            if (year == prev_year + 2)
                throw_usage(path.string() + ": gap at " + std::to_string(prev_year + 1) +
                            " (line " + std::to_string(lineno) + ")");
            throw_usage(path.string() + ": line " + std::to_string(lineno) +
                        ": years must be consecutive (got " + std::to_string(year) + " after " +
                        std::to_string(prev_year) + ")");
        }
        prev_year = year;
        vals.push_back(value);
    }
    if (vals.empty()) throw_usage(path.string() + ": no data rows");

    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    TimeSeries s = TimeSeries::make(path.stem().string(), start_year, std::move(v));
    s.provenance = path.string();
    return s;
}

TimeSeries log_transform(const TimeSeries& s) {
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
        if (s.values[i] <= 0.0)
            throw_usage("log_transform('" + s.label + "'): non-positive value at index " +
                        std::to_string(s.start_index + static_cast<int>(i)));
    }
    TimeSeries out = s;
    out.values = s.values.array().log().matrix();
    out.label = "ln " + s.label;
    out.unit = wrap_unit("ln", s.unit);
    out.transforms.push_back(TransformTag::Log);
    return out;
}

TimeSeries first_difference(const TimeSeries& s) {
    const Eigen::Index n = s.values.size();
    if (n < 2) throw_usage("first_difference('" + s.label + "'): needs at least 2 observations");
    TimeSeries out = s;
    out.values = s.values.tail(n - 1) - s.values.head(n - 1);
    out.start_index = s.start_index + 1;
    out.label = "diff " + s.label;
    out.unit = wrap_unit("diff", s.unit);
    out.transforms.push_back(TransformTag::FirstDifference);
    return out;
}

TimeSeries growth_rate(const TimeSeries& s) {
    const Eigen::Index n = s.values.size();
    if (n < 2) throw_usage("growth_rate('" + s.label + "'): needs at least 2 observations");
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (s.values[i] == 0.0)
            throw_usage("growth_rate('" + s.label + "'): zero value at index " +
                        std::to_string(s.start_index + static_cast<int>(i)));
    }
    TimeSeries out = s;
    out.values = ((s.values.tail(n - 1) - s.values.head(n - 1)).array() /
                  s.values.head(n - 1).array()).matrix();
    out.start_index = s.start_index + 1;
    out.label = "growth " + s.label;
    out.unit = wrap_unit("growth", s.unit);
    out.transforms.push_back(TransformTag::GrowthRate);
    return out;
}

TimeSeries restrict_window(const TimeSeries& s, int from, int to) {
    if (from > to) throw_usage("restrict_window: from > to");
    const int lo = std::max(from, s.start_index);
    const int hi = std::min(to, s.end_index());
    if (lo > hi)
        throw_usage("restrict_window('" + s.label + "'): window " + std::to_string(from) + "-" +
                    std::to_string(to) + " does not intersect " + std::to_string(s.start_index) +
                    "-" + std::to_string(s.end_index()));
    TimeSeries out = s;
    out.start_index = lo;
    out.values = s.values.segment(lo - s.start_index, hi - lo + 1);
    return out;
}

std::pair<TimeSeries, TimeSeries> align_pair(const TimeSeries& a, const TimeSeries& b) {
    const int lo = std::max(a.start_index, b.start_index);
    const int hi = std::min(a.end_index(), b.end_index());
    const int overlap = hi - lo + 1;
    if (overlap < 10)
        throw_usage("align_pair('" + a.label + "', '" + b.label + "'): only " +
                    std::to_string(std::max(overlap, 0)) + " overlapping points (need >= 10)");
    return {restrict_window(a, lo, hi), restrict_window(b, lo, hi)};
}

TimeSeries fake_annualize(const TimeSeries& s, int start_year) {
    TimeSeries out = s;
    out.start_index = start_year;
    if (out.provenance.find("fake-annualized") == std::string::npos) {
        out.provenance = out.provenance.empty() ? "fake-annualized"
                                                : out.provenance + " | fake-annualized";
    }
    return out;
}

}  // namespace spurion
