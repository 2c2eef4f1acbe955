#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "spurion/errors.hpp"

namespace spurion {

/// Transformation applied to a series; a series keeps the full chain.
enum class TransformTag {
    Level,
    Log,
    FirstDifference,
    GrowthRate,
};

std::string to_string(TransformTag tag);

/// An annual (or pseudo-annual) sequence of finite real observations.
///
/// Index values are plain integers: observation i belongs to index year
/// start_index + i. Gaps and non-finite values are construction errors,
/// never filled.
struct TimeSeries {
    std::string label;
    int start_index = 0;
    Eigen::VectorXd values;
    std::string unit;
    std::string provenance;
    std::vector<TransformTag> transforms;

    Eigen::Index length() const { return values.size(); }
    int end_index() const { return start_index + static_cast<int>(values.size()) - 1; }

    /// Validates length >= 1 and all-finite values; throws Error otherwise.
    static TimeSeries make(std::string label, int start_index, Eigen::VectorXd values,
                           std::string unit = "", std::string provenance = "");
};

/// Reads a `year,value` CSV. Years must be consecutive and ascending,
/// values finite; any violation names the offending line.
TimeSeries ingest_csv(const std::filesystem::path& path);

/// Elementwise natural log. All values must be strictly positive.
TimeSeries log_transform(const TimeSeries& s);

/// x_t - x_{t-1}; output is one shorter and starts one index later.
TimeSeries first_difference(const TimeSeries& s);

/// (x_t - x_{t-1}) / x_{t-1}; requires nonzero values.
TimeSeries growth_rate(const TimeSeries& s);

/// Sub-series covering the intersection of [from, to] with the series range.
TimeSeries restrict_window(const TimeSeries& s, int from, int to);

/// Restricts both series to their common index range (>= 10 overlapping points).
std::pair<TimeSeries, TimeSeries> align_pair(const TimeSeries& a, const TimeSeries& b);

/// Relabels observation k with pseudo-year start_year + k; values unchanged.
TimeSeries fake_annualize(const TimeSeries& s, int start_year);

}  // namespace spurion
