#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spurion/time_series.hpp"

namespace spurion {

/// A directory of `year,value` CSV files addressed by filename stem.
class DatasetRegistry {
  public:
    explicit DatasetRegistry(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    bool has(const std::string& label) const;
    /// Loads `<dir>/<label>.csv`; the error names the label when missing.
    TimeSeries load(const std::string& label) const;
    std::vector<std::string> list() const;

    /// Resolves the registry directory from --data-dir, the SPURION_DATA_DIR
    /// environment variable, or "./data", in that order.
    static DatasetRegistry resolve(const std::string& cli_dir);

  private:
    std::filesystem::path dir_;
};

}  // namespace spurion
