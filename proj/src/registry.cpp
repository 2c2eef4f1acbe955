#include "spurion/registry.hpp"

#include <algorithm>
#include <cstdlib>

namespace spurion {

bool DatasetRegistry::has(const std::string& label) const {
    return std::filesystem::exists(dir_ / (label + ".csv"));
}

TimeSeries DatasetRegistry::load(const std::string& label) const {
    const auto path = dir_ / (label + ".csv");
    if (!std::filesystem::exists(path))
        throw_usage("dataset '" + label + "' not found in registry " + dir_.string());
    TimeSeries s = ingest_csv(path);
    s.label = label;
    return s;
}

std::vector<std::string> DatasetRegistry::list() const {
    std::vector<std::string> out;
    if (!std::filesystem::is_directory(dir_)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir_)) {
        if (e.is_regular_file() && e.path().extension() == ".csv")
            out.push_back(e.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

DatasetRegistry DatasetRegistry::resolve(const std::string& cli_dir) {
    if (!cli_dir.empty()) return DatasetRegistry(cli_dir);
    if (const char* env = std::getenv("SPURION_DATA_DIR"); env && *env)
        return DatasetRegistry(env);
    return DatasetRegistry("data");
}

}  // namespace spurion
