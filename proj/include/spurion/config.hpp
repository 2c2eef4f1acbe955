#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace spurion {

/// Flat INI-style configuration: `[section]` headers plus `key = value`
/// lines; `#` and `;` start comments. Keys are stored as "section.key".
class KeyValueConfig {
  public:
    KeyValueConfig() = default;
    static KeyValueConfig parse_file(const std::filesystem::path& path);
    static KeyValueConfig parse_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace spurion
