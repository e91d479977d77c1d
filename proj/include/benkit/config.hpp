#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace benkit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain-text key-value configuration with [section] headers, one
// `key = value` per line, '#' comments, and comma-separated lists.
class Config {
public:
    static Config parse_file(const std::filesystem::path& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;

    // require_* throw ConfigError naming the missing field.
    std::string require_str(const std::string& section, const std::string& key) const;
    double require_double(const std::string& section, const std::string& key) const;
    uint64_t require_u64(const std::string& section, const std::string& key) const;

    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    uint64_t get_u64(const std::string& section, const std::string& key,
                     uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;

    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key) const;
    std::vector<std::string> get_str_list(const std::string& section,
                                          const std::string& key) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        sections_[section][key] = value;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace benkit
