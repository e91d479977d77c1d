#include "benkit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "benkit/csv.hpp"

namespace benkit {
namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(const std::string& value) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= value.size()) {
        const size_t pos = value.find(',', start);
        const std::string part =
            trim(pos == std::string::npos ? value.substr(start)
                                          : value.substr(start, pos - start));
        if (!part.empty()) parts.push_back(part);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::require_str(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s != sections_.end()) {
        const auto k = s->second.find(key);
        if (k != s->second.end()) return k->second;
    }
    throw ConfigError("missing required config field: [" + section + "] " + key);
}

double Config::require_double(const std::string& section, const std::string& key) const {
    const std::string v = require_str(section, key);
    try {
        return parse_double(v);
    } catch (const std::invalid_argument&) {
        throw ConfigError("config field [" + section + "] " + key + " is not a number: " + v);
    }
}

uint64_t Config::require_u64(const std::string& section, const std::string& key) const {
    const std::string v = require_str(section, key);
    uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError("config field [" + section + "] " + key +
                          " is not an unsigned integer: " + v);
    }
    return out;
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return has(section, key) ? require_str(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? require_double(section, key) : fallback;
}

uint64_t Config::get_u64(const std::string& section, const std::string& key,
                         uint64_t fallback) const {
    return has(section, key) ? require_u64(section, key) : fallback;
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = require_str(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config field [" + section + "] " + key + " is not a boolean: " + v);
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    std::vector<double> out;
    for (const auto& part : split_commas(require_str(section, key))) {
        try {
            out.push_back(parse_double(part));
        } catch (const std::invalid_argument&) {
            throw ConfigError("config field [" + section + "] " + key +
                              " has a non-numeric entry: " + part);
        }
    }
    if (out.empty()) {
        throw ConfigError("config field [" + section + "] " + key + " is an empty list");
    }
    return out;
}

std::vector<std::string> Config::get_str_list(const std::string& section,
                                              const std::string& key) const {
    return split_commas(require_str(section, key));
}

}  // namespace benkit
