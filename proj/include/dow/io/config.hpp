#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "dow/errors.hpp"

namespace dow {

/// Flat key-value run configuration: one `[experiment]` section header, then
/// `key = value` lines; `#` starts a comment. Exactly one section per file.
class RunConfig {
public:
    static RunConfig parse_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path.string());
        return parse_stream(in, path.string());
    }

    static RunConfig parse_stream(std::istream& in, const std::string& origin = "<stream>") {
        RunConfig cfg;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            const std::string t = trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": malformed section header");
                if (!cfg.section_.empty())
                    throw ConfigError(origin + ": more than one experiment section");
                cfg.section_ = trim(t.substr(1, t.size() - 2));
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": empty key or value");
            if (cfg.values_.count(key))
                throw ConfigError(origin + ": duplicate key '" + key + "'");
            cfg.values_[key] = value;
        }
        if (cfg.section_.empty())
            throw ConfigError(origin + ": missing [experiment] section header");
        return cfg;
    }

    const std::string& section() const { return section_; }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::string require_string(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : to_double(key, it->second);
    }

    double require_double(const std::string& key) const {
        return to_double(key, require_string(key));
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoull(it->second);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': not an unsigned integer: " + it->second);
        }
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': not a number: " + v);
        }
    }

    std::string section_;
    std::map<std::string, std::string> values_;
};

}  // namespace dow
