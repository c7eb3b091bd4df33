#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "dow/errors.hpp"

namespace dow {

/// 17 significant digits: lossless for binary64 and byte-stable across runs.
inline std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
        : out_(path) {
        if (!out_) throw ConfigError("cannot open for writing: " + path.string());
        write_row(std::vector<std::string>(header));
    }

    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

}  // namespace dow
