#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <vector>

#include "dow/errors.hpp"
#include "dow/wavefield.hpp"

namespace dow {

/// 8-bit binary portable graymap; values are scaled so the maximum maps to
/// white.
inline void write_pgm(const std::filesystem::path& path, std::size_t width,
                      std::size_t height, std::span<const double> values) {
    if (values.size() != width * height) throw ConfigError("write_pgm: size mismatch");
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    if (!(vmax > 0.0)) vmax = 1.0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path.string());
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<std::uint8_t> row(width);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c)
            row[c] = static_cast<std::uint8_t>(
                std::lround(255.0 * values[r * width + c] / vmax));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(width));
    }
}

/// |psi|^2 heatmap of a 2D field: rows run along axis 0, columns along axis 1.
inline void write_field_pgm(const std::filesystem::path& path, const Wavefield& psi) {
    std::vector<double> dens(psi.amps.size());
    for (std::size_t i = 0; i < psi.amps.size(); ++i) dens[i] = std::norm(psi.amps[i]);
    write_pgm(path, psi.grid.n[1], psi.grid.n[0], dens);
}

}  // namespace dow
