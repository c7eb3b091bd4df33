#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/units.hpp"

namespace dow {

/// Minimum localizing energy transfer E = hbar^2/(8 m dx^2) for each width,
/// reported in electronvolts. Widths are in the unit system's length unit
/// (meters for SI).
inline std::vector<std::pair<double, double>> localization_table(
    const UnitSystem& units, std::span<const double> widths) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(widths.size());
    for (double w : widths)
        rows.emplace_back(w, collapse_threshold(w, units) / constants::electron_volt);
    return rows;
}

/// The stock four rows: 1, 0.1, 0.01 and 0.001 nm.
inline std::vector<double> default_localization_widths_m() {
    return {1e-9, 1e-10, 1e-11, 1e-12};
}

}  // namespace dow
