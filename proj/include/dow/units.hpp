#pragma once

#include <string>

#include "dow/errors.hpp"

namespace dow {

namespace constants {
// CODATA / exact SI values
inline constexpr double hbar_si = 1.054571817e-34;       // J s
inline constexpr double electron_mass_si = 9.1093837015e-31;  // kg
inline constexpr double electron_volt = 1.602176634e-19; // J
}  // namespace constants

/// Action scale and particle mass for a run. Two stock systems are used
/// throughout: "natural" (hbar = m = 1) and "SI-electron" (SI units, electron
/// rest mass).
struct UnitSystem {
    double hbar = 1.0;
    double mass = 1.0;
    std::string label = "natural";

    static UnitSystem natural() { return {1.0, 1.0, "natural"}; }

    static UnitSystem si_electron() {
        return {constants::hbar_si, constants::electron_mass_si, "SI-electron"};
    }

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw ConfigError("UnitSystem: hbar and mass must be positive");
    }
};

}  // namespace dow
