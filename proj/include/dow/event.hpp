#pragma once

#include "dow/grid.hpp"

namespace dow {

/// A localized energy transfer into the wavefield: when it happens, where it
/// is centered, the spatial scale of its energy-density bump, and the kinetic
/// energy it deposits.
struct InteractionEvent {
    double t = 0.0;
    Vec2 center{0.0, 0.0};
    double extent = 0.0;
    double energy = 0.0;
};

}  // namespace dow
