#pragma once

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "dow/errors.hpp"
#include "dow/grid.hpp"
#include "dow/units.hpp"

namespace dow {

struct FreePotential {};

/// V = 1/2 * stiffness * |x - center|^2
struct HarmonicPotential {
    double stiffness = 1.0;
    Vec2 center{0.0, 0.0};
};

/// Opening in the barrier along axis 1 (2D only).
struct Slit {
    double center = 0.0;
    double width = 0.0;
};

/// Finite-height wall occupying a slab perpendicular to axis 0, with optional
/// slit openings along axis 1. Height must stay compatible with the phase-wrap
/// guard of the chosen time step.
struct BarrierPotential {
    double position = 0.0;
    double thickness = 0.1;
    double height = 500.0;
    std::vector<Slit> slits;
};

struct SampledPotential {
    std::vector<double> values;
};

using Potential = std::variant<FreePotential, HarmonicPotential, BarrierPotential,
                               SampledPotential>;

inline void validate_potential(const Potential& v, const GridSpec& g) {
    if (const auto* b = std::get_if<BarrierPotential>(&v)) {
        if (!(b->thickness > 0.0)) throw ConfigError("barrier: thickness must be > 0");
        if (!(b->height > 0.0)) throw ConfigError("barrier: height must be > 0");
        if (!b->slits.empty() && g.dim != 2)
            throw ConfigError("barrier: slits require a 2D grid");
        std::vector<Slit> s = b->slits;
        std::sort(s.begin(), s.end(),
                  [](const Slit& a, const Slit& c) { return a.center < c.center; });
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!(s[i].width > 0.0)) throw ConfigError("barrier: slit width must be > 0");
            if (i > 0 && s[i - 1].center + 0.5 * s[i - 1].width >
                             s[i].center - 0.5 * s[i].width)
                throw ConfigError("barrier: slits overlap");
        }
    } else if (const auto* s = std::get_if<SampledPotential>(&v)) {
        if (s->values.size() != g.size())
            throw ConfigError("sampled potential: length does not match grid");
        for (double x : s->values)
            if (!std::isfinite(x)) throw ConfigError("sampled potential: non-finite value");
    }
}

/// Evaluate the potential on every grid cell.
inline std::vector<double> sample_potential(const Potential& v, const GridSpec& g) {
    validate_potential(v, g);
    std::vector<double> out(g.size(), 0.0);
    if (std::holds_alternative<FreePotential>(v)) return out;
    if (const auto* h = std::get_if<HarmonicPotential>(&v)) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Vec2 x = g.position(i);
            double r2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                const double d = x[a] - h->center[a];
                r2 += d * d;
            }
            out[i] = 0.5 * h->stiffness * r2;
        }
        return out;
    }
    if (const auto* b = std::get_if<BarrierPotential>(&v)) {
        const double lo = b->position - 0.5 * b->thickness;
        const double hi = b->position + 0.5 * b->thickness;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Vec2 x = g.position(i);
            if (x[0] < lo || x[0] > hi) continue;
            bool open = false;
            for (const Slit& s : b->slits)
                if (std::abs(x[1] - s.center) <= 0.5 * s.width) {
                    open = true;
                    break;
                }
            if (!open) out[i] = b->height;
        }
        return out;
    }
    out = std::get<SampledPotential>(v).values;
    return out;
}

inline double max_abs_potential(const Potential& v, const GridSpec& g) {
    if (std::holds_alternative<FreePotential>(v)) return 0.0;
    const std::vector<double> vals = sample_potential(v, g);
    double m = 0.0;
    for (double x : vals) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace dow
