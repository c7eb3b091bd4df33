#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/units.hpp"
#include "dow/wavefield.hpp"

namespace dow {

enum class AccumulationMode { Additive, Multiplicative };

/// Sub-threshold deformation law parameters. gamma >= 1 sets the curvature of
/// the width response (linear at gamma = 1). In additive mode each event
/// subtracts delta_i = additive_map(E_i); the default map matches the
/// multiplicative single-event response at the sequence's initial width.
struct DeformationParams {
    double gamma = 1.0;
    AccumulationMode mode = AccumulationMode::Multiplicative;
    std::function<double(double)> additive_map;  // optional, Additive mode only

    void validate() const {
        if (!(gamma >= 1.0)) throw ConfigError("DeformationParams: gamma must be >= 1");
    }
};

/// Width after a single sub-threshold transfer:
/// delta_x(E) = delta_x0 * (1 - (E / E_collapse(delta_x0))^gamma).
inline double deform_width(double delta_x0, double e, const DeformationParams& params,
                           const UnitSystem& units) {
    params.validate();
    if (!(e >= 0.0)) throw ConfigError("deform_width: energy must be >= 0");
    const double e_c = collapse_threshold(delta_x0, units);
    if (e >= e_c)
        throw EnergyAtOrAboveThreshold(
            "deform_width: energy at or above the collapse threshold");
    return delta_x0 * (1.0 - std::pow(e / e_c, params.gamma));
}

struct DeformSequenceResult {
    double final_width = 0.0;
    std::optional<std::size_t> collapse_index;  // first event meeting its threshold
    std::vector<double> widths;                 // width after each surviving event
};

/// Fold a train of transfers through the deformation law. Each event is
/// checked against the threshold of the current width; the first one that
/// meets or exceeds it is reported as the collapse point and the fold stops.
inline DeformSequenceResult deform_sequence(double delta_x0,
                                            std::span<const double> energies,
                                            const DeformationParams& params,
                                            const UnitSystem& units) {
    params.validate();
    if (!(delta_x0 > 0.0))
        throw NonpositiveWidth("deform_sequence: initial width must be > 0");
    std::function<double(double)> add_map = params.additive_map;
    if (params.mode == AccumulationMode::Additive && !add_map) {
        const double e_c0 = collapse_threshold(delta_x0, units);
        const double gamma = params.gamma;
        add_map = [delta_x0, e_c0, gamma](double e) {
            return delta_x0 * std::pow(e / e_c0, gamma);
        };
    }

    DeformSequenceResult res;
    double width = delta_x0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double e = energies[i];
        if (!(e >= 0.0)) throw ConfigError("deform_sequence: energies must be >= 0");
        const double e_c = collapse_threshold(width, units);
        if (e >= e_c) {
            res.collapse_index = i;
            res.final_width = width;
            return res;
        }
        if (params.mode == AccumulationMode::Multiplicative) {
            width *= 1.0 - std::pow(e / e_c, params.gamma);
        } else {
            width -= add_map(e);
            if (width <= 0.0) {
                // accumulated deltas drove the width to zero: that is localization
                res.collapse_index = i;
                res.final_width = 0.0;
                return res;
            }
        }
        res.widths.push_back(width);
    }
    res.final_width = width;
    return res;
}

/// Realize a sub-threshold transfer on the field: multiply by a Gaussian
/// envelope centered at the interaction site, with the envelope width solved
/// by bisection so the resulting effective width equals the deformation law's
/// target (0.5% tolerance). Phase is untouched; the result is renormalized.
inline Wavefield apply_deformation(const Wavefield& psi, const InteractionEvent& ev,
                                   const DeformationParams& params,
                                   const UnitSystem& units) {
    params.validate();
    if (ev.energy == 0.0) return psi;
    const double width0 = effective_width(psi);
    const double target = deform_width(width0, ev.energy, params, units);
    if (target > width0)
        throw TargetUnreachable("apply_deformation: target exceeds current spread");
    if (target == width0) return psi;

    const GridSpec& g = psi.grid;
    const auto enveloped = [&](double w) {
        Wavefield out = psi;
        const double inv4w2 = 1.0 / (4.0 * w * w);
        for (std::size_t i = 0; i < out.amps.size(); ++i) {
            const Vec2 x = g.position(i);
            double r2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                const double d = x[a] - ev.center[a];
                r2 += d * d;
            }
            out.amps[i] *= std::exp(-r2 * inv4w2);
        }
        const double n2 = norm_squared(out);
        if (!(n2 > 0.0)) throw ZeroField("apply_deformation: envelope annihilates field");
        const double s = 1.0 / std::sqrt(n2);
        for (cplx& a : out.amps) a *= s;
        return out;
    };

    // bracket: wide envelope leaves the field nearly unchanged, narrow one
    // compresses it to a cell
    double lo = 0.25 * std::min(g.dx[0], g.dim == 2 ? g.dx[1] : g.dx[0]);
    double hi = 16.0 * width0;
    while (effective_width(enveloped(hi)) < target && hi < 1e6 * width0) hi *= 4.0;
    if (effective_width(enveloped(hi)) < target)
        throw TargetUnreachable("apply_deformation: cannot bracket envelope width");

    Wavefield best = psi;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        best = enveloped(mid);
        const double got = effective_width(best);
        if (std::abs(got - target) <= 0.005 * target) return best;
        if (got > target)
            hi = mid;
        else
            lo = mid;
    }
    return best;
}

}  // namespace dow
