#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/rng.hpp"
#include "dow/units.hpp"
#include "dow/wavefield.hpp"

namespace dow {

enum class OperatorShape { DeltaLike, Gaussian };

/// Localization operator applied at the sampled collapse site: either a
/// single-cell projector or a sharply peaked Gaussian of width sigma_c.
struct CollapseOperator {
    OperatorShape shape = OperatorShape::Gaussian;
    double width = 0.0;  // sigma_c; ignored for DeltaLike
};

enum class CollapseCriterion { SimpleThreshold, IndicatorIntegral };

struct CollapsePolicy {
    CollapseCriterion criterion = CollapseCriterion::SimpleThreshold;
    UnitSystem units = UnitSystem::natural();
    double epsilon_c = 0.0;             // IndicatorIntegral only
    double deformation_constant = 0.0;  // D, IndicatorIntegral only
    CollapseOperator op{};

    void validate() const {
        units.validate();
        if (criterion == CollapseCriterion::IndicatorIntegral &&
            (!(epsilon_c > 0.0) || !(deformation_constant > 0.0)))
            throw ConfigError(
                "CollapsePolicy: indicator criterion needs epsilon_c > 0 and D > 0");
    }
};

/// Minimum kinetic energy that localizes a field of width delta_x:
/// hbar^2 / (8 m delta_x^2). Monotone decreasing in delta_x.
inline double collapse_threshold(double delta_x, const UnitSystem& units) {
    if (!(delta_x > 0.0))
        throw NonpositiveWidth("collapse_threshold: delta_x must be > 0");
    return units.hbar * units.hbar / (8.0 * units.mass * delta_x * delta_x);
}

/// Categorical sampler over grid cells with probabilities |psi_i|^2 dV.
/// One uniform draw per sample; identical to repeated born_sample calls on
/// the same rng stream.
class BornSampler {
public:
    explicit BornSampler(const Wavefield& psi) : grid_(psi.grid) {
        cdf_.resize(psi.amps.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < psi.amps.size(); ++i) {
            acc += std::norm(psi.amps[i]);
            cdf_[i] = acc;
        }
        if (!(acc > 0.0)) throw ZeroField("born sampler: zero field");
        const double inv = 1.0 / acc;
        for (double& c : cdf_) c *= inv;
        cdf_.back() = 1.0;
    }

    std::size_t sample_cell(SeededRng& rng) const {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::size_t>(it - cdf_.begin());
    }

    Vec2 sample(SeededRng& rng) const { return grid_.position(sample_cell(rng)); }

    const GridSpec& grid() const { return grid_; }

private:
    GridSpec grid_;
    std::vector<double> cdf_;
};

/// Draw a collapse location: a grid cell center sampled with probability
/// |psi_i|^2 dV. Deterministic given the rng seed and stream position.
inline Vec2 born_sample(const Wavefield& psi, SeededRng& rng) {
    return BornSampler(psi).sample(rng);
}

/// Apply the localization operator at x0 and renormalize. Gaussian shape
/// multiplies by exp(-(x-x0)^2/(4 sigma_c^2)); DeltaLike keeps only the cell
/// nearest x0.
inline Wavefield apply_collapse(const Wavefield& psi, const Vec2& x0,
                                const CollapseOperator& op) {
    const GridSpec& g = psi.grid;
    Wavefield out = psi;
    if (op.shape == OperatorShape::DeltaLike) {
        const std::size_t keep = g.nearest_index(x0);
        if (std::norm(psi.amps[keep]) == 0.0)
            throw ZeroField("apply_collapse: operator annihilates the field");
        std::fill(out.amps.begin(), out.amps.end(), cplx{0.0, 0.0});
        out.amps[keep] = psi.amps[keep];
        return normalize(out);
    }
    if (!(op.width >= g.dx[0]) || (g.dim == 2 && !(op.width >= g.dx[1])))
        throw ConfigError("apply_collapse: Gaussian operator width must be >= dx");
    const double inv4s2 = 1.0 / (4.0 * op.width * op.width);
    for (std::size_t i = 0; i < out.amps.size(); ++i) {
        const Vec2 x = g.position(i);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double d = x[a] - x0[a];
            r2 += d * d;
        }
        out.amps[i] *= std::exp(-r2 * inv4s2);
    }
    const double n2 = norm_squared(out);
    if (!(n2 > 0.0))
        throw ZeroField("apply_collapse: operator annihilates the field");
    const double s = 1.0 / std::sqrt(n2);
    for (cplx& a : out.amps) a *= s;
    return out;
}

/// Energy-density bump deposited by an event: a normalized Gaussian of width
/// event.extent carrying total energy event.energy.
inline double event_energy_density(const InteractionEvent& ev, const Vec2& x, int dim) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double d = x[a] - ev.center[a];
        r2 += d * d;
    }
    const double s2 = ev.extent * ev.extent;
    double norm = std::sqrt(2.0 * std::numbers::pi) * ev.extent;
    if (dim == 2) norm = 2.0 * std::numbers::pi * s2;
    return ev.energy * std::exp(-0.5 * r2 / s2) / norm;
}

/// Integral of |grad psi|^2 (periodic central differences) over the cells
/// where the event's energy density exceeds epsilon_c.
inline double indicator_integral(const Wavefield& psi, const InteractionEvent& ev,
                                 const CollapsePolicy& policy) {
    policy.validate();
    const GridSpec& g = psi.grid;
    if (!(ev.extent >= g.dx[0]))
        throw ConfigError("indicator_integral: event extent must be >= dx");
    double acc = 0.0;
    const std::size_t nx = g.n[0], ny = g.n[1];
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t i = g.index(ix, iy);
            const Vec2 x = g.position(i);
            if (!(event_energy_density(ev, x, g.dim) > policy.epsilon_c)) continue;
            const std::size_t xp = g.index((ix + 1) % nx, iy);
            const std::size_t xm = g.index((ix + nx - 1) % nx, iy);
            const cplx gx = (psi.amps[xp] - psi.amps[xm]) / (2.0 * g.dx[0]);
            double grad2 = std::norm(gx);
            if (g.dim == 2) {
                const std::size_t yp = g.index(ix, (iy + 1) % ny);
                const std::size_t ym = g.index(ix, (iy + ny - 1) % ny);
                const cplx gy = (psi.amps[yp] - psi.amps[ym]) / (2.0 * g.dx[1]);
                grad2 += std::norm(gy);
            }
            acc += grad2;
        }
    }
    return acc * g.cell_volume();
}

/// Does this event collapse the field? SimpleThreshold compares the event
/// energy against the live width's threshold; IndicatorIntegral compares the
/// gradient integral against the global deformation constant D.
inline bool check_collapse(const Wavefield& psi, const InteractionEvent& ev,
                           const CollapsePolicy& policy) {
    policy.validate();
    if (policy.criterion == CollapseCriterion::SimpleThreshold) {
        const double width = effective_width(psi);
        return ev.energy >= collapse_threshold(width, policy.units);
    }
    return indicator_integral(psi, ev, policy) > policy.deformation_constant;
}

}  // namespace dow
