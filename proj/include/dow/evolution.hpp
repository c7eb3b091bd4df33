#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dow/errors.hpp"
#include "dow/fft.hpp"
#include "dow/potential.hpp"
#include "dow/units.hpp"
#include "dow/wavefield.hpp"

namespace dow {

struct EvolutionConfig {
    double dt = 1e-3;
    std::size_t n_steps = 0;
    UnitSystem units = UnitSystem::natural();
};

/// Largest potential phase per step allowed before the step is rejected as
/// aliased (phase-wrap guard).
inline constexpr double kPhaseWrapLimit = 0.5;

/// Symmetric split-operator propagator: half potential phase, full kinetic
/// phase in momentum space, half potential phase. Exactly norm-preserving and
/// second order in dt. Phase tables are precomputed per (grid, potential, dt),
/// so stepping costs two grid FFTs plus pointwise products.
///
/// A Propagator instance carries scratch buffers: share one per thread, not
/// across threads.
class Propagator {
public:
    Propagator(const GridSpec& grid, const Potential& v, double dt,
               const UnitSystem& units)
        : grid_(grid), dt_(dt), plan_x_(grid.n[0]), plan_y_(grid.dim == 2 ? grid.n[1] : 8) {
        units.validate();
        const double vmax = max_abs_potential(v, grid);
        if (!(std::abs(dt) * vmax / units.hbar < kPhaseWrapLimit))
            throw StepTooLarge("step: |V|*dt/hbar exceeds phase-wrap limit");

        const std::vector<double> vals = sample_potential(v, grid);
        half_v_.resize(grid.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double ph = -0.5 * vals[i] * dt / units.hbar;
            half_v_[i] = {std::cos(ph), std::sin(ph)};
        }

        kinetic_.resize(grid.size());
        std::vector<double> kx = wavenumbers(grid.n[0], grid.length(0));
        std::vector<double> ky = grid.dim == 2 ? wavenumbers(grid.n[1], grid.length(1))
                                               : std::vector<double>{0.0};
        const double c = -units.hbar * dt / (2.0 * units.mass);
        for (std::size_t i = 0; i < kinetic_.size(); ++i) {
            const double kxa = kx[grid.dim == 1 ? i : grid.ix_of(i)];
            const double kya = grid.dim == 2 ? ky[grid.iy_of(i)] : 0.0;
            const double ph = c * (kxa * kxa + kya * kya);
            kinetic_[i] = {std::cos(ph), std::sin(ph)};
        }
        col_.resize(grid.n[0]);
    }

    const GridSpec& grid() const { return grid_; }
    double dt() const { return dt_; }

    /// Advance one step in place.
    void advance(Wavefield& psi) {
        pointwise(psi.amps, half_v_);
        fft_all(psi.amps, false);
        pointwise(psi.amps, kinetic_);
        fft_all(psi.amps, true);
        pointwise(psi.amps, half_v_);
        psi.t += dt_;
    }

    void advance(Wavefield& psi, std::size_t steps) {
        for (std::size_t s = 0; s < steps; ++s) advance(psi);
    }

private:
    static void pointwise(std::vector<cplx>& a, const std::vector<cplx>& f) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] *= f[i];
    }

    void fft_all(std::vector<cplx>& data, bool inverse) {
        if (grid_.dim == 1) {
            if (inverse)
                plan_x_.inverse(data.data());
            else
                plan_x_.forward(data.data());
            return;
        }
        for (std::size_t ix = 0; ix < grid_.n[0]; ++ix) {
            cplx* row = data.data() + ix * grid_.n[1];
            if (inverse)
                plan_y_.inverse(row);
            else
                plan_y_.forward(row);
        }
        for (std::size_t iy = 0; iy < grid_.n[1]; ++iy) {
            for (std::size_t ix = 0; ix < grid_.n[0]; ++ix)
                col_[ix] = data[ix * grid_.n[1] + iy];
            if (inverse)
                plan_x_.inverse(col_.data());
            else
                plan_x_.forward(col_.data());
            for (std::size_t ix = 0; ix < grid_.n[0]; ++ix)
                data[ix * grid_.n[1] + iy] = col_[ix];
        }
    }

    GridSpec grid_;
    double dt_;
    FftPlan plan_x_;
    FftPlan plan_y_;
    std::vector<cplx> half_v_;
    std::vector<cplx> kinetic_;
    std::vector<cplx> col_;
};

/// One split-operator step as a pure function.
inline Wavefield step(const Wavefield& psi, const Potential& v, double dt,
                      const UnitSystem& units) {
    if (dt == 0.0) return psi;
    Propagator prop(psi.grid, v, dt, units);
    Wavefield out = psi;
    prop.advance(out);
    return out;
}

inline Wavefield evolve(const Wavefield& psi, const Potential& v,
                        const EvolutionConfig& cfg) {
    if (cfg.n_steps == 0 || cfg.dt == 0.0) return psi;
    Propagator prop(psi.grid, v, cfg.dt, cfg.units);
    Wavefield out = psi;
    prop.advance(out, cfg.n_steps);
    return out;
}

}  // namespace dow
