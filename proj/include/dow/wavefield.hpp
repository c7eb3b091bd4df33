#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "dow/errors.hpp"
#include "dow/fft.hpp"
#include "dow/grid.hpp"
#include "dow/units.hpp"

namespace dow {

/// Complex amplitude field sampled on a uniform grid, stamped with physical
/// time. Treated as an immutable snapshot: every operation below is a pure
/// function returning a fresh value.
struct Wavefield {
    GridSpec grid;
    std::vector<cplx> amps;
    double t = 0.0;

    Wavefield() = default;
    explicit Wavefield(const GridSpec& g, double time = 0.0)
        : grid(g), amps(g.size()), t(time) {}
};

inline double norm_squared(const Wavefield& psi) {
    double s = 0.0;
    for (const cplx& a : psi.amps) s += std::norm(a);
    return s * psi.grid.cell_volume();
}

inline Wavefield normalize(const Wavefield& psi) {
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) throw ZeroField("normalize: field has zero norm");
    Wavefield out = psi;
    const double s = 1.0 / std::sqrt(n2);
    for (cplx& a : out.amps) a *= s;
    return out;
}

/// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma^2)) exp(i k0 . x),
/// per-axis widths and carrier wavenumbers in 2D.
inline Wavefield gaussian_packet(const GridSpec& grid, const Vec2& center,
                                 const Vec2& sigma, const Vec2& k0) {
    for (int a = 0; a < grid.dim; ++a) {
        if (!(sigma[a] >= 2.0 * grid.dx[a]))
            throw UnresolvableWidth("gaussian_packet: sigma < 2*dx on axis " +
                                    std::to_string(a));
        const double margin = 4.0 * sigma[a];
        if (center[a] - margin < grid.x_min[a] || center[a] + margin > grid.x_max[a])
            throw OutOfDomain("gaussian_packet: center within 4*sigma of boundary on axis " +
                              std::to_string(a));
    }
    Wavefield psi(grid);
    if (grid.dim == 1) {
        for (std::size_t i = 0; i < grid.n[0]; ++i) {
            const double x = grid.coord(0, i) - center[0];
            const double env = std::exp(-x * x / (4.0 * sigma[0] * sigma[0]));
            const double ph = k0[0] * (x + center[0]);
            psi.amps[i] = env * cplx{std::cos(ph), std::sin(ph)};
        }
    } else {
        for (std::size_t ix = 0; ix < grid.n[0]; ++ix) {
            const double x = grid.coord(0, ix) - center[0];
            const double ex = std::exp(-x * x / (4.0 * sigma[0] * sigma[0]));
            for (std::size_t iy = 0; iy < grid.n[1]; ++iy) {
                const double y = grid.coord(1, iy) - center[1];
                const double ey = std::exp(-y * y / (4.0 * sigma[1] * sigma[1]));
                const double ph = k0[0] * (x + center[0]) + k0[1] * (y + center[1]);
                psi.amps[grid.index(ix, iy)] = ex * ey * cplx{std::cos(ph), std::sin(ph)};
            }
        }
    }
    return normalize(psi);
}

inline Wavefield gaussian_packet(const GridSpec& grid, double x0, double sigma,
                                 double k0) {
    return gaussian_packet(grid, {x0, 0.0}, {sigma, sigma}, {k0, 0.0});
}

inline Vec2 position_mean(const Wavefield& psi) {
    const GridSpec& g = psi.grid;
    double w = 0.0;
    Vec2 m{0.0, 0.0};
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
        const double p = std::norm(psi.amps[i]);
        if (p == 0.0) continue;
        w += p;
        const Vec2 x = g.position(i);
        for (int a = 0; a < g.dim; ++a) m[a] += p * x[a];
    }
    if (!(w > 0.0)) throw ZeroField("position_mean: zero field");
    for (int a = 0; a < g.dim; ++a) m[a] /= w;
    return m;
}

/// Per-axis standard deviation of the |psi|^2 position distribution.
inline Vec2 position_spread(const Wavefield& psi) {
    const GridSpec& g = psi.grid;
    const Vec2 mean = position_mean(psi);
    double w = 0.0;
    Vec2 v{0.0, 0.0};
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
        const double p = std::norm(psi.amps[i]);
        if (p == 0.0) continue;
        w += p;
        const Vec2 x = g.position(i);
        for (int a = 0; a < g.dim; ++a) {
            const double d = x[a] - mean[a];
            v[a] += p * d * d;
        }
    }
    Vec2 out{0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) out[a] = std::sqrt(v[a] / w);
    return out;
}

/// Scalar width of a possibly 2D field: geometric mean of per-axis spreads.
/// Identical to the spread in 1D.
inline double effective_width(const Wavefield& psi) {
    const Vec2 s = position_spread(psi);
    return psi.grid.dim == 1 ? s[0] : std::sqrt(s[0] * s[1]);
}

/// Momentum-space amplitudes (FFT bin order). Scaled so that
/// sum |psi_tilde|^2 * dk_volume = sum |psi|^2 * dx_volume.
inline std::vector<cplx> to_momentum(const Wavefield& psi) {
    std::vector<cplx> out = psi.amps;
    fft_grid(out, psi.grid, false);
    double scale = 1.0;
    for (int a = 0; a < psi.grid.dim; ++a)
        scale *= psi.grid.dx[a] / std::sqrt(2.0 * std::numbers::pi);
    for (cplx& c : out) c *= scale;
    return out;
}

inline Wavefield from_momentum(const GridSpec& grid, std::vector<cplx> tilde,
                               double t = 0.0) {
    double scale = 1.0;
    for (int a = 0; a < grid.dim; ++a)
        scale *= std::sqrt(2.0 * std::numbers::pi) / grid.dx[a];
    for (cplx& c : tilde) c *= scale;
    fft_grid(tilde, grid, true);
    Wavefield psi(grid, t);
    psi.amps = std::move(tilde);
    return psi;
}

namespace detail {

/// Weighted mean/stddev of the momentum distribution along each axis,
/// p = hbar k on the discrete wavenumber ladder.
inline void momentum_moments(const Wavefield& psi, const UnitSystem& units,
                             Vec2& mean, Vec2& spread) {
    const GridSpec& g = psi.grid;
    std::vector<cplx> tilde = psi.amps;
    fft_grid(tilde, g, false);
    std::vector<double> kx = wavenumbers(g.n[0], g.length(0));
    std::vector<double> ky =
        g.dim == 2 ? wavenumbers(g.n[1], g.length(1)) : std::vector<double>{0.0};

    double w = 0.0;
    Vec2 m{0.0, 0.0}, m2{0.0, 0.0};
    for (std::size_t i = 0; i < tilde.size(); ++i) {
        const double p = std::norm(tilde[i]);
        if (p == 0.0) continue;
        w += p;
        const double kxa = kx[g.dim == 1 ? i : g.ix_of(i)];
        m[0] += p * kxa;
        m2[0] += p * kxa * kxa;
        if (g.dim == 2) {
            const double kya = ky[g.iy_of(i)];
            m[1] += p * kya;
            m2[1] += p * kya * kya;
        }
    }
    if (!(w > 0.0)) throw ZeroField("momentum_moments: zero field");
    for (int a = 0; a < g.dim; ++a) {
        m[a] /= w;
        const double var = m2[a] / w - m[a] * m[a];
        mean[a] = units.hbar * m[a];
        spread[a] = units.hbar * std::sqrt(var > 0.0 ? var : 0.0);
    }
}

}  // namespace detail

inline Vec2 momentum_mean(const Wavefield& psi, const UnitSystem& units) {
    Vec2 m{0.0, 0.0}, s{0.0, 0.0};
    detail::momentum_moments(psi, units, m, s);
    return m;
}

/// Per-axis standard deviation of the |psi_tilde(p)|^2 distribution.
inline Vec2 momentum_spread(const Wavefield& psi, const UnitSystem& units) {
    Vec2 m{0.0, 0.0}, s{0.0, 0.0};
    detail::momentum_moments(psi, units, m, s);
    return s;
}

/// Smallest per-axis product spread_x * spread_p (the uncertainty product).
inline double uncertainty_product(const Wavefield& psi, const UnitSystem& units) {
    const Vec2 dx = position_spread(psi);
    const Vec2 dp = momentum_spread(psi, units);
    double worst = dx[0] * dp[0];
    if (psi.grid.dim == 2) worst = std::min(worst, dx[1] * dp[1]);
    return worst;
}

}  // namespace dow
