#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <string>

#include "dow/errors.hpp"

namespace dow {

/// 2-vector used for positions, spreads and wavenumbers. In 1D the second
/// component is zero and ignored.
using Vec2 = std::array<double, 2>;

/// Uniform periodic grid over a 1D interval or a 2D rectangle. Sample points
/// along axis a are x_min[a] + i*dx[a] for i = 0..n[a]-1; x_max is the
/// periodic image of x_min. n must be a power of two (>= 8) per axis so the
/// spectral transforms are exact radix-2.
struct GridSpec {
    int dim = 1;
    std::array<std::size_t, 2> n{8, 1};
    Vec2 x_min{0.0, 0.0};
    Vec2 x_max{1.0, 0.0};
    Vec2 dx{0.0, 0.0};

    static GridSpec line(std::size_t n, double x_min, double x_max) {
        GridSpec g;
        g.dim = 1;
        g.n = {n, 1};
        g.x_min = {x_min, 0.0};
        g.x_max = {x_max, 0.0};
        g.finish();
        return g;
    }

    static GridSpec plane(std::size_t nx, double x_min, double x_max,
                          std::size_t ny, double y_min, double y_max) {
        GridSpec g;
        g.dim = 2;
        g.n = {nx, ny};
        g.x_min = {x_min, y_min};
        g.x_max = {x_max, y_max};
        g.finish();
        return g;
    }

    std::size_t size() const { return n[0] * n[1]; }

    double length(int axis) const { return x_max[axis] - x_min[axis]; }

    double cell_volume() const { return dim == 1 ? dx[0] : dx[0] * dx[1]; }

    /// Coordinate of sample i along an axis.
    double coord(int axis, std::size_t i) const {
        return x_min[axis] + static_cast<double>(i) * dx[axis];
    }

    std::size_t index(std::size_t ix, std::size_t iy = 0) const {
        return ix * n[1] + iy;
    }

    std::size_t ix_of(std::size_t idx) const { return idx / n[1]; }
    std::size_t iy_of(std::size_t idx) const { return idx % n[1]; }

    Vec2 position(std::size_t idx) const {
        if (dim == 1) return {coord(0, idx), 0.0};
        return {coord(0, ix_of(idx)), coord(1, iy_of(idx))};
    }

    /// Index of the grid point nearest to p (each axis clamped to the domain).
    std::size_t nearest_index(const Vec2& p) const {
        std::array<std::size_t, 2> ij{0, 0};
        for (int a = 0; a < dim; ++a) {
            double f = (p[a] - x_min[a]) / dx[a];
            long i = static_cast<long>(f + 0.5);
            if (i < 0) i = 0;
            if (i >= static_cast<long>(n[a])) i = static_cast<long>(n[a]) - 1;
            ij[a] = static_cast<std::size_t>(i);
        }
        return index(ij[0], ij[1]);
    }

    bool same_as(const GridSpec& o) const {
        return dim == o.dim && n == o.n && x_min == o.x_min && x_max == o.x_max;
    }

private:
    void finish() {
        if (dim != 1 && dim != 2) throw ConfigError("GridSpec: dim must be 1 or 2");
        for (int a = 0; a < dim; ++a) {
            if (n[a] < 8 || !std::has_single_bit(n[a]))
                throw ConfigError("GridSpec: n must be a power of two >= 8, got " +
                                  std::to_string(n[a]));
            if (!(x_max[a] > x_min[a]))
                throw ConfigError("GridSpec: x_max must exceed x_min");
            dx[a] = (x_max[a] - x_min[a]) / static_cast<double>(n[a]);
        }
        if (dim == 1) {
            n[1] = 1;
            dx[1] = 0.0;
        }
    }
};

}  // namespace dow
