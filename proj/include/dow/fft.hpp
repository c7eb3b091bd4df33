#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "dow/grid.hpp"

namespace dow {

using cplx = std::complex<double>;

/// Radix-2 complex FFT for power-of-two sizes, with precomputed twiddle and
/// bit-reversal tables so repeated transforms of the same size are cheap.
/// Forward convention: X_k = sum_j x_j exp(-2*pi*i*j*k/n); inverse divides
/// by n, so forward-then-inverse is the identity.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        w_.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            double ang = -2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
            w_[j] = {std::cos(ang), std::sin(ang)};
        }
    }

    std::size_t size() const { return n_; }

    void forward(cplx* a) const { transform(a, false); }

    void inverse(cplx* a) const {
        transform(a, true);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] *= s;
    }

private:
    void transform(cplx* a, bool inv) const {
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t r = bitrev_[i];
            if (i < r) std::swap(a[i], a[r]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t step = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                std::size_t tw = 0;
                for (std::size_t j = 0; j < half; ++j, tw += step) {
                    cplx w = w_[tw];
                    if (inv) w = std::conj(w);
                    const cplx u = a[start + j];
                    const cplx v = a[start + j + half] * w;
                    a[start + j] = u + v;
                    a[start + j + half] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> w_;
};

/// Wavenumber ladder of a periodic n-point axis of physical length L, in FFT
/// bin order: 0, dk, ..., (n/2-1)dk, -n/2*dk, ..., -dk with dk = 2*pi/L.
inline std::vector<double> wavenumbers(std::size_t n, double length) {
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / length;
    for (std::size_t j = 0; j < n; ++j) {
        const auto js = static_cast<long>(j);
        const long shifted = js < static_cast<long>(n / 2) ? js : js - static_cast<long>(n);
        k[j] = dk * static_cast<double>(shifted);
    }
    return k;
}

/// In-place transform of a grid-shaped array along every axis.
/// Plans and a column scratch buffer are built per call; hot loops should use
/// FftPlan directly (see Propagator).
inline void fft_grid(std::vector<cplx>& data, const GridSpec& g, bool inverse) {
    FftPlan plan_rows(g.n[0] > 1 ? g.n[0] : g.n[1]);
    if (g.dim == 1) {
        if (inverse)
            plan_rows.inverse(data.data());
        else
            plan_rows.forward(data.data());
        return;
    }
    FftPlan px(g.n[0]);
    FftPlan py(g.n[1]);
    // axis 1 (contiguous rows)
    for (std::size_t ix = 0; ix < g.n[0]; ++ix) {
        cplx* row = data.data() + ix * g.n[1];
        if (inverse)
            py.inverse(row);
        else
            py.forward(row);
    }
    // axis 0 (strided columns)
    std::vector<cplx> col(g.n[0]);
    for (std::size_t iy = 0; iy < g.n[1]; ++iy) {
        for (std::size_t ix = 0; ix < g.n[0]; ++ix) col[ix] = data[ix * g.n[1] + iy];
        if (inverse)
            px.inverse(col.data());
        else
            px.forward(col.data());
        for (std::size_t ix = 0; ix < g.n[0]; ++ix) data[ix * g.n[1] + iy] = col[ix];
    }
}

}  // namespace dow
