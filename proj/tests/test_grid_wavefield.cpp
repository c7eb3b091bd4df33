#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dow/wavefield.hpp"

using namespace dow;
using Catch::Approx;

TEST_CASE("grid construction validates shape") {
    CHECK_THROWS_AS(GridSpec::line(7, 0.0, 1.0), ConfigError);      // not power of two
    CHECK_THROWS_AS(GridSpec::line(100, 0.0, 1.0), ConfigError);    // not power of two
    CHECK_THROWS_AS(GridSpec::line(4, 0.0, 1.0), ConfigError);      // too small
    CHECK_THROWS_AS(GridSpec::line(16, 1.0, 1.0), ConfigError);     // empty extent
    const GridSpec g = GridSpec::line(256, -10.0, 10.0);
    CHECK(g.dx[0] == Approx(20.0 / 256.0));
    CHECK(g.size() == 256);
    const GridSpec p = GridSpec::plane(64, -1.0, 1.0, 128, -2.0, 2.0);
    CHECK(p.size() == 64 * 128);
    CHECK(p.cell_volume() == Approx((2.0 / 64.0) * (4.0 / 128.0)));
}

TEST_CASE("gaussian packet has the constructed spread and momentum") {
    const GridSpec g = GridSpec::line(256, -10.0, 10.0);
    const UnitSystem u = UnitSystem::natural();

    const Wavefield psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    CHECK(norm_squared(psi) == Approx(1.0).margin(1e-12));
    CHECK(position_spread(psi)[0] == Approx(1.0).epsilon(0.01));

    // carrier phase shifts the momentum expectation by hbar*k0
    const Wavefield moving = gaussian_packet(g, 0.0, 1.0, 5.0);
    CHECK(momentum_mean(moving, u)[0] == Approx(5.0).epsilon(0.01));

    CHECK_THROWS_AS(gaussian_packet(g, 0.0, 0.5 * g.dx[0], 0.0), UnresolvableWidth);
    CHECK_THROWS_AS(gaussian_packet(g, 9.0, 1.0, 0.0), OutOfDomain);
}

TEST_CASE("normalize scales, is idempotent, rejects zero field") {
    const GridSpec g = GridSpec::line(64, -4.0, 4.0);
    Wavefield psi(g);
    for (std::size_t i = 0; i < psi.amps.size(); ++i)
        psi.amps[i] = {std::exp(-0.1 * static_cast<double>(i % 7)), 0.3};
    // give it norm 4
    Wavefield scaled = psi;
    const double n = std::sqrt(norm_squared(psi));
    for (cplx& a : scaled.amps) a *= 2.0 / n;
    CHECK(norm_squared(scaled) == Approx(4.0).epsilon(1e-12));

    const Wavefield once = normalize(scaled);
    CHECK(norm_squared(once) == Approx(1.0).margin(1e-12));
    const Wavefield twice = normalize(once);
    for (std::size_t i = 0; i < once.amps.size(); ++i)
        CHECK(std::abs(twice.amps[i] - once.amps[i]) < 1e-12);
    // shape preserved
    CHECK(std::abs(once.amps[5] / once.amps[11] - scaled.amps[5] / scaled.amps[11]) < 1e-12);

    Wavefield zero(g);
    CHECK_THROWS_AS(normalize(zero), ZeroField);
}

TEST_CASE("position spread: delta and uniform oracles") {
    const GridSpec g = GridSpec::line(256, -10.0, 10.0);

    Wavefield delta(g);
    delta.amps[100] = {1.0, 0.0};
    delta = normalize(delta);
    CHECK(position_spread(delta)[0] <= g.dx[0]);

    // uniform over [-L/2, L/2]: stddev of the uniform distribution is L/sqrt(12)
    Wavefield fl(g);
    for (cplx& a : fl.amps) a = {1.0, 0.0};
    fl = normalize(fl);
    CHECK(position_spread(fl)[0] == Approx(20.0 / std::sqrt(12.0)).epsilon(0.02));
}

TEST_CASE("momentum spread: minimum-uncertainty packet and plane wave") {
    const GridSpec g = GridSpec::line(256, -10.0, 10.0);
    const UnitSystem u = UnitSystem::natural();

    // Fourier transform of a Gaussian: delta_p = hbar/(2 sigma)
    const Wavefield psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    CHECK(momentum_spread(psi, u)[0] == Approx(0.5).epsilon(0.02));

    // a lattice plane wave occupies a single wavenumber bin
    Wavefield plane(g);
    const double k0 = 2.0 * std::numbers::pi / 20.0 * 8.0;  // 8th lattice harmonic
    for (std::size_t i = 0; i < g.n[0]; ++i) {
        const double x = g.coord(0, i);
        plane.amps[i] = {std::cos(k0 * x), std::sin(k0 * x)};
    }
    plane = normalize(plane);
    CHECK(momentum_spread(plane, u)[0] <= 1e-8);
    CHECK(momentum_mean(plane, u)[0] == Approx(k0).epsilon(1e-10));
}

TEST_CASE("uncertainty product is at least hbar/2") {
    const GridSpec g = GridSpec::line(256, -10.0, 10.0);
    const UnitSystem u = UnitSystem::natural();
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double k0 : {0.0, 3.0}) {
            const Wavefield psi = gaussian_packet(g, 0.5, sigma, k0);
            CHECK(uncertainty_product(psi, u) >= 0.5 * u.hbar * (1.0 - 1e-6));
        }
    }
}

TEST_CASE("spectral round trip reproduces amplitudes") {
    const GridSpec g = GridSpec::plane(32, -3.0, 3.0, 32, -3.0, 3.0);
    const Wavefield psi = gaussian_packet(g, {0.3, -0.2}, {0.6, 0.5}, {2.0, -1.0});
    const Wavefield back = from_momentum(g, to_momentum(psi), psi.t);
    double worst = 0.0;
    for (std::size_t i = 0; i < psi.amps.size(); ++i)
        worst = std::max(worst, std::abs(back.amps[i] - psi.amps[i]));
    CHECK(worst < 1e-12);

    // Parseval with the dk scaling: momentum density integrates to 1
    const auto tilde = to_momentum(psi);
    const double dk0 = 2.0 * std::numbers::pi / g.length(0);
    const double dk1 = 2.0 * std::numbers::pi / g.length(1);
    double total = 0.0;
    for (const cplx& c : tilde) total += std::norm(c);
    CHECK(total * dk0 * dk1 == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("2D packet has per-axis spreads") {
    const GridSpec g = GridSpec::plane(128, -8.0, 8.0, 128, -8.0, 8.0);
    const Wavefield psi = gaussian_packet(g, {0.0, 1.0}, {0.5, 1.5}, {0.0, 0.0});
    const Vec2 s = position_spread(psi);
    CHECK(s[0] == Approx(0.5).epsilon(0.01));
    CHECK(s[1] == Approx(1.5).epsilon(0.01));
    CHECK(effective_width(psi) == Approx(std::sqrt(0.5 * 1.5)).epsilon(0.01));
}
