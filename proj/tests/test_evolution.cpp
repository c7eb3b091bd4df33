#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dow/evolution.hpp"

using namespace dow;
using Catch::Approx;

namespace {

// analytic free-packet width: sigma0 * sqrt(1 + (hbar t / (2 m sigma0^2))^2)
double free_spread(double sigma0, double t, const UnitSystem& u) {
    const double r = u.hbar * t / (2.0 * u.mass * sigma0 * sigma0);
    return sigma0 * std::sqrt(1.0 + r * r);
}

// squeezed Gaussian in a harmonic trap breathes as
// sigma(t)^2 = sigma0^2 cos^2(w t) + (hbar/(2 m w sigma0))^2 sin^2(w t)
double breathing_spread(double sigma0, double t, double omega, const UnitSystem& u) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    const double sg = u.hbar / (2.0 * u.mass * omega * sigma0);
    return std::sqrt(sigma0 * sigma0 * c * c + sg * sg * s * s);
}

}  // namespace

TEST_CASE("free Gaussian spreads along the analytic law") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(256, -20.0, 20.0);
    Wavefield psi = gaussian_packet(g, 0.0, 1.0, 0.0);

    EvolutionConfig cfg{1e-3, 2000, u};
    psi = evolve(psi, FreePotential{}, cfg);
    CHECK(psi.t == Approx(2.0));
    CHECK(position_spread(psi)[0] == Approx(free_spread(1.0, 2.0, u)).epsilon(0.01));
    CHECK(free_spread(1.0, 2.0, u) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(norm_squared(psi) == Approx(1.0).margin(1e-10));
}

TEST_CASE("plane-wave eigenstate only picks up a global phase") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(128, -10.0, 10.0);
    Wavefield plane(g);
    const double k0 = 2.0 * std::numbers::pi / 20.0 * 5.0;
    for (std::size_t i = 0; i < g.n[0]; ++i) {
        const double x = g.coord(0, i);
        plane.amps[i] = {std::cos(k0 * x), std::sin(k0 * x)};
    }
    plane = normalize(plane);
    const Wavefield evolved = evolve(plane, FreePotential{}, {1e-2, 100, u});
    double worst = 0.0;
    for (std::size_t i = 0; i < plane.amps.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(evolved.amps[i]) - std::abs(plane.amps[i])));
    CHECK(worst < 1e-10);
    // the phase advanced by E t / hbar = k0^2/2 * t
    const cplx ratio = evolved.amps[13] / plane.amps[13];
    CHECK(std::arg(ratio) == Approx(std::remainder(-0.5 * k0 * k0 * 1.0, 2.0 * std::numbers::pi))
                                 .margin(1e-8));
}

TEST_CASE("dt = 0 is the identity, guard rejects oversized steps") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(64, -8.0, 8.0);
    const Wavefield psi = gaussian_packet(g, 0.0, 1.0, 0.0);

    const Wavefield same = step(psi, FreePotential{}, 0.0, u);
    for (std::size_t i = 0; i < psi.amps.size(); ++i)
        CHECK(same.amps[i] == psi.amps[i]);

    BarrierPotential wall;
    wall.position = 4.0;
    wall.thickness = 1.0;
    wall.height = 600.0;
    CHECK_THROWS_AS(step(psi, Potential{wall}, 1e-3, u), StepTooLarge);
    CHECK_NOTHROW(step(psi, Potential{wall}, 5e-4, u));
}

TEST_CASE("unitarity over many steps and time reversal") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(256, -16.0, 16.0);
    const Wavefield psi0 = gaussian_packet(g, -2.0, 1.0, 1.5);

    HarmonicPotential trap{1.0, {0.0, 0.0}};
    Wavefield psi = evolve(psi0, Potential{trap}, {1e-3, 5000, u});
    CHECK(norm_squared(psi) == Approx(1.0).margin(1e-10));

    // evolving dt then -dt recovers the field
    Wavefield fwd = step(psi0, Potential{trap}, 1e-3, u);
    Wavefield back = step(fwd, Potential{trap}, -1e-3, u);
    double worst = 0.0;
    for (std::size_t i = 0; i < psi0.amps.size(); ++i)
        worst = std::max(worst, std::abs(back.amps[i] - psi0.amps[i]));
    CHECK(worst < 1e-9);
}

TEST_CASE("free momentum distribution is time-invariant") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(256, -16.0, 16.0);
    const Wavefield psi0 = gaussian_packet(g, 0.0, 1.0, 2.0);
    const auto before = to_momentum(psi0);
    const Wavefield psi1 = evolve(psi0, FreePotential{}, {1e-3, 1000, u});
    const auto after = to_momentum(psi1);
    double worst = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i)
        worst = std::max(worst, std::abs(std::norm(after[i]) - std::norm(before[i])));
    CHECK(worst < 1e-10);
}

TEST_CASE("coherent state keeps its width, squeezed state breathes on the analytic law") {
    const UnitSystem u = UnitSystem::natural();
    const double omega = 1.0;
    const GridSpec g = GridSpec::line(256, -16.0, 16.0);
    const double sigma_ground = std::sqrt(u.hbar / (2.0 * u.mass * omega));
    HarmonicPotential trap{u.mass * omega * omega, {0.0, 0.0}};

    // displaced ground state: spread constant, centroid oscillates with the trap period
    Wavefield coh = gaussian_packet(g, 2.0, sigma_ground, 0.0);
    Propagator prop(g, Potential{trap}, 1e-3, u);
    double worst_spread_err = 0.0, worst_centroid_err = 0.0;
    const std::size_t steps = 6284;  // one full period
    for (std::size_t s = 1; s <= steps; ++s) {
        prop.advance(coh);
        const double t = 1e-3 * static_cast<double>(s);
        worst_spread_err = std::max(
            worst_spread_err, std::abs(position_spread(coh)[0] / sigma_ground - 1.0));
        worst_centroid_err = std::max(
            worst_centroid_err, std::abs(position_mean(coh)[0] - 2.0 * std::cos(omega * t)));
    }
    CHECK(worst_spread_err < 0.02);
    CHECK(worst_centroid_err < 0.02 * 2.0);

    // squeezed packet: width follows the breathing law, period pi/omega
    Wavefield sq = gaussian_packet(g, 0.0, 1.5 * sigma_ground, 0.0);
    Propagator prop2(g, Potential{trap}, 1e-3, u);
    double worst_breath_err = 0.0;
    for (std::size_t s = 1; s <= steps; ++s) {
        prop2.advance(sq);
        const double t = 1e-3 * static_cast<double>(s);
        const double expect = breathing_spread(1.5 * sigma_ground, t, omega, u);
        worst_breath_err = std::max(worst_breath_err,
                                    std::abs(position_spread(sq)[0] / expect - 1.0));
    }
    CHECK(worst_breath_err < 0.02);
}

TEST_CASE("hard barrier reflects nearly everything") {
    const UnitSystem u = UnitSystem::natural();
    const GridSpec g = GridSpec::line(512, -24.0, 24.0);
    // packet energy ~ k0^2/2 = 4.5, barrier 480 is ~100x higher
    const Wavefield psi0 = gaussian_packet(g, -8.0, 1.2, 3.0);
    BarrierPotential wall;
    wall.position = 0.0;
    wall.thickness = 0.8;
    wall.height = 480.0;

    const double dt = 8e-4;
    const std::size_t steps = 5000;  // t = 4, packet meets wall at t ~ 2.7 and bounces
    const Wavefield out = evolve(psi0, Potential{wall}, {dt, steps, u});
    const double far_side = wall.position + 0.5 * wall.thickness;
    double transmitted = 0.0;
    for (std::size_t i = 0; i < g.n[0]; ++i)
        if (g.coord(0, i) > far_side) transmitted += std::norm(out.amps[i]);
    transmitted *= g.cell_volume();
    CHECK(transmitted <= 1e-6);

    // cross-check against a refined run (half dx, half dt)
    const GridSpec g_fine = GridSpec::line(1024, -24.0, 24.0);
    const Wavefield fine0 = gaussian_packet(g_fine, -8.0, 1.2, 3.0);
    const Wavefield fine = evolve(fine0, Potential{wall}, {0.5 * dt, 2 * steps, u});
    double transmitted_fine = 0.0;
    for (std::size_t i = 0; i < g_fine.n[0]; ++i)
        if (g_fine.coord(0, i) > far_side) transmitted_fine += std::norm(fine.amps[i]);
    transmitted_fine *= g_fine.cell_volume();
    CHECK(transmitted_fine <= 1e-6);
    CHECK(position_spread(fine)[0] == Approx(position_spread(out)[0]).epsilon(0.02));
}

TEST_CASE("splitting is second order against the breathing oracle") {
    const UnitSystem u = UnitSystem::natural();
    const double omega = 1.0;
    // domain kept small enough that the trap passes the phase-wrap guard
    const GridSpec g = GridSpec::line(256, -8.0, 8.0);
    const double sigma_ground = std::sqrt(u.hbar / (2.0 * u.mass * omega));
    HarmonicPotential trap{1.0, {0.0, 0.0}};
    const double sigma0 = 1.5 * sigma_ground;
    const double t_end = 2.0;

    const auto width_error = [&](double dt) {
        const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
        const Wavefield out =
            evolve(gaussian_packet(g, 0.0, sigma0, 0.0), Potential{trap}, {dt, steps, u});
        return std::abs(position_spread(out)[0] - breathing_spread(sigma0, t_end, omega, u));
    };

    const double e1 = width_error(0.01);
    const double e2 = width_error(0.005);
    CHECK(e1 / e2 == Approx(4.0).epsilon(0.3));
}
