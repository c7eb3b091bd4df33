#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/rng.hpp"
#include "dow/stats.hpp"
#include "dow/trajectory.hpp"

namespace dow {

/// Two-particle demo on a configuration-space square: the grid axes are the
/// coordinates (x_A, x_B) of the pair, not two spatial directions.
struct EntangledPairConfig {
    std::size_t n = 512;        // grid points per coordinate
    double half_extent = 8.0;   // domain [-L, L]^2
    double s = 0.1;             // relative-coordinate scale (entanglement strength)
    double big_s = 4.0;         // center-of-mass scale
    double event_energy = 0.0;  // 0 = 2x the live threshold
    double event_extent = 0.5;
    double event_site_a = 0.0;  // where the apparatus touches coordinate A
    double operator_width = 0.0;  // 0 = 2*dx
    std::size_t n_shots = 10000;
    std::uint64_t seed0 = 1;
    UnitSystem units = UnitSystem::natural();
};

struct EntangledPairResult {
    std::vector<double> x_a, x_b;        // sampled joint collapse locations
    double correlation = 0.0;            // empirical Pearson correlation
    double analytic_correlation = 0.0;   // (S^2 - s^2) / (S^2 + s^2)
    double conditional_spread_b = 0.0;   // empirical sigma_B sqrt(1 - rho^2)
    double analytic_conditional_spread = 0.0;  // s S / sqrt(s^2 + S^2)
    double marginal_tv = 0.0;            // empirical x_A marginal vs analytic
    double threshold = 0.0;
    double event_energy = 0.0;
    std::size_t collapse_events_per_shot = 0;  // always 1: a single joint event
};

/// psi(xA, xB) proportional to exp(-(xA-xB)^2/4s^2) * exp(-(xA+xB)^2/4S^2),
/// normalized on the grid.
inline Wavefield correlated_gaussian(const GridSpec& grid, double s, double big_s) {
    if (grid.dim != 2) throw ConfigError("correlated_gaussian: need a 2D grid");
    if (!(s > 0.0) || !(big_s > 0.0))
        throw ConfigError("correlated_gaussian: scales must be positive");
    // the narrow |psi|^2 feature across the diagonal has width s/sqrt(2)
    if (!(s / std::sqrt(2.0) >= std::sqrt(2.0) * grid.dx[0]))
        throw UnresolvableWidth("correlated_gaussian: s is unresolvable on this grid");
    Wavefield psi(grid);
    const double inv4s2 = 1.0 / (4.0 * s * s);
    const double inv4S2 = 1.0 / (4.0 * big_s * big_s);
    for (std::size_t ia = 0; ia < grid.n[0]; ++ia) {
        const double xa = grid.coord(0, ia);
        for (std::size_t ib = 0; ib < grid.n[1]; ++ib) {
            const double xb = grid.coord(1, ib);
            const double rel = xa - xb, com = xa + xb;
            psi.amps[grid.index(ia, ib)] =
                std::exp(-rel * rel * inv4s2 - com * com * inv4S2);
        }
    }
    return normalize(psi);
}

/// A supra-threshold interaction on coordinate A resolves the whole pair in
/// one step: a joint Born sample of (x_A, x_B) followed by a joint collapse.
/// The ensemble statistics of the sampled pairs are compared against the
/// field's analytic Gaussian moments.
inline EntangledPairResult entangled_pair(const EntangledPairConfig& cfg) {
    if (cfg.n_shots < 1) throw ConfigError("entangled_pair: n_shots must be >= 1");
    const GridSpec grid = GridSpec::plane(cfg.n, -cfg.half_extent, cfg.half_extent,
                                          cfg.n, -cfg.half_extent, cfg.half_extent);
    const Wavefield psi = correlated_gaussian(grid, cfg.s, cfg.big_s);

    EntangledPairResult res;
    res.threshold = collapse_threshold(effective_width(psi), cfg.units);
    res.event_energy = cfg.event_energy > 0.0 ? cfg.event_energy : 2.0 * res.threshold;

    InteractionEvent ev;
    ev.center = {cfg.event_site_a, 0.0};
    ev.extent = cfg.event_extent;
    ev.energy = res.event_energy;
    CollapsePolicy policy;
    policy.units = cfg.units;
    policy.op = {OperatorShape::Gaussian,
                 cfg.operator_width > 0.0 ? cfg.operator_width : 2.0 * grid.dx[0]};
    if (!check_collapse(psi, ev, policy))
        throw ConfigError("entangled_pair: event energy is below the collapse threshold");

    const BornSampler sampler(psi);
    res.x_a.reserve(cfg.n_shots);
    res.x_b.reserve(cfg.n_shots);
    for (std::size_t shot = 0; shot < cfg.n_shots; ++shot) {
        SeededRng rng(cfg.seed0 + shot);
        const Vec2 site = sampler.sample(rng);  // one joint event, one draw
        res.x_a.push_back(site[0]);
        res.x_b.push_back(site[1]);
    }
    res.collapse_events_per_shot = 1;
    // the joint collapse itself is deterministic given the sample; apply it
    // once to assert it is well-formed
    {
        SeededRng rng(cfg.seed0);
        const Vec2 site = sampler.sample(rng);
        const Wavefield collapsed = apply_collapse(psi, site, policy.op);
        if (std::abs(norm_squared(collapsed) - 1.0) > 1e-9)
            throw Error("entangled_pair: joint collapse failed to normalize");
    }

    res.analytic_correlation = (cfg.big_s * cfg.big_s - cfg.s * cfg.s) /
                               (cfg.big_s * cfg.big_s + cfg.s * cfg.s);
    res.analytic_conditional_spread =
        cfg.s * cfg.big_s / std::sqrt(cfg.s * cfg.s + cfg.big_s * cfg.big_s);
    res.correlation = correlation(res.x_a, res.x_b);
    res.conditional_spread_b =
        stddev_of(res.x_b) * std::sqrt(std::max(0.0, 1.0 - res.correlation * res.correlation));

    // x_A marginal vs the analytic Gaussian, binned over the domain
    const std::size_t nbins = 64;
    const double lo = -cfg.half_extent, hi = cfg.half_extent;
    std::vector<double> counts(nbins, 0.0), analytic(nbins, 0.0);
    const double bw = (hi - lo) / static_cast<double>(nbins);
    for (double xa : res.x_a) {
        auto b = static_cast<long>((xa - lo) / bw);
        if (b >= 0 && b < static_cast<long>(nbins)) counts[static_cast<std::size_t>(b)] += 1.0;
    }
    const double sigma_a =
        0.5 * std::sqrt(cfg.s * cfg.s + cfg.big_s * cfg.big_s);  // marginal std of x_A
    for (std::size_t b = 0; b < nbins; ++b) {
        const double x = lo + (static_cast<double>(b) + 0.5) * bw;
        analytic[b] = std::exp(-0.5 * x * x / (sigma_a * sigma_a));
    }
    res.marginal_tv = total_variation(counts, analytic);
    return res;
}

}  // namespace dow
