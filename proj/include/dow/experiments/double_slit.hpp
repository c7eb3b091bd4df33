#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/deformation.hpp"
#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/evolution.hpp"
#include "dow/parallel.hpp"
#include "dow/rng.hpp"
#include "dow/stats.hpp"
#include "dow/trajectory.hpp"

namespace dow {

struct PacketSpec {
    Vec2 center{0.0, 0.0};
    Vec2 sigma{1.0, 1.0};
    double k0x = 0.0;  // carrier along the propagation axis
};

struct WhichPathDetector {
    double energy = 0.0;  // per-slit transfer; live threshold decides the outcome
    double extent = 0.5;
};

struct ScreenBinning {
    std::size_t n_bins = 64;
    double lo = -6.0;
    double hi = 6.0;
};

struct DoubleSlitConfig {
    GridSpec grid = GridSpec::plane(64, -6.0, 6.0, 128, -6.0, 6.0);
    PacketSpec packet{{-2.5, 0.0}, {0.4, 0.8}, 9.0};
    BarrierPotential barrier;  // must carry exactly two slits
    double screen_x = 2.8;
    std::optional<WhichPathDetector> which_path;
    std::size_t n_shots = 10000;
    std::uint64_t seed0 = 1;
    double dt = 4e-3;
    double t_max = 0.95;
    ScreenBinning bins{64, -6.0, 6.0};
    double operator_width = 0.0;  // 0 = grid default, see below
    // analysis period for the fringe-contrast metric; 0 = calibrate on the
    // exact unitary pattern when one exists, else use the far-field estimate
    double fringe_period_override = 0.0;
    DeformationParams deform;
    UnitSystem units = UnitSystem::natural();
    int threads = 0;

    // Geometry notes. Wide slits with a narrow septum pass well over half the
    // beam, so screen arrival (mass beyond the plane > 0.5) stays reachable.
    // The packet is compact along the flight axis: at the detector firing
    // time (centroid at the barrier) no transmitted mass has yet reached the
    // two-slit overlap region, so a collapse there has nothing fringed to
    // sample. The collapse operator is narrow against the slit separation
    // (which-path) but wide enough that its diffraction merges the two
    // single-slit humps at the screen.
    static DoubleSlitConfig standard() {
        DoubleSlitConfig c;
        c.barrier.position = 0.0;
        c.barrier.thickness = 0.5;
        c.barrier.height = 120.0;
        c.barrier.slits = {{-0.8, 1.0}, {0.8, 1.0}};
        c.operator_width = 0.25;
        return c;
    }
};

struct ScreenHistogram {
    std::vector<double> edges;   // n_bins + 1
    std::vector<double> counts;  // n_bins
    std::size_t n_shots = 0;     // shots attempted (counts sum = shots that arrived)
};

struct DoubleSlitShot {
    EventOutcome slit1 = EventOutcome::NoEffect;
    EventOutcome slit2 = EventOutcome::NoEffect;
    bool collapsed_at_barrier = false;
    Vec2 collapse_site{0.0, 0.0};
    bool arrived = false;
    double screen_y = 0.0;
};

struct DoubleSlitResult {
    ScreenHistogram hist;
    double visibility = 0.0;
    double fringe_period = 0.0;  // geometric two-slit period at the screen
    // exact |psi|^2 screen pattern (binned y-marginal at arrival), available
    // whenever the field path is deterministic: no detectors, or detectors
    // that only deform
    std::vector<double> exact_screen_density;
    double t_crossing = -1.0;            // which-path event time (centroid crossing)
    double threshold_at_crossing = 0.0;  // live collapse threshold at that moment
    std::size_t n_arrived = 0;
    std::size_t n_dropped = 0;
    std::size_t n_collapsed_at_barrier = 0;
    std::size_t n_deformed_at_barrier = 0;
    Wavefield prescreen_field;  // arrival-time field on the deterministic path
    std::vector<DoubleSlitShot> shots;
};

/// Fringe contrast over the central five fringes. For an ideal pattern
/// env(y)*(1 + V cos(2 pi y / p)) the contrast (I_max - I_min)/(I_max+I_min)
/// equals the modulation depth V at the fringe period, which is what this
/// estimates: the histogram is smoothed with a 3-bin moving average, the
/// window spans 2.5 periods either side of the pattern center, and V is read
/// off the carrier amplitude 2|A(1/p)|/A(0) there. A smooth envelope has no
/// content at the fringe period and scores near zero.
///
/// When the caller knows the fringe period (the double-slit harness computes
/// it from its own geometry) it passes it in; otherwise the period is
/// estimated from the spacing of the smoothed histogram's local maxima, and
/// a histogram without at least two maxima above a tenth of the peak has no
/// fringes and scores zero.
inline double visibility(const ScreenHistogram& hist, double fringe_period = 0.0) {
    double total = 0.0;
    for (double c : hist.counts) total += c;
    if (total < 100.0) throw TooFewCounts("visibility: need at least 100 counts");

    const std::vector<double> s = moving_average3(hist.counts);
    const double peak = *std::max_element(s.begin(), s.end());
    if (!(peak > 0.0)) return 0.0;

    const double bw = hist.edges[1] - hist.edges[0];
    const auto y_of = [&](std::size_t i) { return 0.5 * (hist.edges[i] + hist.edges[i + 1]); };

    double period = fringe_period;
    if (!(period > 0.0)) {
        std::vector<std::size_t> maxima;
        for (std::size_t i = 1; i + 1 < s.size(); ++i)
            if (s[i] > s[i - 1] && s[i] >= s[i + 1] && s[i] >= 0.1 * peak)
                maxima.push_back(i);
        if (maxima.size() < 2) return 0.0;
        std::vector<double> gaps;
        for (std::size_t i = 1; i < maxima.size(); ++i)
            gaps.push_back(static_cast<double>(maxima[i] - maxima[i - 1]));
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        period = gaps[gaps.size() / 2] * bw;
    }
    if (!(period > bw)) return 0.0;

    double center = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) center += s[i] * y_of(i);
    center /= vec_sum(s);

    const double half_window = 2.5 * period;
    double re = 0.0, im = 0.0, dc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double y = y_of(i);
        if (std::abs(y - center) > half_window) continue;
        const double ph = 2.0 * std::numbers::pi * (y - center) / period;
        re += s[i] * std::cos(ph);
        im += s[i] * std::sin(ph);
        dc += s[i];
    }
    if (!(dc > 0.0)) return 0.0;
    return std::min(1.0, 2.0 * std::hypot(re, im) / dc);
}

namespace detail {

/// Probability mass in the half-plane beyond the screen coordinate.
inline double mass_beyond(const Wavefield& psi, double screen_x) {
    const GridSpec& g = psi.grid;
    double acc = 0.0;
    for (std::size_t ix = 0; ix < g.n[0]; ++ix) {
        if (g.coord(0, ix) <= screen_x) continue;
        const cplx* row = psi.amps.data() + ix * g.n[1];
        for (std::size_t iy = 0; iy < g.n[1]; ++iy) acc += std::norm(row[iy]);
    }
    return acc * g.cell_volume();
}

/// |psi(x_s, y)|^2 along the screen plane: the detector samples the
/// transverse coordinate from the density on its own plane, so mass that
/// never reached the screen does not contribute.
inline std::vector<double> screen_density(const Wavefield& psi, double screen_x) {
    const GridSpec& g = psi.grid;
    const std::size_t ix = g.ix_of(g.nearest_index({screen_x, 0.0}));
    std::vector<double> d(g.n[1], 0.0);
    const cplx* row = psi.amps.data() + ix * g.n[1];
    for (std::size_t iy = 0; iy < g.n[1]; ++iy) d[iy] = std::norm(row[iy]);
    return d;
}

/// Normalized CDF of the screen-plane density; the screen's Born sample is an
/// inverse-CDF draw on this.
inline std::vector<double> screen_cdf(const Wavefield& psi, double screen_x) {
    std::vector<double> cdf = screen_density(psi, screen_x);
    double acc = 0.0;
    for (double& c : cdf) {
        acc += c;
        c = acc;
    }
    if (!(acc > 0.0)) throw ZeroField("screen_cdf: zero field on the screen plane");
    for (double& c : cdf) c /= acc;
    cdf.back() = 1.0;
    return cdf;
}

inline double sample_transverse(const std::vector<double>& cdf, const GridSpec& g,
                                SeededRng& rng) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto iy = static_cast<std::size_t>(it - cdf.begin());
    return g.coord(1, iy);
}

/// Deterministic continuation after the barrier events: evolve to screen
/// arrival (mass beyond screen_x > 0.5) or drop at t_max.
struct Continuation {
    bool needs_second_draw = false;  // a further collapse wants per-shot rng
    EventOutcome slit2 = EventOutcome::NoEffect;
    bool arrived = false;
    double t_arrival = 0.0;
    std::vector<double> y_cdf;       // valid when arrived
    std::vector<double> y_marginal;  // unnormalized marginal, for the oracle
};

}  // namespace detail

inline void validate(const DoubleSlitConfig& cfg) {
    if (cfg.grid.dim != 2) throw ConfigError("double_slit: need a 2D grid");
    if (cfg.barrier.slits.size() != 2)
        throw ConfigError("double_slit: the barrier must have exactly two slits");
    validate_potential(Potential{cfg.barrier}, cfg.grid);
    if (!(cfg.screen_x > cfg.barrier.position + 0.5 * cfg.barrier.thickness))
        throw ConfigError("double_slit: screen must lie beyond the barrier");
    if (cfg.n_shots < 1) throw ConfigError("double_slit: n_shots must be >= 1");
    if (!(cfg.bins.n_bins >= 8)) throw ConfigError("double_slit: need at least 8 bins");
    if (!(cfg.bins.lo <= cfg.grid.x_min[1]) || !(cfg.bins.hi >= cfg.grid.x_max[1]))
        throw ConfigError("double_slit: bins must cover the transverse domain");
    if (!(cfg.t_max > 0.0) || !(cfg.dt > 0.0))
        throw ConfigError("double_slit: dt and t_max must be positive");
    if (cfg.which_path && !(cfg.which_path->extent >= std::max(cfg.grid.dx[0], cfg.grid.dx[1])))
        throw ConfigError("double_slit: detector extent must be >= dx");
}

inline DoubleSlitResult double_slit(const DoubleSlitConfig& cfg) {
    validate(cfg);
    const GridSpec& g = cfg.grid;
    const Potential pot{cfg.barrier};
    // sharply peaked against the slit geometry: a collapse blob must not span
    // the septum, or it keeps feeding both slits coherently
    const double w_c = cfg.operator_width > 0.0
                           ? cfg.operator_width
                           : std::max(2.0 * std::min(g.dx[0], g.dx[1]),
                                      std::max(g.dx[0], g.dx[1]));
    CollapsePolicy policy;
    policy.units = cfg.units;
    policy.op = {OperatorShape::Gaussian, w_c};

    DoubleSlitResult res;
    res.fringe_period = 2.0 * std::numbers::pi *
                        (cfg.screen_x - cfg.barrier.position) /
                        (cfg.packet.k0x *
                         std::abs(cfg.barrier.slits[1].center - cfg.barrier.slits[0].center));
    res.hist.edges.resize(cfg.bins.n_bins + 1);
    const double bw = (cfg.bins.hi - cfg.bins.lo) / static_cast<double>(cfg.bins.n_bins);
    for (std::size_t b = 0; b <= cfg.bins.n_bins; ++b)
        res.hist.edges[b] = cfg.bins.lo + static_cast<double>(b) * bw;
    res.hist.counts.assign(cfg.bins.n_bins, 0.0);
    res.hist.n_shots = cfg.n_shots;
    res.shots.resize(cfg.n_shots);

    const auto bin_of = [&](double y) {
        auto b = static_cast<long>((y - cfg.bins.lo) / bw);
        if (b < 0) b = 0;
        if (b >= static_cast<long>(cfg.bins.n_bins))
            b = static_cast<long>(cfg.bins.n_bins) - 1;
        return static_cast<std::size_t>(b);
    };
    const auto bin_marginal = [&](const std::vector<double>& marg) {
        std::vector<double> out(cfg.bins.n_bins, 0.0);
        for (std::size_t iy = 0; iy < g.n[1]; ++iy)
            out[bin_of(g.coord(1, iy))] += marg[iy];
        const double total = vec_sum(out);
        if (total > 0.0)
            for (double& v : out) v /= total;
        return out;
    };

    const auto max_steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    Propagator prop(g, pot, cfg.dt, cfg.units);
    Wavefield psi = gaussian_packet(g, cfg.packet.center, cfg.packet.sigma,
                                    {cfg.packet.k0x, 0.0});

    // ---- deterministic prefix ----------------------------------------
    std::vector<EventOutcome> pre_outcomes;  // shared event outcomes before any collapse
    std::vector<InteractionEvent> detector_events;
    int first_collapse_event = -1;

    if (cfg.which_path) {
        // the detectors fire at the step where the incident packet's centroid
        // crosses the barrier plane (free-flight centroid, x0 + v t)
        const double v = cfg.units.hbar * cfg.packet.k0x / cfg.units.mass;
        if (!(v > 0.0) || !(cfg.barrier.position > cfg.packet.center[0]))
            throw ConfigError("double_slit: packet must travel toward the barrier");
        const double t_cross = (cfg.barrier.position - cfg.packet.center[0]) / v;
        const auto cross_step =
            static_cast<std::size_t>(std::llround(t_cross / cfg.dt));
        if (cross_step >= max_steps)
            throw ConfigError("double_slit: barrier crossing lies beyond t_max");
        for (std::size_t s = 0; s < cross_step; ++s) prop.advance(psi);
        res.t_crossing = psi.t;
        res.threshold_at_crossing = collapse_threshold(effective_width(psi), cfg.units);

        for (const Slit& slit : cfg.barrier.slits) {
            InteractionEvent ev;
            ev.t = psi.t;
            ev.center = {cfg.barrier.position, slit.center};
            ev.extent = cfg.which_path->extent;
            ev.energy = cfg.which_path->energy;
            detector_events.push_back(ev);
        }
        // process events on the shared state until one collapses
        for (std::size_t e = 0; e < detector_events.size(); ++e) {
            const InteractionEvent& ev = detector_events[e];
            if (ev.energy > 0.0 && check_collapse(psi, ev, policy)) {
                first_collapse_event = static_cast<int>(e);
                break;
            }
            if (ev.energy > 0.0) {
                psi = apply_deformation(psi, ev, cfg.deform, cfg.units);
                pre_outcomes.push_back(EventOutcome::Deformed);
            } else {
                pre_outcomes.push_back(EventOutcome::NoEffect);
            }
        }
    }

    const auto outcome_of_pre = [&](std::size_t e) {
        return e < pre_outcomes.size() ? pre_outcomes[e] : EventOutcome::NoEffect;
    };

    // ---- branch A: fully deterministic field path --------------------
    if (first_collapse_event < 0) {
        std::size_t s = cfg.which_path
                            ? static_cast<std::size_t>(std::llround((psi.t) / cfg.dt))
                            : 0;
        bool arrived = false;
        while (s < max_steps) {
            prop.advance(psi);
            ++s;
            if (detail::mass_beyond(psi, cfg.screen_x) > 0.5) {
                arrived = true;
                break;
            }
        }
        if (!arrived) {
            // nothing reached the screen; an empty histogram is the honest answer
            res.n_dropped = cfg.n_shots;
            for (std::size_t shot = 0; shot < cfg.n_shots; ++shot) {
                res.shots[shot].slit1 = outcome_of_pre(0);
                res.shots[shot].slit2 = outcome_of_pre(1);
            }
            res.visibility = std::nan("");
            return res;
        }
        res.prescreen_field = psi;
        res.exact_screen_density = bin_marginal(detail::screen_density(psi, cfg.screen_x));
        if (cfg.fringe_period_override > 0.0) {
            res.fringe_period = cfg.fringe_period_override;
        } else {
            // calibrate the analysis period on the exact unitary pattern: the
            // far-field estimate drifts in this near-field geometry
            ScreenHistogram exact_hist;
            exact_hist.edges = res.hist.edges;
            exact_hist.n_shots = 1;
            for (double pd : res.exact_screen_density)
                exact_hist.counts.push_back(1e6 * pd);
            double best_p = res.fringe_period, best_v = -1.0;
            for (double f = 0.6; f <= 1.8; f += 0.01) {
                const double pd = f * res.fringe_period;
                const double v = visibility(exact_hist, pd);
                if (v > best_v) {
                    best_v = v;
                    best_p = pd;
                }
            }
            res.fringe_period = best_p;
        }
        const std::vector<double> cdf = detail::screen_cdf(psi, cfg.screen_x);

        for (std::size_t shot = 0; shot < cfg.n_shots; ++shot) {
            SeededRng rng(cfg.seed0 + shot);
            DoubleSlitShot& rec = res.shots[shot];
            rec.slit1 = outcome_of_pre(0);
            rec.slit2 = outcome_of_pre(1);
            rec.arrived = true;
            rec.screen_y = detail::sample_transverse(cdf, g, rng);
            res.hist.counts[bin_of(rec.screen_y)] += 1.0;
        }
        res.n_arrived = cfg.n_shots;
        if (std::count(pre_outcomes.begin(), pre_outcomes.end(), EventOutcome::Deformed) > 0)
            res.n_deformed_at_barrier = cfg.n_shots;
        res.visibility =
            res.n_arrived >= 100 ? visibility(res.hist, res.fringe_period) : std::nan("");
        return res;
    }

    // ---- branch B: per-shot collapse at the barrier -------------------
    if (cfg.fringe_period_override > 0.0) res.fringe_period = cfg.fringe_period_override;
    const Wavefield f_star = psi;  // shared state at the first collapsing event
    const BornSampler sampler(f_star);
    const auto first_idx = static_cast<std::size_t>(first_collapse_event);

    // pass 1: per-shot first draws (sequential; RNG order is the contract)
    std::vector<SeededRng> shot_rng;
    shot_rng.reserve(cfg.n_shots);
    std::vector<std::size_t> shot_cell(cfg.n_shots);
    for (std::size_t shot = 0; shot < cfg.n_shots; ++shot) {
        shot_rng.emplace_back(cfg.seed0 + shot);
        shot_cell[shot] = sampler.sample_cell(shot_rng.back());
    }
    std::vector<std::size_t> distinct = shot_cell;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // pass 2: one continuation per distinct collapse cell, in parallel
    const std::vector<InteractionEvent> tail_events(
        detector_events.begin() + static_cast<long>(first_idx) + 1, detector_events.end());
    std::vector<detail::Continuation> conts(distinct.size());
    const int workers =
        std::min<std::size_t>(thread_count(cfg.threads), std::max<std::size_t>(distinct.size(), 1));
    {
        std::atomic<std::size_t> next{0};
        const auto worker = [&]() {
            Propagator wprop(g, pot, cfg.dt, cfg.units);
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= distinct.size()) return;
                detail::Continuation& cont = conts[i];
                Wavefield field = apply_collapse(f_star, g.position(distinct[i]), policy.op);
                bool ok = true;
                for (const InteractionEvent& ev : tail_events) {
                    if (ev.energy > 0.0 && check_collapse(field, ev, policy)) {
                        cont.needs_second_draw = true;  // rare: resolved per shot
                        ok = false;
                        break;
                    }
                    if (ev.energy > 0.0) {
                        field = apply_deformation(field, ev, cfg.deform, cfg.units);
                        cont.slit2 = EventOutcome::Deformed;
                    }
                }
                if (!ok) continue;
                auto s = static_cast<std::size_t>(std::llround(field.t / cfg.dt));
                while (s < max_steps) {
                    wprop.advance(field);
                    ++s;
                    if (detail::mass_beyond(field, cfg.screen_x) > 0.5) {
                        cont.arrived = true;
                        break;
                    }
                }
                if (cont.arrived) {
                    cont.t_arrival = field.t;
                    cont.y_cdf = detail::screen_cdf(field, cfg.screen_x);
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    std::map<std::size_t, const detail::Continuation*> by_cell;
    for (std::size_t i = 0; i < distinct.size(); ++i) by_cell[distinct[i]] = &conts[i];

    // pass 3: per-shot outcomes in seed order
    for (std::size_t shot = 0; shot < cfg.n_shots; ++shot) {
        DoubleSlitShot& rec = res.shots[shot];
        for (std::size_t e = 0; e < first_idx; ++e)
            (e == 0 ? rec.slit1 : rec.slit2) = pre_outcomes[e];
        (first_idx == 0 ? rec.slit1 : rec.slit2) = EventOutcome::Collapsed;
        rec.collapsed_at_barrier = true;
        rec.collapse_site = g.position(shot_cell[shot]);
        ++res.n_collapsed_at_barrier;

        const detail::Continuation& cont = *by_cell.at(shot_cell[shot]);
        if (cont.needs_second_draw) {
            // honest slow path: resume this shot's rng mid-stream
            Wavefield field = apply_collapse(f_star, rec.collapse_site, policy.op);
            bool arrived = false;
            for (const InteractionEvent& ev : tail_events) {
                if (ev.energy > 0.0 && check_collapse(field, ev, policy)) {
                    const Vec2 site = born_sample(field, shot_rng[shot]);
                    field = apply_collapse(field, site, policy.op);
                    rec.slit2 = EventOutcome::Collapsed;
                } else if (ev.energy > 0.0) {
                    field = apply_deformation(field, ev, cfg.deform, cfg.units);
                    rec.slit2 = EventOutcome::Deformed;
                }
            }
            Propagator sprop(g, pot, cfg.dt, cfg.units);
            auto s = static_cast<std::size_t>(std::llround(field.t / cfg.dt));
            while (s < max_steps) {
                sprop.advance(field);
                ++s;
                if (detail::mass_beyond(field, cfg.screen_x) > 0.5) {
                    arrived = true;
                    break;
                }
            }
            if (arrived) {
                rec.arrived = true;
                rec.screen_y = detail::sample_transverse(
                    detail::screen_cdf(field, cfg.screen_x), g, shot_rng[shot]);
            }
        } else if (cont.arrived) {
            rec.slit2 = first_idx == 0 ? cont.slit2 : rec.slit2;
            rec.arrived = true;
            rec.screen_y = detail::sample_transverse(cont.y_cdf, g, shot_rng[shot]);
        } else {
            rec.slit2 = first_idx == 0 ? cont.slit2 : rec.slit2;
        }

        if (rec.arrived) {
            res.hist.counts[bin_of(rec.screen_y)] += 1.0;
            ++res.n_arrived;
        } else {
            ++res.n_dropped;
        }
    }
    res.visibility =
        res.n_arrived >= 100 ? visibility(res.hist, res.fringe_period) : std::nan("");
    return res;
}

}  // namespace dow
