#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dow/collapse.hpp"
#include "dow/deformation.hpp"
#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/evolution.hpp"
#include "dow/parallel.hpp"
#include "dow/rng.hpp"

namespace dow {

enum class EventOutcome { NoEffect, Deformed, Collapsed };

inline const char* to_string(EventOutcome o) {
    switch (o) {
        case EventOutcome::NoEffect: return "no-effect";
        case EventOutcome::Deformed: return "deformed";
        case EventOutcome::Collapsed: return "collapsed";
    }
    return "?";
}

struct EventRecord {
    InteractionEvent event;   // t replaced by the snapped step time
    EventOutcome outcome = EventOutcome::NoEffect;
    Vec2 location{0.0, 0.0};  // collapse site, valid when Collapsed
};

struct TrajectoryResult {
    std::vector<std::pair<double, double>> width_history;  // (t, effective width)
    std::vector<EventRecord> events_log;
    Wavefield final_field;
    std::uint64_t seed = 0;
};

/// The event engine: unitary propagation punctuated by scheduled interaction
/// events. At each event the policy decides — at or above threshold the field
/// collapses to a Born-sampled location; below it a positive transfer deforms
/// the field; zero transfers are logged and ignored. Evolution continues from
/// whatever the event left behind. Event times snap to the nearest step
/// boundary. Deterministic given the seed.
inline TrajectoryResult run_trajectory(const Wavefield& psi0, const Potential& v,
                                       std::span<const InteractionEvent> events,
                                       const CollapsePolicy& policy,
                                       const DeformationParams& deform,
                                       const EvolutionConfig& cfg, SeededRng& rng) {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (events[i].t < events[i - 1].t)
            throw UnsortedEvents("run_trajectory: events must be sorted by time");
    for (const InteractionEvent& ev : events) {
        if (!(ev.energy >= 0.0)) throw ConfigError("run_trajectory: event energy < 0");
        if (!(ev.extent >= psi0.grid.dx[0]))
            throw ConfigError("run_trajectory: event extent must be >= dx");
    }

    TrajectoryResult res;
    res.seed = rng.seed();
    Wavefield psi = psi0;

    // snap events to step boundaries
    std::vector<std::size_t> event_step(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        double k = cfg.dt > 0.0 ? std::llround((events[i].t - psi0.t) / cfg.dt) : 0.0;
        if (k < 0.0) k = 0.0;
        if (k > static_cast<double>(cfg.n_steps)) k = static_cast<double>(cfg.n_steps);
        event_step[i] = static_cast<std::size_t>(k);
    }

    std::optional<Propagator> prop;
    if (cfg.n_steps > 0 && cfg.dt != 0.0) prop.emplace(psi.grid, v, cfg.dt, cfg.units);

    std::size_t next_event = 0;
    res.width_history.emplace_back(psi.t, effective_width(psi));
    for (std::size_t s = 0; s <= cfg.n_steps; ++s) {
        const double t_now = psi0.t + static_cast<double>(s) * cfg.dt;
        while (next_event < events.size() && event_step[next_event] == s) {
            const InteractionEvent& ev = events[next_event];
            EventRecord rec;
            rec.event = ev;
            rec.event.t = t_now;
            if (ev.energy > 0.0 && check_collapse(psi, ev, policy)) {
                rec.outcome = EventOutcome::Collapsed;
                rec.location = born_sample(psi, rng);
                psi = apply_collapse(psi, rec.location, policy.op);
            } else if (ev.energy > 0.0) {
                rec.outcome = EventOutcome::Deformed;
                psi = apply_deformation(psi, ev, deform, cfg.units);
            } else {
                rec.outcome = EventOutcome::NoEffect;
            }
            res.events_log.push_back(rec);
            ++next_event;
        }
        if (s == cfg.n_steps) break;
        if (prop) prop->advance(psi);
        res.width_history.emplace_back(psi.t, effective_width(psi));
    }
    res.final_field = std::move(psi);
    return res;
}

/// Ensemble entry point: one trajectory per seed, results ordered by seed
/// position regardless of how many workers run them.
inline std::vector<TrajectoryResult> run_ensemble(
    const Wavefield& psi0, const Potential& v,
    std::span<const InteractionEvent> events, const CollapsePolicy& policy,
    const DeformationParams& deform, const EvolutionConfig& cfg,
    std::span<const std::uint64_t> seeds, int threads = 0) {
    std::vector<TrajectoryResult> out(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) {
        SeededRng rng(seeds[i]);
        out[i] = run_trajectory(psi0, v, events, policy, deform, cfg, rng);
    });
    return out;
}

}  // namespace dow
