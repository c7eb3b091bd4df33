// dowsim: command-line front end for the wavefield collapse simulator.
// Subcommands: evolve | trajectory | double-slit | born-check |
// localization-table | compare | entangle. Each reads a flat key-value
// config file (one [section] matching the subcommand) and writes CSV
// outputs plus a run summary into --out. All outputs are deterministic
// given the config and seed; wall-clock metadata goes to a separate file.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dow/dow.hpp"
#include "dow/io/config.hpp"
#include "dow/io/csv.hpp"
#include "dow/io/pgm.hpp"

namespace fs = std::filesystem;
using namespace dow;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string format = "csv";
};

using Summary = std::vector<std::pair<std::string, std::string>>;

void write_summary(const GlobalOpts& g, const std::string& command, const Summary& rows) {
    if (g.format == "json") {
        nlohmann::ordered_json j;
        j["command"] = command;
        for (const auto& [k, v] : rows) j[k] = v;
        std::ofstream out(fs::path(g.out_dir) / "run_summary.json");
        out << j.dump(2) << '\n';
    } else {
        CsvWriter out(fs::path(g.out_dir) / "run_summary.csv", {"key", "value"});
        out.write_row({"command", command});
        for (const auto& [k, v] : rows) out.write_row({k, v});
    }
}

void write_metadata(const GlobalOpts& g, const std::string& command, double wall_seconds) {
    std::ofstream out(fs::path(g.out_dir) / "run_metadata.txt");
    out << "command: " << command << "\n"
        << "config: " << g.config_path << "\n"
        << "wall_seconds: " << wall_seconds << "\n";
}

UnitSystem units_from(const RunConfig& cfg) {
    const std::string label = cfg.get_string("units", "natural");
    if (label == "natural") return UnitSystem::natural();
    if (label == "si-electron") return UnitSystem::si_electron();
    throw ConfigError("units must be 'natural' or 'si-electron'");
}

GridSpec grid_from(const RunConfig& cfg) {
    const auto n = static_cast<std::size_t>(cfg.get_u64("grid.n", 256));
    const double x_min = cfg.get_double("grid.x_min", -10.0);
    const double x_max = cfg.get_double("grid.x_max", 10.0);
    if (cfg.has("grid.ny")) {
        const auto ny = static_cast<std::size_t>(cfg.get_u64("grid.ny", n));
        return GridSpec::plane(n, x_min, x_max, ny, cfg.get_double("grid.y_min", x_min),
                               cfg.get_double("grid.y_max", x_max));
    }
    return GridSpec::line(n, x_min, x_max);
}

Wavefield packet_from(const RunConfig& cfg, const GridSpec& grid) {
    const Vec2 center{cfg.get_double("packet.x0", 0.0), cfg.get_double("packet.y0", 0.0)};
    const double sx = cfg.get_double("packet.sigma", 1.0);
    const Vec2 sigma{sx, cfg.get_double("packet.sigma_y", sx)};
    const Vec2 k0{cfg.get_double("packet.k0", 0.0), cfg.get_double("packet.k0y", 0.0)};
    return gaussian_packet(grid, center, sigma, k0);
}

BarrierPotential barrier_from(const RunConfig& cfg) {
    BarrierPotential b;
    b.position = cfg.get_double("barrier.position", 0.0);
    b.thickness = cfg.get_double("barrier.thickness", 0.5);
    b.height = cfg.get_double("barrier.height", 120.0);
    for (int i = 1; cfg.has("barrier.slit" + std::to_string(i) + ".center"); ++i) {
        const std::string p = "barrier.slit" + std::to_string(i);
        b.slits.push_back(
            {cfg.require_double(p + ".center"), cfg.require_double(p + ".width")});
    }
    return b;
}

Potential potential_from(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("potential", "free");
    if (kind == "free") return FreePotential{};
    if (kind == "harmonic")
        return HarmonicPotential{cfg.get_double("harmonic.stiffness", 1.0),
                                 {cfg.get_double("harmonic.center_x", 0.0),
                                  cfg.get_double("harmonic.center_y", 0.0)}};
    if (kind == "barrier") return barrier_from(cfg);
    throw ConfigError("potential must be free, harmonic or barrier");
}

CollapsePolicy policy_from(const RunConfig& cfg, const GridSpec& grid,
                           const UnitSystem& units) {
    CollapsePolicy p;
    p.units = units;
    const std::string crit = cfg.get_string("policy.criterion", "simple");
    if (crit == "simple") {
        p.criterion = CollapseCriterion::SimpleThreshold;
    } else if (crit == "indicator") {
        p.criterion = CollapseCriterion::IndicatorIntegral;
        p.epsilon_c = cfg.require_double("policy.epsilon_c");
        p.deformation_constant = cfg.require_double("policy.D");
    } else {
        throw ConfigError("policy.criterion must be simple or indicator");
    }
    const std::string shape = cfg.get_string("operator.shape", "gaussian");
    if (shape == "gaussian")
        p.op = {OperatorShape::Gaussian,
                cfg.get_double("operator.width", 2.0 * std::max(grid.dx[0], grid.dx[1]))};
    else if (shape == "delta")
        p.op = {OperatorShape::DeltaLike, 0.0};
    else
        throw ConfigError("operator.shape must be gaussian or delta");
    return p;
}

DeformationParams deform_from(const RunConfig& cfg) {
    DeformationParams d;
    d.gamma = cfg.get_double("deform.gamma", 1.0);
    const std::string mode = cfg.get_string("deform.mode", "multiplicative");
    if (mode == "multiplicative")
        d.mode = AccumulationMode::Multiplicative;
    else if (mode == "additive")
        d.mode = AccumulationMode::Additive;
    else
        throw ConfigError("deform.mode must be multiplicative or additive");
    return d;
}

std::vector<InteractionEvent> events_from(const RunConfig& cfg) {
    std::vector<InteractionEvent> events;
    for (int i = 1; cfg.has("event." + std::to_string(i) + ".t"); ++i) {
        const std::string p = "event." + std::to_string(i);
        InteractionEvent ev;
        ev.t = cfg.require_double(p + ".t");
        ev.energy = cfg.require_double(p + ".energy");
        ev.extent = cfg.require_double(p + ".extent");
        ev.center = {cfg.get_double(p + ".center", 0.0),
                     cfg.get_double(p + ".center_y", 0.0)};
        events.push_back(ev);
    }
    return events;
}

// ---------------------------------------------------------------- evolve --

void run_evolve(const RunConfig& cfg, const GlobalOpts& g) {
    const UnitSystem units = units_from(cfg);
    const GridSpec grid = grid_from(cfg);
    Wavefield psi = packet_from(cfg, grid);
    const Potential pot = potential_from(cfg);
    const double dt = cfg.get_double("dt", 1e-3);
    const auto n_steps = static_cast<std::size_t>(cfg.get_u64("n_steps", 1000));
    const auto record_every = static_cast<std::size_t>(cfg.get_u64("record_every", 1));
    const auto snapshot_every = static_cast<std::size_t>(cfg.get_u64("snapshot_every", 0));

    Propagator prop(grid, pot, dt, units);
    CsvWriter hist(fs::path(g.out_dir) / "width_history.csv",
                   {"t", "delta_x", "delta_p", "norm"});
    std::vector<double> spacetime;  // 1D runs: one |psi|^2 row per snapshot
    std::size_t snapshots = 0;

    const auto record = [&](const Wavefield& f) {
        const Vec2 dx = position_spread(f);
        const Vec2 dp = momentum_spread(f, units);
        const double wx = grid.dim == 1 ? dx[0] : std::sqrt(dx[0] * dx[1]);
        const double wp = grid.dim == 1 ? dp[0] : std::sqrt(dp[0] * dp[1]);
        hist.write_row({csv_double(f.t), csv_double(wx), csv_double(wp),
                        csv_double(norm_squared(f))});
    };
    const auto snapshot = [&](const Wavefield& f) {
        if (grid.dim == 2) {
            char name[32];
            std::snprintf(name, sizeof name, "field_%06zu.pgm", snapshots);
            write_field_pgm(fs::path(g.out_dir) / name, f);
        } else {
            for (const cplx& a : f.amps) spacetime.push_back(std::norm(a));
        }
        ++snapshots;
    };

    record(psi);
    if (snapshot_every > 0) snapshot(psi);
    for (std::size_t s = 1; s <= n_steps; ++s) {
        prop.advance(psi);
        if (s % record_every == 0 || s == n_steps) record(psi);
        if (snapshot_every > 0 && (s % snapshot_every == 0 || s == n_steps)) snapshot(psi);
    }
    if (!spacetime.empty())
        write_pgm(fs::path(g.out_dir) / "spacetime.pgm", grid.n[0], snapshots, spacetime);

    write_summary(g, "evolve",
                  {{"n_steps", std::to_string(n_steps)},
                   {"final_t", csv_double(psi.t)},
                   {"final_delta_x", csv_double(effective_width(psi))},
                   {"final_norm", csv_double(norm_squared(psi))}});
}

// ------------------------------------------------------------ trajectory --

void run_trajectory_cmd(const RunConfig& cfg, const GlobalOpts& g) {
    const UnitSystem units = units_from(cfg);
    const GridSpec grid = grid_from(cfg);
    const Wavefield psi0 = packet_from(cfg, grid);
    const Potential pot = potential_from(cfg);
    const EvolutionConfig ecfg{cfg.get_double("dt", 1e-3),
                               static_cast<std::size_t>(cfg.get_u64("n_steps", 1000)),
                               units};
    const CollapsePolicy policy = policy_from(cfg, grid, units);
    const DeformationParams deform = deform_from(cfg);
    const std::vector<InteractionEvent> events = events_from(cfg);
    const std::uint64_t seed = g.seed.value_or(cfg.get_u64("seed", 1));

    SeededRng rng(seed);
    const TrajectoryResult res =
        run_trajectory(psi0, pot, events, policy, deform, ecfg, rng);

    CsvWriter hist(fs::path(g.out_dir) / "width_history.csv", {"t", "delta_x"});
    for (const auto& [t, w] : res.width_history)
        hist.write_row({csv_double(t), csv_double(w)});

    CsvWriter ev(fs::path(g.out_dir) / "events.csv",
                 {"index", "t", "energy", "outcome", "loc_x", "loc_y"});
    for (std::size_t i = 0; i < res.events_log.size(); ++i) {
        const EventRecord& r = res.events_log[i];
        const bool c = r.outcome == EventOutcome::Collapsed;
        ev.write_row({std::to_string(i), csv_double(r.event.t),
                      csv_double(r.event.energy), to_string(r.outcome),
                      c ? csv_double(r.location[0]) : "",
                      c ? csv_double(r.location[1]) : ""});
    }

    std::size_t n_collapsed = 0, n_deformed = 0;
    for (const EventRecord& r : res.events_log) {
        n_collapsed += r.outcome == EventOutcome::Collapsed;
        n_deformed += r.outcome == EventOutcome::Deformed;
    }
    write_summary(g, "trajectory",
                  {{"seed", std::to_string(seed)},
                   {"n_events", std::to_string(res.events_log.size())},
                   {"n_collapsed", std::to_string(n_collapsed)},
                   {"n_deformed", std::to_string(n_deformed)},
                   {"final_delta_x", csv_double(effective_width(res.final_field))},
                   {"final_norm", csv_double(norm_squared(res.final_field))}});
}

// ------------------------------------------------------------ double-slit --

void run_double_slit(const RunConfig& cfg, const GlobalOpts& g) {
    DoubleSlitConfig ds = DoubleSlitConfig::standard();
    ds.units = units_from(cfg);
    if (cfg.has("grid.n")) {
        const auto n = static_cast<std::size_t>(cfg.get_u64("grid.n", 64));
        const auto ny = static_cast<std::size_t>(cfg.get_u64("grid.ny", 128));
        ds.grid = GridSpec::plane(n, cfg.get_double("grid.x_min", -6.0),
                                  cfg.get_double("grid.x_max", 6.0), ny,
                                  cfg.get_double("grid.y_min", -6.0),
                                  cfg.get_double("grid.y_max", 6.0));
    }
    ds.packet.center = {cfg.get_double("packet.x0", ds.packet.center[0]),
                        cfg.get_double("packet.y0", ds.packet.center[1])};
    ds.packet.sigma = {cfg.get_double("packet.sigma", ds.packet.sigma[0]),
                       cfg.get_double("packet.sigma_y", ds.packet.sigma[1])};
    ds.packet.k0x = cfg.get_double("packet.k0", ds.packet.k0x);
    if (cfg.has("barrier.slit1.center")) ds.barrier = barrier_from(cfg);
    ds.screen_x = cfg.get_double("screen_x", ds.screen_x);
    ds.n_shots = static_cast<std::size_t>(cfg.get_u64("n_shots", ds.n_shots));
    ds.seed0 = g.seed.value_or(cfg.get_u64("seed", ds.seed0));
    ds.dt = cfg.get_double("dt", ds.dt);
    ds.t_max = cfg.get_double("t_max", ds.t_max);
    ds.bins.n_bins = static_cast<std::size_t>(cfg.get_u64("bins.n", ds.bins.n_bins));
    ds.bins.lo = cfg.get_double("bins.lo", ds.bins.lo);
    ds.bins.hi = cfg.get_double("bins.hi", ds.bins.hi);
    ds.operator_width = cfg.get_double("operator.width", ds.operator_width);
    ds.fringe_period_override = cfg.get_double("fringe_period", 0.0);
    ds.deform = deform_from(cfg);
    if (cfg.has("whichpath.energy"))
        ds.which_path = WhichPathDetector{cfg.require_double("whichpath.energy"),
                                          cfg.get_double("whichpath.extent", 0.5)};

    const DoubleSlitResult res = double_slit(ds);

    CsvWriter hist(fs::path(g.out_dir) / "screen_histogram.csv",
                   {"bin_lo", "bin_hi", "count", "exact_probability"});
    for (std::size_t b = 0; b < res.hist.counts.size(); ++b)
        hist.write_row({csv_double(res.hist.edges[b]), csv_double(res.hist.edges[b + 1]),
                        csv_double(res.hist.counts[b]),
                        res.exact_screen_density.empty()
                            ? ""
                            : csv_double(res.exact_screen_density[b])});

    CsvWriter shots(fs::path(g.out_dir) / "shots.csv",
                    {"shot", "slit1", "slit2", "collapse_x", "collapse_y", "arrived",
                     "screen_y"});
    for (std::size_t i = 0; i < res.shots.size(); ++i) {
        const DoubleSlitShot& s = res.shots[i];
        shots.write_row({std::to_string(i), to_string(s.slit1), to_string(s.slit2),
                         s.collapsed_at_barrier ? csv_double(s.collapse_site[0]) : "",
                         s.collapsed_at_barrier ? csv_double(s.collapse_site[1]) : "",
                         s.arrived ? "1" : "0",
                         s.arrived ? csv_double(s.screen_y) : ""});
    }

    if (cfg.get_u64("heatmap", 0) != 0 && !res.prescreen_field.amps.empty())
        write_field_pgm(fs::path(g.out_dir) / "prescreen.pgm", res.prescreen_field);

    write_summary(
        g, "double-slit",
        {{"seed", std::to_string(ds.seed0)},
         {"n_shots", std::to_string(res.hist.n_shots)},
         {"visibility", csv_double(res.visibility)},
         {"fringe_period", csv_double(res.fringe_period)},
         {"t_crossing", csv_double(res.t_crossing)},
         {"threshold_at_crossing", csv_double(res.threshold_at_crossing)},
         {"n_arrived", std::to_string(res.n_arrived)},
         {"n_dropped", std::to_string(res.n_dropped)},
         {"n_collapsed_at_barrier", std::to_string(res.n_collapsed_at_barrier)},
         {"n_deformed_at_barrier", std::to_string(res.n_deformed_at_barrier)}});
}

// ------------------------------------------------------------- born-check --

void run_born_check(const RunConfig& cfg, const GlobalOpts& g) {
    const GridSpec grid = grid_from(cfg);
    if (grid.dim != 1) throw ConfigError("born-check expects a 1D grid");
    Wavefield psi(grid);
    const std::string field = cfg.get_string("field", "gaussian");
    if (field == "gaussian") {
        psi = packet_from(cfg, grid);
    } else if (field == "two-peak") {
        const double x1 = cfg.get_double("twopeak.x1", -3.0);
        const double x2 = cfg.get_double("twopeak.x2", 3.0);
        const double sig = cfg.get_double("twopeak.sigma", 0.5);
        const double m1 = cfg.get_double("twopeak.mass1", 0.25);
        if (!(m1 > 0.0) || !(m1 < 1.0))
            throw ConfigError("twopeak.mass1 must be in (0,1)");
        const Wavefield a = gaussian_packet(grid, x1, sig, 0.0);
        const Wavefield b = gaussian_packet(grid, x2, sig, 0.0);
        for (std::size_t i = 0; i < psi.amps.size(); ++i)
            psi.amps[i] = std::sqrt(m1) * a.amps[i] + std::sqrt(1.0 - m1) * b.amps[i];
        psi = normalize(psi);
    } else {
        throw ConfigError("field must be gaussian or two-peak");
    }

    const auto n_draws = static_cast<std::size_t>(cfg.get_u64("n_draws", 100000));
    SeededRng rng(g.seed.value_or(cfg.get_u64("seed", 1)));
    const BornConvergenceResult res = born_convergence(psi, n_draws, rng);

    CsvWriter out(fs::path(g.out_dir) / "born_histogram.csv",
                  {"x", "expected_probability", "observed_count"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.write_row({csv_double(grid.coord(0, i)), csv_double(res.expected[i]),
                       csv_double(res.observed[i])});

    write_summary(g, "born-check",
                  {{"seed", std::to_string(rng.seed())},
                   {"n_draws", std::to_string(n_draws)},
                   {"tv_distance", csv_double(res.tv_distance)},
                   {"chi2", csv_double(res.chi2)},
                   {"chi2_pvalue", csv_double(res.chi2_pvalue)}});
}

// ----------------------------------------------------- localization-table --

void run_localization(const RunConfig* cfg, const GlobalOpts& g) {
    std::vector<double> widths_nm, widths_m;
    const std::string list =
        cfg ? cfg->get_string("widths_nm", "1,0.1,0.01,0.001") : "1,0.1,0.01,0.001";
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const double nm = std::stod(item);
            if (!(nm > 0.0)) throw ConfigError("localization width must be > 0");
            widths_nm.push_back(nm);
            widths_m.push_back(nm * 1e-9);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("widths_nm: not a number: " + item);
        }
    }
    const auto rows = localization_table(UnitSystem::si_electron(), widths_m);
    CsvWriter out(fs::path(g.out_dir) / "localization_table.csv",
                  {"delta_x_nm", "energy_ev"});
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.write_row({csv_double(widths_nm[i]), csv_double(rows[i].second)});
    write_summary(g, "localization-table", {{"n_rows", std::to_string(rows.size())}});
}

// ---------------------------------------------------------------- compare --

void run_compare(const RunConfig* cfg, const GlobalOpts& g) {
    RankingTable table;
    if (cfg && cfg->has("table")) {
        std::ifstream in(cfg->require_string("table"));
        if (!in)
            throw ConfigError("cannot open ranking table: " + cfg->require_string("table"));
        table = parse_ranking_table(in);
    } else {
        table = default_ranking_table();
    }
    const auto scores = scores_from_ranks(table);
    const auto post = posteriors(scores);
    CsvWriter out(fs::path(g.out_dir) / "comparison.csv",
                  {"model", "score", "posterior", "posterior_percent"});
    for (std::size_t i = 0; i < table.models.size(); ++i)
        out.write_row({table.models[i], std::to_string(scores[i]), csv_double(post[i]),
                       csv_double(100.0 * post[i])});
    int total = 0;
    for (int s : scores) total += s;
    write_summary(g, "compare",
                  {{"n_models", std::to_string(table.models.size())},
                   {"total_score", std::to_string(total)}});
}

// --------------------------------------------------------------- entangle --

void run_entangle(const RunConfig& cfg, const GlobalOpts& g) {
    EntangledPairConfig ec;
    ec.n = static_cast<std::size_t>(cfg.get_u64("n", ec.n));
    ec.half_extent = cfg.get_double("half_extent", ec.half_extent);
    ec.s = cfg.get_double("s", ec.s);
    ec.big_s = cfg.get_double("S", ec.big_s);
    ec.event_energy = cfg.get_double("event.energy", 0.0);
    ec.event_extent = cfg.get_double("event.extent", ec.event_extent);
    ec.event_site_a = cfg.get_double("event.site", 0.0);
    ec.operator_width = cfg.get_double("operator.width", 0.0);
    ec.n_shots = static_cast<std::size_t>(cfg.get_u64("n_shots", ec.n_shots));
    ec.seed0 = g.seed.value_or(cfg.get_u64("seed", ec.seed0));
    ec.units = units_from(cfg);

    const EntangledPairResult res = entangled_pair(ec);

    CsvWriter out(fs::path(g.out_dir) / "joint_samples.csv", {"shot", "x_a", "x_b"});
    for (std::size_t i = 0; i < res.x_a.size(); ++i)
        out.write_row({std::to_string(i), csv_double(res.x_a[i]), csv_double(res.x_b[i])});

    write_summary(
        g, "entangle",
        {{"seed", std::to_string(ec.seed0)},
         {"n_shots", std::to_string(ec.n_shots)},
         {"correlation", csv_double(res.correlation)},
         {"analytic_correlation", csv_double(res.analytic_correlation)},
         {"conditional_spread_b", csv_double(res.conditional_spread_b)},
         {"analytic_conditional_spread", csv_double(res.analytic_conditional_spread)},
         {"marginal_tv", csv_double(res.marginal_tv)},
         {"threshold", csv_double(res.threshold)},
         {"event_energy", csv_double(res.event_energy)}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dowsim: energy-threshold wavefield collapse simulator"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "path to the run config file");
    std::uint64_t seed_opt = 0;
    auto* seed_flag = app.add_option("--seed", seed_opt, "override the config seed");
    app.add_option("--out", g.out_dir, "output directory (created if missing)");
    app.add_option("--format", g.format, "summary format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* c_evolve = app.add_subcommand("evolve", "unitary propagation run");
    CLI::App* c_traj = app.add_subcommand("trajectory", "evolution punctuated by events");
    CLI::App* c_ds = app.add_subcommand("double-slit", "two-slit screen statistics");
    CLI::App* c_born = app.add_subcommand("born-check", "collapse-location statistics");
    CLI::App* c_loc =
        app.add_subcommand("localization-table", "minimum localizing energy per width");
    CLI::App* c_cmp = app.add_subcommand("compare", "interpretation ranking scores");
    CLI::App* c_ent = app.add_subcommand("entangle", "joint collapse of a correlated pair");
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_flag->count() > 0) g.seed = seed_opt;

    const auto t0 = std::chrono::steady_clock::now();
    std::string command;
    try {
        std::optional<RunConfig> cfg;
        if (!g.config_path.empty()) cfg = RunConfig::parse_file(g.config_path);

        const auto need_cfg = [&](const char* name) -> const RunConfig& {
            if (!cfg) throw ConfigError(std::string(name) + ": --config is required");
            if (cfg->section() != name)
                throw ConfigError("config section [" + cfg->section() +
                                  "] does not match " + name);
            return *cfg;
        };
        const auto optional_cfg = [&](const char* name) -> const RunConfig* {
            if (!cfg) return nullptr;
            if (cfg->section() != name)
                throw ConfigError("config section [" + cfg->section() +
                                  "] does not match " + name);
            return &*cfg;
        };

        fs::create_directories(g.out_dir);

        if (c_evolve->parsed()) {
            command = "evolve";
            run_evolve(need_cfg("evolve"), g);
        } else if (c_traj->parsed()) {
            command = "trajectory";
            run_trajectory_cmd(need_cfg("trajectory"), g);
        } else if (c_ds->parsed()) {
            command = "double-slit";
            run_double_slit(need_cfg("double-slit"), g);
        } else if (c_born->parsed()) {
            command = "born-check";
            run_born_check(need_cfg("born-check"), g);
        } else if (c_loc->parsed()) {
            command = "localization-table";
            run_localization(optional_cfg("localization-table"), g);
        } else if (c_cmp->parsed()) {
            command = "compare";
            run_compare(optional_cfg("compare"), g);
        } else if (c_ent->parsed()) {
            command = "entangle";
            run_entangle(need_cfg("entangle"), g);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    const auto t1 = std::chrono::steady_clock::now();
    write_metadata(g, command, std::chrono::duration<double>(t1 - t0).count());
    return 0;
}
