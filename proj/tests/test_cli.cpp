#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dow/io/config.hpp"

namespace fs = std::filesystem;

namespace {

std::string dowsim_bin() {
    const char* env = std::getenv("DOWSIM_BIN");
    REQUIRE(env != nullptr);
    return env;
}

int run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd =
        env_prefix + " " + dowsim_bin() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dowsim_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("config parser accepts the documented format") {
    std::stringstream ss;
    ss << "# comment\n[evolve]\ngrid.n = 128  # trailing comment\ndt = 1e-3\n";
    const auto cfg = dow::RunConfig::parse_stream(ss);
    CHECK(cfg.section() == "evolve");
    CHECK(cfg.get_u64("grid.n", 0) == 128);
    CHECK(cfg.get_double("dt", 0.0) == 1e-3);
    CHECK(cfg.get_string("missing", "fallback") == "fallback");

    std::stringstream two;
    two << "[a]\nx = 1\n[b]\ny = 2\n";
    CHECK_THROWS_AS(dow::RunConfig::parse_stream(two), dow::ConfigError);

    std::stringstream nosec;
    nosec << "x = 1\n";
    CHECK_THROWS_AS(dow::RunConfig::parse_stream(nosec), dow::ConfigError);

    std::stringstream dup;
    dup << "[a]\nx = 1\nx = 2\n";
    CHECK_THROWS_AS(dow::RunConfig::parse_stream(dup), dow::ConfigError);
}

TEST_CASE("cli exit codes: success, config error, bad arguments") {
    const fs::path dir = fresh_dir("exit");
    CHECK(run("localization-table --out " + (dir / "ok").string()) == 0);
    // missing config file
    CHECK(run("evolve --config /nonexistent.cfg --out " + (dir / "m").string()) == 2);
    // config required
    CHECK(run("evolve --out " + (dir / "n").string()) == 2);
    // unknown subcommand
    CHECK(run("frobnicate") == 2);
    // section mismatch
    write_file(dir / "bad.cfg", "[evolve]\ngrid.n = 128\n");
    CHECK(run("trajectory --config " + (dir / "bad.cfg").string() + " --out " +
              (dir / "o").string()) == 2);
    // invalid value (width <= 0)
    write_file(dir / "loc.cfg", "[localization-table]\nwidths_nm = 1,-0.5\n");
    CHECK(run("localization-table --config " + (dir / "loc.cfg").string() + " --out " +
              (dir / "p").string()) == 2);
}

TEST_CASE("evolve run: free-spreading law visible in the CSV") {
    const fs::path dir = fresh_dir("evolve");
    write_file(dir / "run.cfg",
               "[evolve]\ngrid.n = 256\ngrid.x_min = -20\ngrid.x_max = 20\n"
               "packet.sigma = 1.0\ndt = 1e-3\nn_steps = 2000\nrecord_every = 100\n"
               "snapshot_every = 500\n");
    REQUIRE(run("evolve --config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out").string()) == 0);

    std::ifstream csv(dir / "out" / "width_history.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,delta_x,delta_p,norm");
    double t = 0, dx = 0, dp = 0, norm = 0;
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::stringstream ss(line);
        ss >> t >> dx >> dp >> norm;
        const double expect = std::sqrt(1.0 + 0.25 * t * t);
        CHECK(dx == Catch::Approx(expect).epsilon(0.01));
        CHECK(norm == Catch::Approx(1.0).margin(1e-10));
        ++rows;
    }
    CHECK(rows >= 21);
    CHECK(fs::exists(dir / "out" / "spacetime.pgm"));
    CHECK(fs::exists(dir / "out" / "run_summary.csv"));
    CHECK(fs::exists(dir / "out" / "run_metadata.txt"));
}

TEST_CASE("trajectory run writes events and width history") {
    const fs::path dir = fresh_dir("traj");
    write_file(dir / "run.cfg",
               "[trajectory]\ngrid.n = 256\ngrid.x_min = -20\ngrid.x_max = 20\n"
               "packet.sigma = 1.0\ndt = 1e-3\nn_steps = 1500\nseed = 9\n"
               "operator.width = 0.2\n"
               "event.1.t = 0.5\nevent.1.energy = 0.0625\nevent.1.extent = 0.5\n"
               "event.2.t = 1.0\nevent.2.energy = 0.9\nevent.2.extent = 0.5\n");
    REQUIRE(run("trajectory --config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out").string()) == 0);
    const std::string events = slurp(dir / "out" / "events.csv");
    CHECK(events.find("deformed") != std::string::npos);
    CHECK(events.find("collapsed") != std::string::npos);
}

TEST_CASE("born-check json summary and seed override") {
    const fs::path dir = fresh_dir("born");
    write_file(dir / "run.cfg",
               "[born-check]\ngrid.n = 128\ngrid.x_min = -8\ngrid.x_max = 8\n"
               "field = two-peak\ntwopeak.mass1 = 0.25\nn_draws = 20000\nseed = 4\n");
    REQUIRE(run("born-check --config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out").string() + " --format json") == 0);
    const std::string summary = slurp(dir / "out" / "run_summary.json");
    CHECK(summary.find("tv_distance") != std::string::npos);
    CHECK(summary.find("chi2_pvalue") != std::string::npos);

    // --seed overrides the config seed: different draws
    REQUIRE(run("born-check --config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out2").string() + " --seed 4") == 0);
    REQUIRE(run("born-check --config " + (dir / "run.cfg").string() + " --out " +
                (dir / "out3").string() + " --seed 5") == 0);
    CHECK(slurp(dir / "out2" / "born_histogram.csv") !=
          slurp(dir / "out3" / "born_histogram.csv"));
}

TEST_CASE("identical config and seed give byte-identical outputs at any parallelism") {
    const fs::path dir = fresh_dir("determinism");
    write_file(dir / "ds.cfg",
               "[double-slit]\nn_shots = 300\nseed = 21\n"
               "whichpath.energy = 0.6\nwhichpath.extent = 0.5\n");
    REQUIRE(run("double-slit --config " + (dir / "ds.cfg").string() + " --out " +
                (dir / "a").string(),
                "DOWSIM_THREADS=1") == 0);
    REQUIRE(run("double-slit --config " + (dir / "ds.cfg").string() + " --out " +
                (dir / "b").string(),
                "DOWSIM_THREADS=2") == 0);
    CHECK(slurp(dir / "a" / "screen_histogram.csv") ==
          slurp(dir / "b" / "screen_histogram.csv"));
    CHECK(slurp(dir / "a" / "shots.csv") == slurp(dir / "b" / "shots.csv"));
    CHECK(slurp(dir / "a" / "run_summary.csv") == slurp(dir / "b" / "run_summary.csv"));

    write_file(dir / "ent.cfg",
               "[entangle]\nn = 256\nhalf_extent = 6\ns = 0.2\nS = 3\n"
               "n_shots = 500\nseed = 13\n");
    REQUIRE(run("entangle --config " + (dir / "ent.cfg").string() + " --out " +
                (dir / "c").string()) == 0);
    REQUIRE(run("entangle --config " + (dir / "ent.cfg").string() + " --out " +
                (dir / "d").string()) == 0);
    CHECK(slurp(dir / "c" / "joint_samples.csv") == slurp(dir / "d" / "joint_samples.csv"));
}

TEST_CASE("compare subcommand reproduces the shipped table") {
    const fs::path dir = fresh_dir("compare");
    REQUIRE(run("compare --out " + (dir / "out").string()) == 0);
    const std::string csv = slurp(dir / "out" / "comparison.csv");
    CHECK(csv.find("DOW,24,") != std::string::npos);
    CHECK(csv.find("GRW,18,") != std::string::npos);
    CHECK(csv.find("Epistemic,8,") != std::string::npos);
}
