// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qsense/config.hpp"
#include "qsense/table.hpp"

using namespace qsense;

namespace {

std::string config_dir() {
    const char* dir = std::getenv("QSENSE_CONFIG_DIR");
    return dir ? dir : "configs";
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/qsense_test_" + name;
    std::ofstream f(path);
    f << body;
    return path;
}

struct RunResult {
    int code;
    std::string out;
};

// Runs the CLI binary (path from QSENSE_BIN) and captures stdout.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("QSENSE_BIN");
    REQUIRE(bin != nullptr);
    const std::string out_path = "/tmp/qsense_cli_out.txt";
    const std::string cmd =
        std::string(bin) + " " + args + " > " + out_path + " 2>/tmp/qsense_cli_err.txt";
    const int raw = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(raw), ss.str()};
}

}  // namespace

TEST_CASE("csv round trip at 12 significant digits") {
    Table t;
    t.columns = {{"n", ""}, {"delta_omega", "rad/us"}, {"fom", "1/us^2"}};
    t.add_row({1.0, 0.123456789012345, 7.0371e2});
    t.add_row({16.0, 3.3e-11, 1.0 / 3.0});

    std::stringstream ss;
    emit_table(t, ss, TableFormat::Csv);
    const std::string text = ss.str();
    CHECK(text.substr(0, text.find('\n')) == "n,delta_omega [rad/us],fom [1/us^2]");
    CHECK(text.back() == '\n');

    std::stringstream in(text);
    const Table back = parse_csv(in);
    REQUIRE(back.columns.size() == 3);
    CHECK(back.columns[1].name == "delta_omega");
    CHECK(back.columns[1].unit == "rad/us");
    REQUIRE(back.rows.size() == 2);
    for (size_t i = 0; i < t.rows.size(); ++i)
        for (size_t j = 0; j < 3; ++j) {
            const double want = t.rows[i][j];
            const double got = back.rows[i][j];
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
}

TEST_CASE("aligned table format") {
    Table t;
    t.columns = {{"a", ""}, {"b", "us"}};
    t.add_row({1.0, 2.5});
    std::stringstream ss;
    emit_table(t, ss, TableFormat::Aligned);
    const std::string text = ss.str();
    CHECK(text.find("b [us]") != std::string::npos);
    CHECK(text.find("2.5") != std::string::npos);
}

TEST_CASE("empty tables are refused") {
    Table t;
    t.columns = {{"x", ""}};
    std::stringstream ss;
    CHECK_THROWS_AS(emit_table(t, ss, TableFormat::Csv), Error);
}

TEST_CASE("unit parsing and unknown-key rejection") {
    // Frequencies in MHz by default; 11.2 MHz -> 2*pi*11.2 rad/us appears in
    // the sweep column when sweeping omega.
    const std::string good = R"({
        "model": "nv-drive",
        "probe": {"polarization": 1.0},
        "target": {"omega": 11.2, "delta": "0 MHz", "phi": "90 deg"},
        "sequence": {"n_loops": 0, "dwell": 30, "hyperfine": "-2.16 MHz"},
        "noise": {"kind": "averaged", "sigma": 0.02},
        "sweep": {"axis": "omega", "start": "10 MHz", "stop": "12 MHz", "count": 3}
    })";
    const auto path = write_temp("sweep_good.json", good);
    const Table t = cli::run_scenario(cli::Subcommand::NvSweep, path, 0);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][0] == doctest::Approx(2 * M_PI * 10.0).epsilon(1e-12));
    CHECK(t.rows[2][0] == doctest::Approx(2 * M_PI * 12.0).epsilon(1e-12));

    const std::string bad_key = R"({
        "model": "nv-drive",
        "probe": {"polarization": 1.0, "polarisation": 0.9},
        "target": {"omega": 11.2, "delta": 0, "phi": 90},
        "sequence": {"n_loops": 0, "dwell": 30},
        "noise": {"kind": "averaged", "sigma": 0.02},
        "sweep": {"axis": "omega", "start": 10, "stop": 12, "count": 3}
    })";
    CHECK_THROWS_AS(
        cli::run_scenario(cli::Subcommand::NvSweep, write_temp("bad_key.json", bad_key), 0),
        ConfigError);

    const std::string bad_unit = R"({
        "model": "nv-drive",
        "probe": {"polarization": 1.0},
        "target": {"omega": "11.2 Hz", "delta": 0, "phi": 90},
        "sequence": {"n_loops": 0, "dwell": 30},
        "noise": {"kind": "averaged", "sigma": 0.02},
        "sweep": {"axis": "omega", "start": 10, "stop": 12, "count": 3}
    })";
    CHECK_THROWS_AS(
        cli::run_scenario(cli::Subcommand::NvSweep, write_temp("bad_unit.json", bad_unit), 0),
        ConfigError);

    const std::string empty_grid = R"({
        "model": "nv-drive",
        "probe": {"polarization": 1.0},
        "target": {"omega": 11.2, "delta": 0, "phi": 90},
        "sequence": {"n_loops": 0, "dwell": 30},
        "noise": {"kind": "averaged", "sigma": 0.02},
        "sweep": {"axis": "omega", "start": 10, "stop": 12, "count": 0}
    })";
    CHECK_THROWS_AS(cli::run_scenario(cli::Subcommand::NvSweep,
                                      write_temp("empty_grid.json", empty_grid), 0),
                    ConfigError);
}

TEST_CASE("subcommand name mapping") {
    CHECK(cli::parse_subcommand("compare") == cli::Subcommand::Compare);
    CHECK(cli::parse_subcommand("projection-vs-shot") == cli::Subcommand::ProjectionVsShot);
    CHECK_THROWS_AS(cli::parse_subcommand("frobnicate"), ConfigError);
}

TEST_CASE("bundled configs run and reproduce their reference numbers") {
    const std::string cfg = config_dir();

    // ideal-qfim: numeric QFIM/CFIM columns match the analytic ones.
    const Table q = cli::run_scenario(cli::Subcommand::IdealQfim, cfg + "/ideal_qfim.json", 0);
    REQUIRE(q.rows.size() == 20);
    for (const auto& row : q.rows)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(row[4 + j] - row[10 + j]) < 1e-5 * row[10 + j]);  // qfim vs analytic
            CHECK(std::abs(row[7 + j] - row[10 + j]) < 1e-5 * row[10 + j]);  // cfim vs analytic
        }

    // rotated-optimum: optimized value means the reference minimum.
    const Table r =
        cli::run_scenario(cli::Subcommand::RotatedOptimum, cfg + "/rotated_optimum.json", 0);
    REQUIRE(r.rows.size() == 1);
    CHECK(std::abs(r.rows[0][3] - r.rows[0][5]) < 1e-6 * r.rows[0][5]);

    // scaling: all three fitted exponents near 1.
    const Table sc = cli::run_scenario(cli::Subcommand::Scaling, cfg + "/scaling.json", 0);
    REQUIRE(sc.rows.size() == 5);
    for (int j = 4; j < 7; ++j) {
        CHECK(sc.rows[0][j] > 0.9);
        CHECK(sc.rows[0][j] < 1.1);
    }

    // maps: rotated basis is finite at B = 0 and equals 6 sigma^2/T^2 there.
    const Table mp = cli::run_scenario(cli::Subcommand::Maps, cfg + "/maps.json", 0);
    bool checked = false;
    for (const auto& row : mp.rows)
        if (row[0] == 0.0) {
            CHECK(std::isfinite(row[2]));
            CHECK(std::abs(row[2] - 6 * 0.01 * 0.01 / (row[1] * row[1])) <
                  1e-6 * row[2]);
            checked = true;
        }
    CHECK(checked);

    // projection-vs-shot: projection below shot at every N.
    const Table pv = cli::run_scenario(cli::Subcommand::ProjectionVsShot,
                                       cfg + "/projection_vs_shot.json", 0);
    REQUIRE(pv.rows.size() == 5);
    for (const auto& row : pv.rows)
        for (int j = 0; j < 3; ++j) CHECK(row[1 + j] < row[4 + j]);
}

TEST_CASE("bundled compare config reproduces the strategy ratios") {
    const Table t =
        cli::run_scenario(cli::Subcommand::Compare, config_dir() + "/compare.json", 0);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(t.rows[0][1] == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(t.rows[0][2] == doctest::Approx(1.5 * (std::sqrt(3.0) + 2.0)).epsilon(1e-6));
}

TEST_CASE("cli binary end to end") {
    if (!std::getenv("QSENSE_BIN")) {
        MESSAGE("QSENSE_BIN not set; skipping binary checks");
        return;
    }
    const std::string cfg = config_dir();

    auto compare = run_cli("compare --config " + cfg + "/compare.json");
    CHECK(compare.code == 0);
    CHECK(compare.out.find("5.598") != std::string::npos);
    CHECK(compare.out.find("\n9,") != std::string::npos);

    // Determinism: identical config + seed gives byte-identical output.
    auto again = run_cli("compare --config " + cfg + "/compare.json");
    CHECK(again.out == compare.out);

    // Table format.
    auto aligned = run_cli("compare --config " + cfg + "/compare.json --format table");
    CHECK(aligned.code == 0);
    CHECK(aligned.out.find("optimal_rotated") != std::string::npos);

    // The P = 0.5 singularity maps to a nonzero pipeline exit code.
    const std::string singular = R"({
        "model": "ideal",
        "probe": {"polarization": 0.5},
        "target": {"omega": 11.2, "delta": 0, "phi": 90},
        "sequence": {"n_loops": 1, "dwell": 30},
        "noise": {"kind": "averaged", "sigma": 0.02},
        "n_values": [1, 2, 4]
    })";
    const auto sing_path = write_temp("singular.json", singular);
    auto failing = run_cli("scaling --config " + sing_path);
    CHECK(failing.code == 3);
    std::ifstream err("/tmp/qsense_cli_err.txt");
    std::stringstream es;
    es << err.rdbuf();
    CHECK(es.str().find("SingularJacobian") != std::string::npos);

    // Bad config exits with the config code.
    auto missing = run_cli("scaling --config /nonexistent.json");
    CHECK(missing.code == 4);

    // nv-sweep default config: N = 0 flat signals with the leakage model.
    auto sweep = run_cli("nv-sweep --config " + cfg + "/nv_sweep.json");
    CHECK(sweep.code == 0);
    CHECK(sweep.out.find("0.20625") != std::string::npos);
    CHECK(sweep.out.find("0.1625") != std::string::npos);

    // --out writes a file identical to stdout output.
    auto to_file = run_cli("compare --config " + cfg + "/compare.json --out /tmp/qsense_cmp.csv");
    CHECK(to_file.code == 0);
    std::ifstream f("/tmp/qsense_cmp.csv");
    std::stringstream fs;
    fs << f.rdbuf();
    CHECK(fs.str() == compare.out);
}
