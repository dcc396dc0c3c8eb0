// SPDX-License-Identifier: Apache-2.0
//
// era-channel: channel modelling for arrays of pattern-reconfigurable antenna elements
// Copyright (C) 2026 The era-channel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "era/cli.hpp"
#include "era/errors.hpp"
#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace era;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace
{
    struct CliResult
    {
        int code = -1;
        std::string out, err;
    };

    CliResult run_cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "era");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        CliResult r;
        r.code = cli::run(int(argv.size()), argv.data(), out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    std::filesystem::path write_config(const std::filesystem::path &dir, const std::string &text)
    {
        const auto file = dir / "config.json";
        std::ofstream(file) << text;
        return file;
    }

    json read_json(const std::filesystem::path &file) { return json::parse(oracle::read_file(file)); }

    std::size_t count_lines(const std::string &text) { return std::size_t(std::count(text.begin(), text.end(), '\n')); }

    // Numeric column of a CSV file (header skipped)
    std::vector<double> csv_column(const std::filesystem::path &file, std::size_t col)
    {
        std::istringstream in(oracle::read_file(file));
        std::string line;
        std::getline(in, line);
        std::vector<double> out;
        while (std::getline(in, line))
        {
            std::istringstream ls(line);
            std::string cell;
            for (std::size_t c = 0; c <= col; ++c)
                std::getline(ls, cell, ',');
            out.push_back(std::stod(cell));
        }
        return out;
    }
}

TEST_CASE("help and argument errors", "[cli]")
{
    const auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK_THAT(help.out, ContainsSubstring("beampattern"));

    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"beampattern", "compare"}).code == 2);
    CHECK(run_cli({"beampattern", "--solver", "annealing"}).code == 2);
    CHECK(run_cli({"beampattern", "--config", "/nonexistent/era.json"}).code == 2);
}

TEST_CASE("invalid config exits with code 2 and a message", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_bad_config");
    const auto cfg = write_config(dir, R"({"tx_array": {"n_horizontal": 12, "n_vertical": 1, "spacing_wavelengths": -0.5}})");
    const auto r = run_cli({"beampattern", "--config", cfg.string(), "--out", (dir / "out").string()});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("spacing_wavelengths"));
    CHECK_FALSE(std::filesystem::exists(dir / "out"));
}

TEST_CASE("beampattern with the default configuration", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_default_beampattern");
    const auto r = run_cli({"beampattern", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("beampattern.csv"));
    CHECK(count_lines(oracle::read_file(dir / "beampattern.csv")) == 722);

    const json s = read_json(dir / "summary.json");
    CHECK(check_summary_schema(s).empty());
    CHECK(s["command"] == "beampattern");
    CHECK(s["tx_selection"].size() == 12);
}

TEST_CASE("beampattern with the phase-gradient feed", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_feed180");
    const auto r = run_cli({"beampattern", "--out", dir.string(), "--feed", "phase-gradient", "--step-deg", "180"});
    REQUIRE(r.code == 0);
    const json s = read_json(dir / "summary.json");
    CHECK(s["config"]["feed"]["kind"] == "phase-gradient");
    CHECK(s["config"]["feed"]["step_deg"] == 180.0);

    // A 180 deg step steers the array factor to endfire (az 90 deg); state 2 tilts the peak towards 135 deg
    const auto az = csv_column(dir / "beampattern.csv", 0);
    const auto db = csv_column(dir / "beampattern.csv", 2);
    REQUIRE(az.size() == 721);
    const auto peak = std::size_t(std::max_element(db.begin(), db.end()) - db.begin());
    CHECK(az[peak] >= 90.0);
    CHECK(az[peak] <= 135.0);
}

TEST_CASE("overrides are echoed into the summary", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_overrides");
    const auto r = run_cli({"optimize", "--out", dir.string(), "--seed", "7", "--solver", "exhaustive", "--target-az-deg",
                            "100", "--target-el-deg", "80"});
    REQUIRE(r.code == 0);
    const json s = read_json(dir / "summary.json");
    CHECK(s["seed"] == 7);
    CHECK(s["config"]["seed"] == 7);
    CHECK(s["config"]["solver"] == "exhaustive");
    CHECK(s["config"]["target"]["az_deg"] == 100.0);
    CHECK(s["config"]["target"]["el_deg"] == 80.0);
    CHECK(s["config"]["output_dir"] == dir.string());
}

TEST_CASE("optimize", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_optimize");
    const auto cfg = write_config(dir, R"({"tx_array": {"n_horizontal": 4, "n_vertical": 1, "spacing_wavelengths": 0.5},
                                           "target": {"az_deg": 120, "el_deg": 90}})");
    REQUIRE(run_cli({"optimize", "--config", cfg.string(), "--out", (dir / "g").string()}).code == 0);
    REQUIRE(run_cli({"optimize", "--config", cfg.string(), "--out", (dir / "e").string(), "--solver", "exhaustive"}).code == 0);
    const json g = read_json(dir / "g" / "summary.json"), e = read_json(dir / "e" / "summary.json");
    CHECK(g["tx_selection"].size() == 4);
    CHECK(g["tx_selection"] == e["tx_selection"]);
    CHECK(g["target_intensity_db"] == e["target_intensity_db"]);
    CHECK(check_summary_schema(g).empty());

    SECTION("exhaustive search beyond the guard is refused")
    {
        const auto big = write_config(dir, R"({"tx_array": {"n_horizontal": 13, "n_vertical": 1, "spacing_wavelengths": 0.5}})");
        const auto r = run_cli({"optimize", "--config", big.string(), "--out", (dir / "big").string(), "--solver", "exhaustive"});
        CHECK(r.code == 1);
        CHECK_THAT(r.err, ContainsSubstring("1000000"));
    }
}

TEST_CASE("compare", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_compare");
    SECTION("default dictionary: the reconfigurable array wins at the target")
    {
        REQUIRE(run_cli({"compare", "--out", dir.string()}).code == 0);
        const json c = read_json(dir / "compare.json");
        CHECK(c["era"]["main_beam_db"].get<double>() > c["baseline"]["main_beam_db"].get<double>());
        CHECK(c["delta"]["main_beam_db"].get<double>() > 0.0);
        CHECK(c["baseline"]["tx_selection"] == json(std::vector<unsigned>(12, 1u)));
        CHECK(count_lines(oracle::read_file(dir / "beampattern_era.csv")) == 722);
        CHECK(count_lines(oracle::read_file(dir / "beampattern_baseline.csv")) == 722);
    }
    SECTION("single-pattern dictionary: every delta is zero")
    {
        const auto cfg = write_config(dir, R"({"baseline_state": 0, "dictionary": [
            {"kind": "steered_power_cosine", "boresight_az_deg": 90, "boresight_el_deg": 90, "exponent": 2, "peak_dbi": 8}]})");
        REQUIRE(run_cli({"compare", "--config", cfg.string(), "--out", (dir / "one").string()}).code == 0);
        const json c = read_json(dir / "one" / "compare.json");
        for (const auto &item : c["delta"].items())
            CHECK(item.value() == 0.0);
        CHECK(oracle::read_file(dir / "one" / "beampattern_era.csv") ==
              oracle::read_file(dir / "one" / "beampattern_baseline.csv"));
    }
    SECTION("missing baseline state is a configuration error")
    {
        const auto cfg = write_config(dir, "{}");
        const auto r = run_cli({"compare", "--config", cfg.string(), "--out", (dir / "none").string()});
        CHECK(r.code == 2);
        CHECK_THAT(r.err, ContainsSubstring("baseline_state"));
    }
}

TEST_CASE("channel", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_channel");
    SECTION("single-pattern dictionary: H_ER file equals H_CV file")
    {
        const auto cfg = write_config(dir, R"({"baseline_state": 0, "rx_array": {"n_horizontal": 2, "n_vertical": 2},
            "dictionary": [{"kind": "steered_power_cosine", "boresight_az_deg": 60, "exponent": 3, "peak_dbi": 5}]})");
        REQUIRE(run_cli({"channel", "--config", cfg.string(), "--out", dir.string()}).code == 0);
        CHECK(oracle::read_file(dir / "h_er.csv") == oracle::read_file(dir / "h_cv.csv"));
    }
    SECTION("dumped H_ER equals gamma D H_EM B^T from the dumped H_EM, and the dumps are byte-stable")
    {
        const auto cfg = write_config(dir, R"({"rx_array": {"n_horizontal": 3, "n_vertical": 1},
            "scenario": {"los": {"model": "random_phase"}, "clusters": [{"paths": 2, "variance": 1}, {"paths": 3, "variance": 0.5}],
                         "angles": {"model": "uniform", "el_min_deg": 60, "el_max_deg": 120}}})");
        REQUIRE(run_cli({"channel", "--config", cfg.string(), "--out", (dir / "a").string(), "--seed", "11"}).code == 0);
        REQUIRE(run_cli({"channel", "--config", cfg.string(), "--out", (dir / "b").string(), "--seed", "11"}).code == 0);

        const json s = read_json(dir / "a" / "summary.json");
        CHECK(s["paths"] == 6);
        CHECK(check_summary_schema(s).empty());
        const arma::cx_mat Hem = read_channel_csv(dir / "a" / "h_em.csv");
        const arma::cx_mat Her = read_channel_csv(dir / "a" / "h_er.csv");
        REQUIRE(Hem.n_rows == 9);
        REQUIRE(Hem.n_cols == 36);
        const arma::mat B = oracle::dense_selection(s["tx_selection"].get<std::vector<std::size_t>>(), 3);
        const arma::mat D = oracle::dense_selection(s["rx_selection"].get<std::vector<std::size_t>>(), 3);
        const arma::cx_mat ref = s["gamma"].get<double>() * arma::cx_mat(D, arma::mat(D.n_rows, D.n_cols, arma::fill::zeros)) * Hem *
                                 arma::cx_mat(B.t(), arma::mat(B.n_cols, B.n_rows, arma::fill::zeros));
        CHECK(oracle::rel_fro(Her, ref) <= 1e-10);

        for (const char *f : {"h_cv.csv", "h_em.csv", "h_er.csv"})
            CHECK(oracle::read_file(dir / "a" / f) == oracle::read_file(dir / "b" / f));

        REQUIRE(run_cli({"channel", "--config", cfg.string(), "--out", (dir / "c").string(), "--seed", "12"}).code == 0);
        CHECK(oracle::read_file(dir / "a" / "h_er.csv") != oracle::read_file(dir / "c" / "h_er.csv"));
    }
}

TEST_CASE("sweep", "[cli]")
{
    const auto dir = oracle::scratch_dir("cli_sweep");
    SECTION("a one-point sweep reproduces the single run")
    {
        const auto cfg = write_config(dir, R"({"sweep": {"axis": "target_az_deg", "values": [120]}})");
        REQUIRE(run_cli({"sweep", "--config", cfg.string(), "--out", (dir / "s").string()}).code == 0);
        REQUIRE(run_cli({"beampattern", "--config", cfg.string(), "--out", (dir / "b").string(), "--target-az-deg", "120"}).code ==
                0);
        const json b = read_json(dir / "b" / "summary.json");
        const auto csv = dir / "s" / "sweep.csv";
        CHECK(count_lines(oracle::read_file(csv)) == 2);
        CHECK(csv_column(csv, 2)[0] == b["target_intensity_db"].get<double>());
        CHECK(csv_column(csv, 3)[0] == b["main_beam_db"].get<double>());
        CHECK(csv_column(csv, 5)[0] == b["snr"].get<double>());
        CHECK(csv_column(csv, 6)[0] == b["rate"].get<double>());
    }
    SECTION("angle sweep 45..135 step 5 has 19 rows in order")
    {
        const auto cfg = write_config(dir, R"({"sweep": {"axis": "target_az_deg", "start": 45, "stop": 135, "step": 5}})");
        REQUIRE(run_cli({"sweep", "--config", cfg.string(), "--out", dir.string()}).code == 0);
        const auto pts = csv_column(dir / "sweep.csv", 0);
        const auto vals = csv_column(dir / "sweep.csv", 1);
        REQUIRE(pts.size() == 19);
        for (std::size_t k = 0; k < 19; ++k)
        {
            CHECK(pts[k] == double(k));
            CHECK(vals[k] == Catch::Approx(45.0 + 5.0 * double(k)));
        }
        CHECK(read_json(dir / "summary.json")["points"] == 19);
    }
    SECTION("standard error of the mean SNR halves with four times the trials")
    {
        const std::string scenario = R"("scenario": {"los": {"model": "none"}, "clusters": [{"paths": 4, "variance": 1}]})";
        const auto c1 = write_config(dir, "{" + scenario + R"(, "sweep": {"axis": "seed", "trials": 2000}})");
        REQUIRE(run_cli({"sweep", "--config", c1.string(), "--out", (dir / "n").string()}).code == 0);
        const auto c4 = write_config(dir, "{" + scenario + R"(, "sweep": {"axis": "seed", "trials": 8000}})");
        REQUIRE(run_cli({"sweep", "--config", c4.string(), "--out", (dir / "n4").string()}).code == 0);
        const double se1 = read_json(dir / "n" / "summary.json")["std_error_snr"].get<double>();
        const double se4 = read_json(dir / "n4" / "summary.json")["std_error_snr"].get<double>();
        const double ratio = se4 / se1;
        INFO("ratio " << ratio);
        CHECK(ratio > 0.4);
        CHECK(ratio < 0.6);
    }
    SECTION("missing sweep block")
    {
        CHECK(run_cli({"sweep", "--out", dir.string()}).code == 2);
    }
}
