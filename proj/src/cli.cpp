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

#include "era/cli.hpp"
#include "era/errors.hpp"
#include "era/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <thread>

using nlohmann::ordered_json;

namespace era::cli
{
    void apply_overrides(RunConfig &cfg, const Overrides &o)
    {
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.output_dir)
            cfg.output_dir = *o.output_dir;
        if (o.solver)
            cfg.solver = *o.solver;
        if (o.feed)
            cfg.feed.kind = *o.feed;
        if (o.step_deg)
            cfg.feed.step_deg = *o.step_deg;
        if (o.target_az_deg)
            cfg.target.az_deg = *o.target_az_deg;
        if (o.target_el_deg)
            cfg.target.el_deg = *o.target_el_deg;
    }

    BeamformerWeights make_precoder(const RunConfig &cfg)
    {
        if (cfg.feed.kind == FeedKind::matched)
            return matched_precoder(cfg.tx_array, cfg.target.to_direction());
        return phase_gradient_precoder(cfg.tx_array.n_elements(), deg2rad(cfg.feed.step_deg));
    }

    namespace
    {
        constexpr double neg_inf = -std::numeric_limits<double>::infinity();
        constexpr double probe_halfwidth_deg = 5.0;

        double azimuth_distance_deg(double a, double b)
        {
            double d = std::fmod(std::abs(a - b), 360.0);
            return std::min(d, 360.0 - d);
        }

        // Largest sample outside the main lobe within +-5 deg azimuth of the probe
        double probe_sidelobe(const BeampatternSamples &p, const SidelobeMetrics &lobes, double probe_az_deg)
        {
            double best = neg_inf;
            for (std::size_t k = 0; k < p.values.size(); ++k)
            {
                if (k >= lobes.lobe_first && k <= lobes.lobe_last)
                    continue;
                if (azimuth_distance_deg(p.grid[k].azimuth_deg(), probe_az_deg) <= probe_halfwidth_deg)
                    best = std::max(best, power_db(p.values[k]));
            }
            return best;
        }

        SelectionConfig solve(const RunConfig &cfg, const PatternDictionary &dict, const BeamformerWeights &f)
        {
            const DirectionAngle target = cfg.target.to_direction();
            if (cfg.solver == SolverKind::exhaustive)
                return select_patterns_exhaustive(cfg.tx_array, dict, f, target);
            return select_patterns_greedy(cfg.tx_array, dict, f, target);
        }

        // a - b in dB; equal values (including two -inf) give exactly 0
        double db_delta(double a, double b)
        {
            return a == b ? 0.0 : a - b;
        }
    }

    PointResult evaluate_point(const RunConfig &cfg, const PatternDictionary &dict, std::optional<std::size_t> fixed_state)
    {
        PointResult r;
        const DirectionAngle target = cfg.target.to_direction();
        const DirectionAngle rx_target = cfg.rx_target.to_direction();

        r.precoder = make_precoder(cfg);
        r.combiner = matched_precoder(cfg.rx_array, rx_target);
        if (fixed_state)
        {
            if (*fixed_state >= dict.size())
                throw config_error("baseline_state: index " + std::to_string(*fixed_state) + " out of range");
            r.tx_selection = SelectionConfig::uniform(cfg.tx_array.n_elements(), *fixed_state);
            r.rx_selection = SelectionConfig::uniform(cfg.rx_array.n_elements(), *fixed_state);
        }
        else
        {
            r.tx_selection = solve(cfg, dict, r.precoder);
            r.rx_selection = select_patterns_greedy(cfg.rx_array, dict, r.combiner, rx_target);
        }

        r.pattern = beampattern(cfg.tx_array, dict, r.tx_selection, r.precoder, cfg.grid.directions());
        r.lobes = sidelobe_metrics(r.pattern, target);
        r.target_intensity = beampattern_at(cfg.tx_array, dict, r.tx_selection, r.precoder, target);
        r.probe_sidelobe_db = probe_sidelobe(r.pattern, r.lobes, cfg.sidelobe_probe_az_deg);

        const PathSet paths = draw_scenario(scenario_params(cfg));
        r.gamma = normalization_factor(cfg.tx_array.n_elements(), cfg.rx_array.n_elements(), paths);
        const arma::cx_mat h_er = channel_era_direct(paths, cfg.tx_array, cfg.rx_array, dict, r.tx_selection, r.rx_selection);
        r.link = snr_and_rate(h_er, r.precoder, r.combiner, cfg.link);
        return r;
    }

    namespace
    {
        ordered_json point_json(const PointResult &r)
        {
            ordered_json j;
            j["gamma"] = r.gamma;
            j["target_intensity_db"] = db_value(power_db(r.target_intensity));
            j["main_beam_db"] = db_value(r.lobes.main_db);
            j["peak_db"] = db_value(r.lobes.peak_db);
            j["peak_sidelobe_db"] = db_value(r.lobes.peak_sidelobe_db);
            j["probe_sidelobe_db"] = db_value(r.probe_sidelobe_db);
            j["snr"] = r.link.snr;
            j["snr_db"] = db_value(power_db(r.link.snr));
            j["rate"] = r.link.rate;
            j["tx_selection"] = r.tx_selection.indices();
            j["rx_selection"] = r.rx_selection.indices();
            return j;
        }

        ordered_json summary_json(const std::string &command, const RunConfig &cfg, const PointResult &r,
                                  const std::vector<std::filesystem::path> &outputs)
        {
            ordered_json j;
            j["command"] = command;
            j["config"] = config_to_json(cfg);
            j["seed"] = cfg.seed;
            j["solver"] = to_string(cfg.solver);
            j["feed"] = to_string(cfg.feed.kind);
            const ordered_json point = point_json(r);
            for (const auto &item : point.items())
                j[item.key()] = item.value();
            ordered_json files = ordered_json::array();
            for (const auto &f : outputs)
                files.push_back(f.filename().string());
            j["outputs"] = files;
            return j;
        }

        std::filesystem::path out_path(const RunConfig &cfg, const char *name)
        {
            return std::filesystem::path(cfg.output_dir) / name;
        }
    }

    std::vector<std::filesystem::path> cmd_beampattern(const RunConfig &cfg)
    {
        const PatternDictionary dict = build_dictionary(cfg);
        const PointResult r = evaluate_point(cfg, dict);
        const auto csv = out_path(cfg, "beampattern.csv");
        const auto summary = out_path(cfg, "summary.json");
        write_beampattern_csv(csv, r.pattern);
        write_json(summary, summary_json("beampattern", cfg, r, {csv, summary}));
        return {csv, summary};
    }

    std::vector<std::filesystem::path> cmd_optimize(const RunConfig &cfg)
    {
        const PatternDictionary dict = build_dictionary(cfg);
        const PointResult r = evaluate_point(cfg, dict);
        const auto summary = out_path(cfg, "summary.json");
        write_json(summary, summary_json("optimize", cfg, r, {summary}));
        return {summary};
    }

    std::vector<std::filesystem::path> cmd_channel(const RunConfig &cfg)
    {
        const PatternDictionary dict = build_dictionary(cfg);
        const PointResult r = evaluate_point(cfg, dict);
        const PathSet paths = draw_scenario(scenario_params(cfg));
        const ChannelRealization ch = realize_channels(paths, cfg.tx_array, cfg.rx_array, dict, r.tx_selection,
                                                       r.rx_selection, cfg.baseline_state.value_or(0));

        const auto cv = out_path(cfg, "h_cv.csv"), em = out_path(cfg, "h_em.csv"), er = out_path(cfg, "h_er.csv");
        const auto summary = out_path(cfg, "summary.json");
        write_channel_csv(cv, *ch.h_cv);
        write_channel_csv(em, *ch.h_em);
        write_channel_csv(er, *ch.h_er);

        ordered_json j = summary_json("channel", cfg, r, {cv, em, er, summary});
        auto dims = [](const std::filesystem::path &f, const arma::cx_mat &H)
        { return ordered_json{{"file", f.filename().string()}, {"rows", H.n_rows}, {"cols", H.n_cols}}; };
        j["dictionary_size"] = dict.size();
        j["baseline_state"] = cfg.baseline_state.value_or(0);
        j["paths"] = paths.total_count();
        j["channels"] = {{"h_cv", dims(cv, *ch.h_cv)}, {"h_em", dims(em, *ch.h_em)}, {"h_er", dims(er, *ch.h_er)}};
        write_json(summary, j);
        return {cv, em, er, summary};
    }

    std::vector<std::filesystem::path> cmd_compare(const RunConfig &cfg)
    {
        if (!cfg.baseline_state)
            throw config_error("baseline_state: required by compare");
        const PatternDictionary dict = build_dictionary(cfg);
        const PointResult era = evaluate_point(cfg, dict);
        const PointResult base = evaluate_point(cfg, dict, *cfg.baseline_state);

        const auto era_csv = out_path(cfg, "beampattern_era.csv");
        const auto base_csv = out_path(cfg, "beampattern_baseline.csv");
        const auto report = out_path(cfg, "compare.json");
        write_beampattern_csv(era_csv, era.pattern);
        write_beampattern_csv(base_csv, base.pattern);

        ordered_json j;
        j["command"] = "compare";
        j["config"] = config_to_json(cfg);
        j["seed"] = cfg.seed;
        j["baseline_state"] = *cfg.baseline_state;
        j["era"] = point_json(era);
        j["baseline"] = point_json(base);
        j["delta"] = {
            {"target_intensity_db", db_value(db_delta(power_db(era.target_intensity), power_db(base.target_intensity)))},
            {"main_beam_db", db_value(db_delta(era.lobes.main_db, base.lobes.main_db))},
            {"peak_sidelobe_db", db_value(db_delta(era.lobes.peak_sidelobe_db, base.lobes.peak_sidelobe_db))},
            {"probe_sidelobe_db", db_value(db_delta(era.probe_sidelobe_db, base.probe_sidelobe_db))},
            {"snr_db", db_value(db_delta(power_db(era.link.snr), power_db(base.link.snr)))}};
        j["outputs"] = {era_csv.filename().string(), base_csv.filename().string(), report.filename().string()};
        write_json(report, j);
        return {era_csv, base_csv, report};
    }

    std::vector<std::filesystem::path> cmd_sweep(const RunConfig &cfg)
    {
        if (!cfg.sweep)
            throw config_error("sweep: required by the sweep command");
        const SweepSpec &sweep = *cfg.sweep;
        const PatternDictionary dict = build_dictionary(cfg);
        const std::size_t n = sweep.n_points();
        if (n == 0)
            throw config_error("sweep: no points");

        auto point_config = [&](std::size_t k)
        {
            RunConfig c = cfg;
            c.sweep.reset();
            switch (sweep.axis)
            {
            case SweepAxis::target_az_deg:
                c.target.az_deg = sweep.values[k];
                break;
            case SweepAxis::transmit_power:
                c.link.transmit_power = sweep.values[k];
                break;
            case SweepAxis::seed:
                c.seed = trial_seed(cfg.seed, k);
                break;
            }
            return c;
        };

        // Points are independent; rows are written in sweep order afterwards
        std::vector<PointResult> results(n);
        std::vector<std::exception_ptr> errors(n);
        const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
        auto work = [&](std::size_t first)
        {
            for (std::size_t k = first; k < n; k += workers)
            {
                try
                {
                    results[k] = evaluate_point(point_config(k), dict);
                }
                catch (...)
                {
                    errors[k] = std::current_exception();
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 1; w < workers; ++w)
                pool.emplace_back(work, w);
            work(0);
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        const auto csv = out_path(cfg, "sweep.csv");
        const auto summary = out_path(cfg, "summary.json");
        std::string text = "point,value,target_intensity_db,main_beam_db,peak_sidelobe_db,snr,rate\n";
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const PointResult &r = results[k];
            const double value = sweep.axis == SweepAxis::seed ? double(trial_seed(cfg.seed, k)) : sweep.values[k];
            char buf[512];
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", k, value,
                          power_db(r.target_intensity), r.lobes.main_db, r.lobes.peak_sidelobe_db, r.link.snr, r.link.rate);
            text += buf;
            sum += r.link.snr;
            sum_sq += r.link.snr * r.link.snr;
        }
        const double mean = sum / double(n);
        const double var = n > 1 ? std::max(0.0, (sum_sq - double(n) * mean * mean) / double(n - 1)) : 0.0;

        write_text(csv, text);

        ordered_json j;
        j["command"] = "sweep";
        j["config"] = config_to_json(cfg);
        j["seed"] = cfg.seed;
        j["points"] = n;
        j["mean_snr"] = mean;
        j["std_error_snr"] = std::sqrt(var / double(n));
        j["outputs"] = {csv.filename().string(), summary.filename().string()};
        write_json(summary, j);
        return {csv, summary};
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Channel, beampattern and pattern-selection tool for arrays of pattern-reconfigurable elements", "era"};
        app.require_subcommand(1, 1);

        std::string config_path;
        Overrides ov;
        std::string solver, feed;
        std::uint64_t seed = 0;
        std::string out_dir;
        double step_deg = 0.0, target_az = 0.0, target_el = 0.0;

        app.add_option("--config", config_path, "JSON run configuration (defaults apply when omitted)")->check(CLI::ExistingFile);
        auto *o_seed = app.add_option("--seed", seed, "Random seed");
        auto *o_out = app.add_option("--out", out_dir, "Output directory");
        auto *o_solver = app.add_option("--solver", solver, "Pattern selection solver")->check(CLI::IsMember({"greedy", "exhaustive"}));
        auto *o_feed = app.add_option("--feed", feed, "Transmit feed")->check(CLI::IsMember({"matched", "phase-gradient"}));
        auto *o_step = app.add_option("--step-deg", step_deg, "Adjacent-element phase step of the phase-gradient feed");
        auto *o_az = app.add_option("--target-az-deg", target_az, "Target azimuth");
        auto *o_el = app.add_option("--target-el-deg", target_el, "Target elevation");

        using Command = std::vector<std::filesystem::path> (*)(const RunConfig &);
        const std::vector<std::tuple<const char *, const char *, Command>> commands{
            {"beampattern", "Beampattern over the configured azimuth cut", &cmd_beampattern},
            {"channel", "Dump conventional, EM-domain and reconfigurable channel matrices", &cmd_channel},
            {"optimize", "Select element patterns for the target direction", &cmd_optimize},
            {"compare", "Reconfigurable array against a fixed-state conventional array", &cmd_compare},
            {"sweep", "Aggregate results over a target angle, transmit power or seed axis", &cmd_sweep}};
        for (const auto &[name, help, fn] : commands)
            app.add_subcommand(name, help)->fallthrough();

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? 0 : 2;
        }

        const auto start = std::chrono::steady_clock::now();
        const std::string name = app.get_subcommands().front()->get_name();
        try
        {
            RunConfig cfg = config_path.empty() ? default_run_config() : load_config(config_path);
            if (*o_seed)
                ov.seed = seed;
            if (*o_out)
                ov.output_dir = out_dir;
            if (*o_solver)
                ov.solver = solver == "greedy" ? SolverKind::greedy : SolverKind::exhaustive;
            if (*o_feed)
                ov.feed = feed == "matched" ? FeedKind::matched : FeedKind::phase_gradient;
            if (*o_step)
                ov.step_deg = step_deg;
            if (*o_az)
                ov.target_az_deg = target_az;
            if (*o_el)
                ov.target_el_deg = target_el;
            apply_overrides(cfg, ov);

            for (const auto &[cmd_name, help, fn] : commands)
                if (name == cmd_name)
                {
                    for (const auto &f : fn(cfg))
                        out << f.string() << '\n';
                }
        }
        catch (const config_error &e)
        {
            err << "era " << name << ": configuration error: " << e.what() << '\n';
            return 2;
        }
        catch (const std::exception &e)
        {
            err << "era " << name << ": error: " << e.what() << '\n';
            return 1;
        }

        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        err << "era " << name << ": done in " << ms << " ms\n";
        return 0;
    }
}
