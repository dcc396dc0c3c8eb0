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

#include "era/scenario_io.hpp"
#include "era/errors.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

using nlohmann::json;
using nlohmann::ordered_json;

namespace era
{
    std::vector<PatternSpec> default_dictionary_specs()
    {
        std::vector<PatternSpec> out;
        for (double az : {45.0, 90.0, 135.0})
            out.push_back(PatternSpec{PatternKind::steered_power_cosine, {az, 90.0}, 2.0, 8.0, {}});
        return out;
    }

    RunConfig default_run_config()
    {
        RunConfig cfg;
        cfg.baseline_state = 1;
        return cfg;
    }

    std::vector<DirectionAngle> GridSpec::directions() const
    {
        return azimuth_cut(az_start_deg, az_stop_deg, az_step_deg, el_deg);
    }

    std::string to_string(SolverKind s)
    {
        return s == SolverKind::greedy ? "greedy" : "exhaustive";
    }

    std::string to_string(FeedKind f)
    {
        return f == FeedKind::matched ? "matched" : "phase-gradient";
    }

    namespace
    {
        std::string to_string(PatternKind k)
        {
            switch (k)
            {
            case PatternKind::isotropic:
                return "isotropic";
            case PatternKind::steered_power_cosine:
                return "steered_power_cosine";
            default:
                return "tabulated";
            }
        }

        std::string to_string(LosModel m)
        {
            switch (m)
            {
            case LosModel::none:
                return "none";
            case LosModel::fixed:
                return "fixed";
            default:
                return "random_phase";
            }
        }

        std::string to_string(AngleModel m)
        {
            return m == AngleModel::uniform ? "uniform" : "fixed";
        }

        std::string to_string(SweepAxis a)
        {
            switch (a)
            {
            case SweepAxis::target_az_deg:
                return "target_az_deg";
            case SweepAxis::transmit_power:
                return "transmit_power";
            default:
                return "seed";
            }
        }

        // Strict object access: every key must be consumed, types are checked per field
        class ObjectReader
        {
        public:
            ObjectReader(const json &j, std::string path) : obj_(j), path_(std::move(path))
            {
                if (!obj_.is_object())
                    throw config_error(where() + "expected an object");
            }

            std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            const json *get(const std::string &key)
            {
                seen_.insert(key);
                const auto it = obj_.find(key);
                return it == obj_.end() ? nullptr : &*it;
            }

            bool has(const std::string &key) const { return obj_.contains(key); }

            void number(const std::string &key, double &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_number())
                        throw config_error(field(key) + ": expected a number");
                    out = v->get<double>();
                    if (!std::isfinite(out))
                        throw config_error(field(key) + ": must be finite");
                }
            }

            template <typename U>
            void unsigned_integer(const std::string &key, U &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_number_unsigned())
                        throw config_error(field(key) + ": expected a nonnegative integer");
                    out = v->get<U>();
                }
            }

            void string(const std::string &key, std::string &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_string())
                        throw config_error(field(key) + ": expected a string");
                    out = v->get<std::string>();
                }
            }

            void angle(const std::string &az_key, const std::string &el_key, AngleDeg &out)
            {
                number(az_key, out.az_deg);
                number(el_key, out.el_deg);
            }

            void finish() const
            {
                for (const auto &item : obj_.items())
                    if (!seen_.count(item.key()))
                        throw config_error(field(item.key()) + ": unknown key");
            }

        private:
            std::string where() const { return path_.empty() ? "" : path_ + ": "; }

            const json &obj_;
            std::string path_;
            std::set<std::string> seen_;
        };

        ArrayGeometry read_array(const json &j, const std::string &path, const ArrayGeometry &fallback)
        {
            ObjectReader r(j, path);
            std::size_t nh = fallback.n_horizontal(), nv = fallback.n_vertical();
            double spacing = fallback.spacing_wavelengths();
            r.unsigned_integer("n_horizontal", nh);
            r.unsigned_integer("n_vertical", nv);
            r.number("spacing_wavelengths", spacing);
            r.finish();
            if (nh == 0)
                throw config_error(r.field("n_horizontal") + ": must be at least 1");
            if (nv == 0)
                throw config_error(r.field("n_vertical") + ": must be at least 1");
            if (!(spacing > 0.0))
                throw config_error(r.field("spacing_wavelengths") + ": must be positive");
            return ArrayGeometry(nh, nv, spacing);
        }

        AngleDeg read_angle(const json &j, const std::string &path, AngleDeg out)
        {
            ObjectReader r(j, path);
            r.angle("az_deg", "el_deg", out);
            r.finish();
            return out;
        }

        PatternSpec read_pattern(const json &j, const std::string &path, const std::filesystem::path &base_dir)
        {
            ObjectReader r(j, path);
            std::string kind;
            r.string("kind", kind);
            PatternSpec p;
            if (kind == "isotropic")
                p.kind = PatternKind::isotropic;
            else if (kind == "steered_power_cosine")
            {
                p.kind = PatternKind::steered_power_cosine;
                r.angle("boresight_az_deg", "boresight_el_deg", p.boresight);
                r.number("exponent", p.exponent);
                r.number("peak_dbi", p.peak_dbi);
                if (p.exponent < 0.0)
                    throw config_error(r.field("exponent") + ": must be nonnegative");
            }
            else if (kind == "tabulated")
            {
                p.kind = PatternKind::tabulated;
                r.string("file", p.file);
                if (p.file.empty())
                    throw config_error(r.field("file") + ": required for tabulated patterns");
                std::filesystem::path f(p.file);
                if (f.is_relative())
                    f = base_dir / f;
                if (!std::filesystem::exists(f))
                    throw config_error(r.field("file") + ": file not found: " + f.string());
                p.file = f.lexically_normal().string();
            }
            else
                throw config_error(r.field("kind") + ": expected isotropic, steered_power_cosine or tabulated");
            r.finish();
            return p;
        }

        ScenarioSpec read_scenario(const json &j, const std::string &path)
        {
            ObjectReader r(j, path);
            ScenarioSpec s;
            if (const json *los = r.get("los"))
            {
                ObjectReader lr(*los, r.field("los"));
                std::string model = to_string(s.los_model);
                lr.string("model", model);
                if (model == "none")
                    s.los_model = LosModel::none;
                else if (model == "fixed")
                    s.los_model = LosModel::fixed;
                else if (model == "random_phase")
                    s.los_model = LosModel::random_phase;
                else
                    throw config_error(lr.field("model") + ": expected none, fixed or random_phase");
                double re = s.los_gain.real(), im = s.los_gain.imag();
                lr.number("gain_re", re);
                lr.number("gain_im", im);
                s.los_gain = {re, im};
                lr.angle("aod_az_deg", "aod_el_deg", s.los_aod);
                lr.angle("aoa_az_deg", "aoa_el_deg", s.los_aoa);
                lr.finish();
            }
            if (const json *clusters = r.get("clusters"))
            {
                if (!clusters->is_array())
                    throw config_error(r.field("clusters") + ": expected an array");
                s.clusters.clear();
                for (std::size_t c = 0; c < clusters->size(); ++c)
                {
                    ObjectReader cr((*clusters)[c], r.field("clusters") + "[" + std::to_string(c) + "]");
                    ClusterParams cp;
                    cr.unsigned_integer("paths", cp.n_paths);
                    cr.number("variance", cp.variance);
                    cr.finish();
                    if (cp.variance < 0.0)
                        throw config_error(cr.field("variance") + ": must be nonnegative");
                    s.clusters.push_back(cp);
                }
            }
            if (const json *angles = r.get("angles"))
            {
                ObjectReader ar(*angles, r.field("angles"));
                std::string model = to_string(s.angle_model);
                ar.string("model", model);
                if (model == "uniform")
                    s.angle_model = AngleModel::uniform;
                else if (model == "fixed")
                    s.angle_model = AngleModel::fixed;
                else
                    throw config_error(ar.field("model") + ": expected uniform or fixed");
                ar.number("el_min_deg", s.el_min_deg);
                ar.number("el_max_deg", s.el_max_deg);
                ar.angle("aod_az_deg", "aod_el_deg", s.fixed_aod);
                ar.angle("aoa_az_deg", "aoa_el_deg", s.fixed_aoa);
                ar.finish();
                if (s.el_min_deg > s.el_max_deg)
                    throw config_error(ar.field("el_min_deg") + ": must not exceed el_max_deg");
            }
            r.finish();

            std::size_t total = s.los_model == LosModel::none ? 0 : 1;
            for (const auto &c : s.clusters)
                total += c.n_paths;
            if (total == 0)
                throw config_error(path + ": scenario has no paths");
            return s;
        }

        SweepSpec read_sweep(const json &j, const std::string &path)
        {
            ObjectReader r(j, path);
            std::string axis;
            r.string("axis", axis);
            SweepSpec s;
            if (axis == "target_az_deg")
                s.axis = SweepAxis::target_az_deg;
            else if (axis == "transmit_power")
                s.axis = SweepAxis::transmit_power;
            else if (axis == "seed")
                s.axis = SweepAxis::seed;
            else
                throw config_error(r.field("axis") + ": expected target_az_deg, transmit_power or seed");

            if (s.axis == SweepAxis::seed)
            {
                r.unsigned_integer("trials", s.trials);
                if (s.trials == 0)
                    throw config_error(r.field("trials") + ": seed sweeps need at least one trial");
            }
            else if (const json *values = r.get("values"))
            {
                if (!values->is_array() || values->empty())
                    throw config_error(r.field("values") + ": expected a nonempty array of numbers");
                for (const auto &v : *values)
                {
                    if (!v.is_number())
                        throw config_error(r.field("values") + ": expected numbers");
                    s.values.push_back(v.get<double>());
                }
            }
            else
            {
                double start = 0.0, stop = 0.0, step = 0.0;
                if (!r.has("start") || !r.has("stop") || !r.has("step"))
                    throw config_error(path + ": give either values or start, stop and step");
                r.number("start", start);
                r.number("stop", stop);
                r.number("step", step);
                if (!(step > 0.0) || stop < start)
                    throw config_error(r.field("step") + ": need step > 0 and stop >= start");
                const auto n = std::size_t(std::llround((stop - start) / step)) + 1;
                for (std::size_t k = 0; k < n; ++k)
                    s.values.push_back(start + double(k) * step);
            }
            if (s.axis == SweepAxis::transmit_power)
                for (double p : s.values)
                    if (!(p > 0.0))
                        throw config_error(r.field("values") + ": transmit powers must be positive");
            r.finish();
            return s;
        }
    }

    RunConfig parse_config(std::string_view text, const std::filesystem::path &base_dir)
    {
        json root;
        try
        {
            root = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw config_error("config syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
        }

        RunConfig cfg;
        ObjectReader r(root, "");
        if (const json *v = r.get("tx_array"))
            cfg.tx_array = read_array(*v, "tx_array", cfg.tx_array);
        if (const json *v = r.get("rx_array"))
            cfg.rx_array = read_array(*v, "rx_array", cfg.rx_array);
        if (const json *v = r.get("dictionary"))
        {
            if (!v->is_array() || v->empty())
                throw config_error("dictionary: expected a nonempty array of patterns");
            cfg.dictionary.clear();
            for (std::size_t n = 0; n < v->size(); ++n)
                cfg.dictionary.push_back(read_pattern((*v)[n], "dictionary[" + std::to_string(n) + "]", base_dir));
        }
        if (r.has("baseline_state"))
        {
            std::size_t b = 0;
            r.unsigned_integer("baseline_state", b);
            cfg.baseline_state = b;
        }
        if (const json *v = r.get("scenario"))
            cfg.scenario = read_scenario(*v, "scenario");
        if (const json *v = r.get("feed"))
        {
            ObjectReader fr(*v, "feed");
            std::string kind = to_string(cfg.feed.kind);
            fr.string("kind", kind);
            if (kind == "matched")
                cfg.feed.kind = FeedKind::matched;
            else if (kind == "phase-gradient")
                cfg.feed.kind = FeedKind::phase_gradient;
            else
                throw config_error("feed.kind: expected matched or phase-gradient");
            fr.number("step_deg", cfg.feed.step_deg);
            fr.finish();
        }
        if (const json *v = r.get("target"))
            cfg.target = read_angle(*v, "target", cfg.target);
        if (const json *v = r.get("rx_target"))
            cfg.rx_target = read_angle(*v, "rx_target", cfg.rx_target);
        if (const json *v = r.get("grid"))
        {
            ObjectReader gr(*v, "grid");
            gr.number("az_start_deg", cfg.grid.az_start_deg);
            gr.number("az_stop_deg", cfg.grid.az_stop_deg);
            gr.number("az_step_deg", cfg.grid.az_step_deg);
            gr.number("el_deg", cfg.grid.el_deg);
            gr.finish();
            if (!(cfg.grid.az_step_deg > 0.0))
                throw config_error("grid.az_step_deg: must be positive");
            if (cfg.grid.az_stop_deg < cfg.grid.az_start_deg)
                throw config_error("grid.az_stop_deg: must not be below az_start_deg");
        }
        if (const json *v = r.get("link"))
        {
            ObjectReader lr(*v, "link");
            lr.number("transmit_power", cfg.link.transmit_power);
            lr.number("noise_variance", cfg.link.noise_variance);
            lr.finish();
            if (!(cfg.link.transmit_power > 0.0))
                throw config_error("link.transmit_power: must be positive");
            if (!(cfg.link.noise_variance > 0.0))
                throw config_error("link.noise_variance: must be positive");
        }
        if (r.has("solver"))
        {
            std::string s;
            r.string("solver", s);
            if (s == "greedy")
                cfg.solver = SolverKind::greedy;
            else if (s == "exhaustive")
                cfg.solver = SolverKind::exhaustive;
            else
                throw config_error("solver: expected greedy or exhaustive");
        }
        r.number("sidelobe_probe_az_deg", cfg.sidelobe_probe_az_deg);
        if (const json *v = r.get("sweep"))
            cfg.sweep = read_sweep(*v, "sweep");
        r.unsigned_integer("seed", cfg.seed);
        r.string("output_dir", cfg.output_dir);
        r.finish();

        if (cfg.baseline_state && *cfg.baseline_state >= cfg.dictionary.size())
            throw config_error("baseline_state: index " + std::to_string(*cfg.baseline_state) +
                               " out of range for a dictionary of " + std::to_string(cfg.dictionary.size()) + " patterns");
        return cfg;
    }

    RunConfig load_config(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw config_error("cannot open config file " + file.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str(), file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path());
    }

    ordered_json config_to_json(const RunConfig &cfg)
    {
        auto array = [](const ArrayGeometry &g)
        {
            return ordered_json{{"n_horizontal", g.n_horizontal()},
                                {"n_vertical", g.n_vertical()},
                                {"spacing_wavelengths", g.spacing_wavelengths()}};
        };
        auto angle = [](const AngleDeg &a)
        { return ordered_json{{"az_deg", a.az_deg}, {"el_deg", a.el_deg}}; };

        ordered_json j;
        j["tx_array"] = array(cfg.tx_array);
        j["rx_array"] = array(cfg.rx_array);
        ordered_json dict = ordered_json::array();
        for (const auto &p : cfg.dictionary)
        {
            ordered_json pj{{"kind", to_string(p.kind)}};
            if (p.kind == PatternKind::steered_power_cosine)
            {
                pj["boresight_az_deg"] = p.boresight.az_deg;
                pj["boresight_el_deg"] = p.boresight.el_deg;
                pj["exponent"] = p.exponent;
                pj["peak_dbi"] = p.peak_dbi;
            }
            else if (p.kind == PatternKind::tabulated)
                pj["file"] = p.file;
            dict.push_back(pj);
        }
        j["dictionary"] = dict;
        if (cfg.baseline_state)
            j["baseline_state"] = *cfg.baseline_state;

        const ScenarioSpec &s = cfg.scenario;
        ordered_json clusters = ordered_json::array();
        for (const auto &c : s.clusters)
            clusters.push_back({{"paths", c.n_paths}, {"variance", c.variance}});
        j["scenario"] = {
            {"los", {{"model", to_string(s.los_model)}, {"gain_re", s.los_gain.real()}, {"gain_im", s.los_gain.imag()}, {"aod_az_deg", s.los_aod.az_deg}, {"aod_el_deg", s.los_aod.el_deg}, {"aoa_az_deg", s.los_aoa.az_deg}, {"aoa_el_deg", s.los_aoa.el_deg}}},
            {"clusters", clusters},
            {"angles", {{"model", to_string(s.angle_model)}, {"el_min_deg", s.el_min_deg}, {"el_max_deg", s.el_max_deg}, {"aod_az_deg", s.fixed_aod.az_deg}, {"aod_el_deg", s.fixed_aod.el_deg}, {"aoa_az_deg", s.fixed_aoa.az_deg}, {"aoa_el_deg", s.fixed_aoa.el_deg}}}};

        j["feed"] = {{"kind", to_string(cfg.feed.kind)}, {"step_deg", cfg.feed.step_deg}};
        j["target"] = angle(cfg.target);
        j["rx_target"] = angle(cfg.rx_target);
        j["grid"] = {{"az_start_deg", cfg.grid.az_start_deg},
                     {"az_stop_deg", cfg.grid.az_stop_deg},
                     {"az_step_deg", cfg.grid.az_step_deg},
                     {"el_deg", cfg.grid.el_deg}};
        j["link"] = {{"transmit_power", cfg.link.transmit_power}, {"noise_variance", cfg.link.noise_variance}};
        j["solver"] = to_string(cfg.solver);
        j["sidelobe_probe_az_deg"] = cfg.sidelobe_probe_az_deg;
        if (cfg.sweep)
        {
            ordered_json sw{{"axis", to_string(cfg.sweep->axis)}};
            if (cfg.sweep->axis == SweepAxis::seed)
                sw["trials"] = cfg.sweep->trials;
            else
                sw["values"] = cfg.sweep->values;
            j["sweep"] = sw;
        }
        j["seed"] = cfg.seed;
        j["output_dir"] = cfg.output_dir;
        return j;
    }

    PatternDictionary build_dictionary(const RunConfig &cfg)
    {
        std::vector<ElementPattern> patterns;
        for (const auto &p : cfg.dictionary)
        {
            switch (p.kind)
            {
            case PatternKind::isotropic:
                patterns.push_back(ElementPattern::isotropic());
                break;
            case PatternKind::steered_power_cosine:
                patterns.push_back(ElementPattern::steered_power_cosine(p.boresight.to_direction(), p.exponent,
                                                                        dbi_to_amplitude(p.peak_dbi)));
                break;
            case PatternKind::tabulated:
                patterns.push_back(load_tabulated_pattern(p.file));
                break;
            }
        }
        return PatternDictionary(std::move(patterns));
    }

    ScenarioParams scenario_params(const RunConfig &cfg)
    {
        const ScenarioSpec &s = cfg.scenario;
        ScenarioParams p;
        p.los.model = s.los_model;
        p.los.fixed_gain = s.los_gain;
        p.los.aod = s.los_aod.to_direction();
        p.los.aoa = s.los_aoa.to_direction();
        p.clusters = s.clusters;
        p.angles.model = s.angle_model;
        p.angles.el_min_rad = deg2rad(s.el_min_deg);
        p.angles.el_max_rad = deg2rad(s.el_max_deg);
        p.angles.fixed_aod = s.fixed_aod.to_direction();
        p.angles.fixed_aoa = s.fixed_aoa.to_direction();
        p.seed = cfg.seed;
        return p;
    }

    // ---------------------------------------------------------------- Output files

    namespace
    {
        std::ofstream open_output(const std::filesystem::path &file)
        {
            if (file.has_parent_path())
            {
                std::error_code ec;
                std::filesystem::create_directories(file.parent_path(), ec);
                if (ec)
                    throw std::runtime_error("cannot create directory " + file.parent_path().string() + ": " + ec.message());
            }
            std::ofstream out(file, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot open " + file.string() + " for writing");
            return out;
        }

        void close_output(std::ofstream &out, const std::filesystem::path &file)
        {
            out.close();
            if (!out)
                throw std::runtime_error("error while writing " + file.string());
        }

        std::string fmt17(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        std::string fmt10(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.10g", x);
            return buf;
        }
    }

    void write_beampattern_csv(const std::filesystem::path &file, const BeampatternSamples &samples)
    {
        std::ofstream out = open_output(file);
        out << "az_deg,el_deg,intensity_db\n";
        for (std::size_t k = 0; k < samples.values.size(); ++k)
            out << fmt10(samples.grid[k].azimuth_deg()) << ',' << fmt10(samples.grid[k].elevation_deg()) << ','
                << fmt17(power_db(samples.values[k])) << '\n';
        close_output(out, file);
    }

    void write_channel_csv(const std::filesystem::path &file, const arma::cx_mat &H)
    {
        std::ofstream out = open_output(file);
        out << "row,col,re,im\n";
        for (arma::uword r = 0; r < H.n_rows; ++r)
            for (arma::uword c = 0; c < H.n_cols; ++c)
                out << r << ',' << c << ',' << fmt17(H(r, c).real()) << ',' << fmt17(H(r, c).imag()) << '\n';
        close_output(out, file);
    }

    arma::cx_mat read_channel_csv(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw config_error("cannot open channel file " + file.string());
        std::string line;
        std::getline(in, line);
        if (line != "row,col,re,im")
            throw parse_error(file.string(), 1, "expected header 'row,col,re,im'");

        struct Entry
        {
            arma::uword r, c;
            double re, im;
        };
        std::vector<Entry> entries;
        arma::uword n_rows = 0, n_cols = 0;
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            Entry e{};
            unsigned long long r = 0, c = 0;
            char tail = 0;
            if (std::sscanf(line.c_str(), "%llu,%llu,%lf,%lf%c", &r, &c, &e.re, &e.im, &tail) != 4)
                throw parse_error(file.string(), line_no, "expected row,col,re,im");
            e.r = arma::uword(r);
            e.c = arma::uword(c);
            n_rows = std::max(n_rows, e.r + 1);
            n_cols = std::max(n_cols, e.c + 1);
            entries.push_back(e);
        }
        if (entries.size() != std::size_t(n_rows) * n_cols)
            throw parse_error(file.string(), line_no, "channel file does not hold a full matrix");
        arma::cx_mat H(n_rows, n_cols);
        for (const auto &e : entries)
            H(e.r, e.c) = {e.re, e.im};
        return H;
    }

    void write_text(const std::filesystem::path &file, const std::string &text)
    {
        std::ofstream out = open_output(file);
        out << text;
        close_output(out, file);
    }

    void write_json(const std::filesystem::path &file, const ordered_json &j)
    {
        std::ofstream out = open_output(file);
        out << j.dump(2) << '\n';
        close_output(out, file);
    }

    ordered_json db_value(double db)
    {
        if (std::isnan(db) || std::isinf(db))
            return nullptr;
        return db;
    }

    std::vector<std::string> check_summary_schema(const json &summary)
    {
        std::vector<std::string> problems;
        if (!summary.is_object())
            return {"summary is not an object"};

        auto require = [&](const char *key, auto &&pred, const char *type)
        {
            if (!summary.contains(key))
                problems.push_back(std::string("missing ") + key);
            else if (!pred(summary[key]))
                problems.push_back(std::string(key) + " must be " + type);
        };
        auto is_number = [](const json &v)
        { return v.is_number(); };
        auto is_db = [](const json &v)
        { return v.is_number() || v.is_null(); };
        auto is_index_list = [](const json &v)
        {
            if (!v.is_array())
                return false;
            for (const auto &x : v)
                if (!x.is_number_unsigned())
                    return false;
            return true;
        };

        require("command", [](const json &v) { return v.is_string(); }, "a string");
        require("config", [](const json &v) { return v.is_object(); }, "an object");
        require("seed", [](const json &v) { return v.is_number_unsigned(); }, "an unsigned integer");
        require("gamma", is_number, "a number");
        require("target_intensity_db", is_db, "a number or null");
        require("main_beam_db", is_db, "a number or null");
        require("peak_sidelobe_db", is_db, "a number or null");
        require("snr", is_number, "a number");
        require("rate", is_number, "a number");
        require("tx_selection", is_index_list, "an array of indices");
        require("rx_selection", is_index_list, "an array of indices");
        require("outputs", [](const json &v) { return v.is_array(); }, "an array");

        if (problems.empty())
        {
            const auto &cfg = summary["config"];
            auto elements = [&](const char *key) -> std::size_t
            {
                if (!cfg.contains(key) || !cfg[key].is_object())
                    return 0;
                const auto &a = cfg[key];
                return a.value("n_horizontal", std::size_t(0)) * a.value("n_vertical", std::size_t(0));
            };
            if (summary["tx_selection"].size() != elements("tx_array"))
                problems.push_back("tx_selection length does not match tx_array");
            if (summary["rx_selection"].size() != elements("rx_array"))
                problems.push_back("rx_selection length does not match rx_array");
        }
        return problems;
    }
}
