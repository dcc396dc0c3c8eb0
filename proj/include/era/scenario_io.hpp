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

#ifndef era_scenario_io_H
#define era_scenario_io_H

#include "era/array_geometry.hpp"
#include "era/beamforming.hpp"
#include "era/channel.hpp"
#include "era/pattern_dictionary.hpp"

#include <json.hpp>

#include <armadillo>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace era
{
    // Direction as written in configuration files
    struct AngleDeg
    {
        double az_deg = 0.0;
        double el_deg = 90.0;

        DirectionAngle to_direction() const { return DirectionAngle::from_degrees(az_deg, el_deg); }
        bool operator==(const AngleDeg &) const = default;
    };

    struct PatternSpec
    {
        PatternKind kind = PatternKind::isotropic;
        AngleDeg boresight{90.0, 90.0}; // steered kind
        double exponent = 2.0;          // steered kind
        double peak_dbi = 0.0;          // steered kind
        std::string file;               // tabulated kind, resolved against the config directory

        bool operator==(const PatternSpec &) const = default;
    };

    // The built-in three-state dictionary (steered patterns at az 45, 90, 135 deg)
    std::vector<PatternSpec> default_dictionary_specs();

    struct ScenarioSpec
    {
        LosModel los_model = LosModel::fixed;
        std::complex<double> los_gain{1.0, 0.0};
        AngleDeg los_aod{135.0, 90.0};
        AngleDeg los_aoa{90.0, 90.0};
        std::vector<ClusterParams> clusters{{3, 0.1}};
        AngleModel angle_model = AngleModel::uniform;
        double el_min_deg = 90.0;
        double el_max_deg = 90.0;
        AngleDeg fixed_aod{0.0, 90.0};
        AngleDeg fixed_aoa{0.0, 90.0};

        bool operator==(const ScenarioSpec &) const = default;
    };

    enum class FeedKind
    {
        matched,
        phase_gradient
    };

    struct FeedSpec
    {
        FeedKind kind = FeedKind::matched;
        double step_deg = 180.0; // phase_gradient only

        bool operator==(const FeedSpec &) const = default;
    };

    enum class SolverKind
    {
        greedy,
        exhaustive
    };

    struct GridSpec
    {
        double az_start_deg = 0.0;
        double az_stop_deg = 180.0;
        double az_step_deg = 0.25;
        double el_deg = 90.0;

        std::vector<DirectionAngle> directions() const;
        bool operator==(const GridSpec &) const = default;
    };

    enum class SweepAxis
    {
        target_az_deg,
        transmit_power,
        seed
    };

    // Points are values (angle or power axis) or trial indices 0..trials-1 (seed axis, seed = trial_seed(seed, t))
    struct SweepSpec
    {
        SweepAxis axis = SweepAxis::target_az_deg;
        std::vector<double> values;
        std::size_t trials = 0;

        std::size_t n_points() const { return axis == SweepAxis::seed ? trials : values.size(); }
        bool operator==(const SweepSpec &) const = default;
    };

    struct RunConfig
    {
        ArrayGeometry tx_array = ArrayGeometry::ula(12, 0.5);
        ArrayGeometry rx_array{};
        std::vector<PatternSpec> dictionary = default_dictionary_specs();
        std::optional<std::size_t> baseline_state; // conventional-array state index, absent unless configured
        ScenarioSpec scenario;
        FeedSpec feed;
        AngleDeg target{135.0, 90.0};
        AngleDeg rx_target{90.0, 90.0};
        GridSpec grid;
        LinkBudget link;
        SolverKind solver = SolverKind::greedy;
        double sidelobe_probe_az_deg = 45.0;
        std::optional<SweepSpec> sweep;
        std::uint64_t seed = 1;
        std::string output_dir = "era_out";

        bool operator==(const RunConfig &) const = default;
    };

    // Default run: 12-element ULA, three-state dictionary, baseline state 1, matched feed at az 135 deg
    RunConfig default_run_config();

    // Strict JSON parsing: unknown keys, wrong types and invalid values raise config_error naming the field.
    // Relative pattern file paths are resolved against base_dir and must exist.
    RunConfig parse_config(std::string_view text, const std::filesystem::path &base_dir = ".");
    RunConfig load_config(const std::filesystem::path &file);

    nlohmann::ordered_json config_to_json(const RunConfig &cfg);

    PatternDictionary build_dictionary(const RunConfig &cfg);
    ScenarioParams scenario_params(const RunConfig &cfg);

    std::string to_string(SolverKind s);
    std::string to_string(FeedKind f);

    // Output files; doubles are written with 17 significant digits so re-reading is exact
    void write_beampattern_csv(const std::filesystem::path &file, const BeampatternSamples &samples);
    void write_channel_csv(const std::filesystem::path &file, const arma::cx_mat &H);
    arma::cx_mat read_channel_csv(const std::filesystem::path &file);
    void write_text(const std::filesystem::path &file, const std::string &text);
    void write_json(const std::filesystem::path &file, const nlohmann::ordered_json &j);

    // JSON value for a dB figure; -inf is written as null
    nlohmann::ordered_json db_value(double db);

    // Problems found when checking a run summary against the documented schema, empty if valid
    std::vector<std::string> check_summary_schema(const nlohmann::json &summary);
}

#endif
