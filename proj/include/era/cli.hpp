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

#ifndef era_cli_H
#define era_cli_H

#include "era/beamforming.hpp"
#include "era/scenario_io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace era::cli
{
    // Flag values that replace config-file values
    struct Overrides
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::string> output_dir;
        std::optional<SolverKind> solver;
        std::optional<FeedKind> feed;
        std::optional<double> step_deg;
        std::optional<double> target_az_deg;
        std::optional<double> target_el_deg;
    };

    void apply_overrides(RunConfig &cfg, const Overrides &o);

    // Everything computed for one configuration
    struct PointResult
    {
        BeamformerWeights precoder;
        BeamformerWeights combiner;
        SelectionConfig tx_selection;
        SelectionConfig rx_selection;
        BeampatternSamples pattern;
        SidelobeMetrics lobes;
        double target_intensity = 0.0; // E(target), linear
        double probe_sidelobe_db = 0.0;
        double gamma = 1.0;
        LinkMetrics link;
    };

    // Transmit weights selected by cfg.feed
    BeamformerWeights make_precoder(const RunConfig &cfg);

    // Runs selection, beampattern, lobe metrics and the link budget for cfg.
    // fixed_state forces every element at both ends into one dictionary state (conventional array).
    PointResult evaluate_point(const RunConfig &cfg, const PatternDictionary &dict,
                               std::optional<std::size_t> fixed_state = std::nullopt);

    // Subcommands; each writes into cfg.output_dir and returns the files it wrote
    std::vector<std::filesystem::path> cmd_beampattern(const RunConfig &cfg);
    std::vector<std::filesystem::path> cmd_channel(const RunConfig &cfg);
    std::vector<std::filesystem::path> cmd_optimize(const RunConfig &cfg);
    std::vector<std::filesystem::path> cmd_compare(const RunConfig &cfg);
    std::vector<std::filesystem::path> cmd_sweep(const RunConfig &cfg);

    // Command-line entry point. Exit codes: 0 success, 1 runtime error, 2 configuration error.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
