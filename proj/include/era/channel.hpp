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

#ifndef era_channel_H
#define era_channel_H

#include "era/array_geometry.hpp"
#include "era/pattern_dictionary.hpp"

#include <armadillo>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace era
{
    // One propagation path: complex gain, angle of departure (transmit frame), angle of arrival (receive frame)
    struct Path
    {
        std::complex<double> gain{1.0, 0.0};
        DirectionAngle aod;
        DirectionAngle aoa;
    };

    // Optional LoS path plus clustered NLoS paths
    struct PathSet
    {
        std::optional<Path> los;
        std::vector<std::vector<Path>> clusters; // cluster c holds L_c paths

        std::size_t nlos_count() const;
        std::size_t total_count() const { return nlos_count() + (los ? 1 : 0); }
        std::vector<std::size_t> cluster_sizes() const;

        // LoS first (if present), then clusters in order
        std::vector<Path> all_paths() const;
    };

    enum class LosModel
    {
        none,        // no LoS path
        fixed,       // gain = fixed_gain
        random_phase // unit modulus, uniform phase
    };

    struct LosParams
    {
        LosModel model = LosModel::fixed;
        std::complex<double> fixed_gain{1.0, 0.0};
        DirectionAngle aod = DirectionAngle::from_degrees(0.0, 90.0);
        DirectionAngle aoa = DirectionAngle::from_degrees(0.0, 90.0);
    };

    struct ClusterParams
    {
        std::size_t n_paths = 1;
        double variance = 1.0; // per-path gain ~ CN(0, variance)

        bool operator==(const ClusterParams &) const = default;
    };

    enum class AngleModel
    {
        uniform, // az ~ U[0, 2pi), el ~ U[el_min, el_max], independently at both ends
        fixed    // every NLoS path uses fixed_aod / fixed_aoa
    };

    struct AngleParams
    {
        AngleModel model = AngleModel::uniform;
        double el_min_rad = deg2rad(90.0);
        double el_max_rad = deg2rad(90.0);
        DirectionAngle fixed_aod = DirectionAngle::from_degrees(0.0, 90.0);
        DirectionAngle fixed_aoa = DirectionAngle::from_degrees(0.0, 90.0);
    };

    struct ScenarioParams
    {
        LosParams los;
        std::vector<ClusterParams> clusters;
        AngleParams angles;
        std::uint64_t seed = 1;
    };

    // Channel matrices built from one PathSet; gamma is shared by every construction route
    struct ChannelRealization
    {
        std::optional<arma::cx_mat> h_cv; // conventional, N_R x N_T
        std::optional<arma::cx_mat> h_er; // reconfigurable, N_R x N_T
        std::optional<arma::cx_mat> h_em; // EM-domain, N*N_R x N*N_T (no gamma)
        double gamma = 1.0;
    };

    // gamma = sqrt(N_T N_R / (n_los + sum L_c)), n_los = 1 when a LoS path exists, 0 otherwise
    double normalization_factor(std::size_t n_tx, std::size_t n_rx, bool has_los, std::span<const std::size_t> cluster_sizes);
    double normalization_factor(std::size_t n_tx, std::size_t n_rx, const PathSet &paths);

    // Draws a PathSet; deterministic in params.seed.
    // Draw order: LoS phase (random_phase only), then per cluster and path: gain (re, im), AoD (az, el), AoA (az, el).
    PathSet draw_scenario(const ScenarioParams &params);

    // Conventional array, every element with the same pattern:
    //   H_CV = gamma sum_p alpha_p G_R(phi_p) G_T(theta_p) a_R(phi_p) a_T(theta_p)^H
    arma::cx_mat channel_conventional(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                      const ElementPattern &pattern_tx, const ElementPattern &pattern_rx);

    // EM-domain channel H_EM = sum_p alpha_p (a_R kron g_bar(phi_p)) (a_T kron g_bar(theta_p))^H, no gamma
    arma::cx_mat em_domain_channel(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                   const PatternDictionary &dict);

    // Reconfigurable-array channel from per-element gains:
    //   H_ER = gamma sum_p alpha_p (g_R(phi_p) . a_R(phi_p)) (g_T(theta_p) . a_T(theta_p))^H
    arma::cx_mat channel_era_direct(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                    const PatternDictionary &dict, const SelectionConfig &sel_tx, const SelectionConfig &sel_rx);

    // H_ER = gamma D H_EM B^T. The dictionary size is inferred from the shapes.
    // B and D have one 1 per row, so the product is evaluated as a gather; it equals the dense product exactly.
    arma::cx_mat channel_era_factored(const arma::cx_mat &h_em, const SelectionConfig &sel_tx, const SelectionConfig &sel_rx,
                                      double gamma);

    // All three matrices for one PathSet. The conventional channel uses dictionary state baseline_state at both ends.
    ChannelRealization realize_channels(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                        const PatternDictionary &dict, const SelectionConfig &sel_tx,
                                        const SelectionConfig &sel_rx, std::size_t baseline_state);
}

#endif
