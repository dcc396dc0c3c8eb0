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

#include "era/channel.hpp"
#include "era/errors.hpp"
#include "era/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace era
{
    std::size_t PathSet::nlos_count() const
    {
        std::size_t n = 0;
        for (const auto &c : clusters)
            n += c.size();
        return n;
    }

    std::vector<std::size_t> PathSet::cluster_sizes() const
    {
        std::vector<std::size_t> sizes;
        for (const auto &c : clusters)
            sizes.push_back(c.size());
        return sizes;
    }

    std::vector<Path> PathSet::all_paths() const
    {
        std::vector<Path> out;
        out.reserve(total_count());
        if (los)
            out.push_back(*los);
        for (const auto &c : clusters)
            out.insert(out.end(), c.begin(), c.end());
        return out;
    }

    double normalization_factor(std::size_t n_tx, std::size_t n_rx, bool has_los, std::span<const std::size_t> cluster_sizes)
    {
        if (n_tx == 0 || n_rx == 0)
            throw config_error("normalization factor needs at least one transmit and one receive element");
        const std::size_t total = std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), std::size_t(has_los ? 1 : 0));
        if (total == 0)
            throw config_error("path set is empty");
        return std::sqrt(double(n_tx * n_rx) / double(total));
    }

    double normalization_factor(std::size_t n_tx, std::size_t n_rx, const PathSet &paths)
    {
        const auto sizes = paths.cluster_sizes();
        return normalization_factor(n_tx, n_rx, paths.los.has_value(), sizes);
    }

    PathSet draw_scenario(const ScenarioParams &params)
    {
        Rng rng(params.seed);
        PathSet out;

        switch (params.los.model)
        {
        case LosModel::none:
            break;
        case LosModel::fixed:
            out.los = Path{params.los.fixed_gain, params.los.aod, params.los.aoa};
            break;
        case LosModel::random_phase:
            out.los = Path{std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()), params.los.aod, params.los.aoa};
            break;
        }

        const AngleParams &ang = params.angles;
        auto draw_direction = [&]()
        {
            const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double el = rng.uniform(ang.el_min_rad, ang.el_max_rad);
            return DirectionAngle{az, el}.canonical();
        };

        for (const ClusterParams &cp : params.clusters)
        {
            if (!(cp.variance >= 0.0))
                throw config_error("cluster gain variance must be nonnegative");
            std::vector<Path> cluster;
            cluster.reserve(cp.n_paths);
            for (std::size_t l = 0; l < cp.n_paths; ++l)
            {
                Path p;
                p.gain = rng.complex_normal(cp.variance);
                if (ang.model == AngleModel::uniform)
                {
                    p.aod = draw_direction();
                    p.aoa = draw_direction();
                }
                else
                {
                    p.aod = ang.fixed_aod;
                    p.aoa = ang.fixed_aoa;
                }
                cluster.push_back(p);
            }
            out.clusters.push_back(std::move(cluster));
        }
        return out;
    }

    namespace
    {
        // H += alpha * rx * tx^H. Every channel route goes through this so that equal inputs give equal bits.
        void accumulate_outer(arma::cx_mat &H, std::complex<double> alpha, const arma::cx_vec &rx, const arma::cx_vec &tx)
        {
            for (arma::uword c = 0; c < H.n_cols; ++c)
            {
                const std::complex<double> tc = std::conj(tx(c));
                for (arma::uword r = 0; r < H.n_rows; ++r)
                    H(r, c) += alpha * rx(r) * tc;
            }
        }

        // a(i) * g(i) for per-element gains
        arma::cx_vec weighted(const arma::cx_vec &a, const arma::vec &g)
        {
            arma::cx_vec out(a.n_elem);
            for (arma::uword i = 0; i < a.n_elem; ++i)
                out(i) = a(i) * g(i);
            return out;
        }

        // a kron g_bar, index i * N + n
        arma::cx_vec lifted(const arma::cx_vec &a, const arma::vec &g_bar)
        {
            const arma::uword N = g_bar.n_elem;
            arma::cx_vec out(a.n_elem * N);
            for (arma::uword i = 0; i < a.n_elem; ++i)
                for (arma::uword n = 0; n < N; ++n)
                    out(i * N + n) = a(i) * g_bar(n);
            return out;
        }

        void require_paths(const PathSet &paths)
        {
            if (paths.total_count() == 0)
                throw config_error("path set is empty");
        }
    }

    arma::cx_mat channel_conventional(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                      const ElementPattern &pattern_tx, const ElementPattern &pattern_rx)
    {
        require_paths(paths);
        const double gamma = normalization_factor(geom_tx.n_elements(), geom_rx.n_elements(), paths);
        arma::cx_mat H(geom_rx.n_elements(), geom_tx.n_elements(), arma::fill::zeros);
        for (const Path &p : paths.all_paths())
        {
            const arma::vec g_tx(geom_tx.n_elements(), arma::fill::value(pattern_tx.eval(p.aod)));
            const arma::vec g_rx(geom_rx.n_elements(), arma::fill::value(pattern_rx.eval(p.aoa)));
            accumulate_outer(H, p.gain, weighted(steering_vector(geom_rx, p.aoa), g_rx),
                             weighted(steering_vector(geom_tx, p.aod), g_tx));
        }
        return gamma * H;
    }

    arma::cx_mat em_domain_channel(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                   const PatternDictionary &dict)
    {
        require_paths(paths);
        const std::size_t N = dict.size();
        arma::cx_mat H(N * geom_rx.n_elements(), N * geom_tx.n_elements(), arma::fill::zeros);
        for (const Path &p : paths.all_paths())
            accumulate_outer(H, p.gain, lifted(steering_vector(geom_rx, p.aoa), eval_dictionary(dict, p.aoa)),
                             lifted(steering_vector(geom_tx, p.aod), eval_dictionary(dict, p.aod)));
        return H;
    }

    arma::cx_mat channel_era_direct(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                    const PatternDictionary &dict, const SelectionConfig &sel_tx, const SelectionConfig &sel_rx)
    {
        require_paths(paths);
        if (sel_tx.size() != geom_tx.n_elements())
            throw config_error("transmit selection has " + std::to_string(sel_tx.size()) + " entries, array has " +
                               std::to_string(geom_tx.n_elements()) + " elements");
        if (sel_rx.size() != geom_rx.n_elements())
            throw config_error("receive selection has " + std::to_string(sel_rx.size()) + " entries, array has " +
                               std::to_string(geom_rx.n_elements()) + " elements");

        const double gamma = normalization_factor(geom_tx.n_elements(), geom_rx.n_elements(), paths);
        arma::cx_mat H(geom_rx.n_elements(), geom_tx.n_elements(), arma::fill::zeros);
        for (const Path &p : paths.all_paths())
            accumulate_outer(H, p.gain, weighted(steering_vector(geom_rx, p.aoa), element_gains(dict, sel_rx, p.aoa)),
                             weighted(steering_vector(geom_tx, p.aod), element_gains(dict, sel_tx, p.aod)));
        return gamma * H;
    }

    arma::cx_mat channel_era_factored(const arma::cx_mat &h_em, const SelectionConfig &sel_tx, const SelectionConfig &sel_rx,
                                      double gamma)
    {
        const std::size_t n_tx = sel_tx.size(), n_rx = sel_rx.size();
        if (n_tx == 0 || n_rx == 0 || h_em.n_cols % n_tx != 0 || h_em.n_rows % n_rx != 0 ||
            h_em.n_cols / n_tx != h_em.n_rows / n_rx)
            throw config_error("EM-domain channel of size " + std::to_string(h_em.n_rows) + "x" + std::to_string(h_em.n_cols) +
                               " is inconsistent with " + std::to_string(n_rx) + " receive and " + std::to_string(n_tx) +
                               " transmit selections");
        const std::size_t N = h_em.n_cols / n_tx;
        check_selection(sel_tx, N);
        check_selection(sel_rx, N);

        arma::cx_mat H(n_rx, n_tx);
        for (std::size_t i = 0; i < n_tx; ++i)
        {
            const std::size_t col = i * N + sel_tx.per_element[i].chosen_index;
            for (std::size_t j = 0; j < n_rx; ++j)
                H(j, i) = h_em(j * N + sel_rx.per_element[j].chosen_index, col);
        }
        return gamma * H;
    }

    ChannelRealization realize_channels(const PathSet &paths, const ArrayGeometry &geom_tx, const ArrayGeometry &geom_rx,
                                        const PatternDictionary &dict, const SelectionConfig &sel_tx,
                                        const SelectionConfig &sel_rx, std::size_t baseline_state)
    {
        if (baseline_state >= dict.size())
            throw config_error("baseline state " + std::to_string(baseline_state) + " out of range for dictionary of size " +
                               std::to_string(dict.size()));
        ChannelRealization out;
        out.gamma = normalization_factor(geom_tx.n_elements(), geom_rx.n_elements(), paths);
        out.h_cv = channel_conventional(paths, geom_tx, geom_rx, dict[baseline_state], dict[baseline_state]);
        out.h_er = channel_era_direct(paths, geom_tx, geom_rx, dict, sel_tx, sel_rx);
        out.h_em = em_domain_channel(paths, geom_tx, geom_rx, dict);
        return out;
    }
}
