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

#include "era/beamforming.hpp"
#include "era/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace era
{
    bool BeamformerWeights::is_constant_modulus(double tol) const
    {
        if (weights.n_elem == 0)
            return false;
        const double target = 1.0 / double(weights.n_elem);
        for (const auto &w : weights)
            if (std::abs(std::norm(w) - target) > tol)
                return false;
        return true;
    }

    void LinkBudget::validate() const
    {
        if (!(transmit_power > 0.0) || !std::isfinite(transmit_power))
            throw config_error("transmit_power must be positive");
        if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
            throw config_error("noise_variance must be positive");
    }

    BeamformerWeights matched_precoder(const ArrayGeometry &geom, const DirectionAngle &dir)
    {
        const arma::cx_vec a = steering_vector(geom, dir);
        const double scale = 1.0 / std::sqrt(double(a.n_elem));
        arma::cx_vec f(a.n_elem);
        for (arma::uword i = 0; i < a.n_elem; ++i)
            f(i) = std::polar(scale, std::arg(a(i)));
        return {f};
    }

    BeamformerWeights phase_gradient_precoder(std::size_t n, double step_rad)
    {
        if (n == 0)
            throw config_error("precoder needs at least one element");
        const double scale = 1.0 / std::sqrt(double(n));
        arma::cx_vec f(n);
        for (std::size_t k = 0; k < n; ++k)
            f(k) = std::polar(scale, -double(k) * step_rad);
        return {f};
    }

    namespace
    {
        // B^T f: f_i placed at position i * N + chosen_index(i)
        arma::cx_vec lift_weights(const SelectionConfig &sel, const BeamformerWeights &f, std::size_t N)
        {
            check_selection(sel, N);
            arma::cx_vec out(sel.size() * N, arma::fill::zeros);
            for (std::size_t i = 0; i < sel.size(); ++i)
                out(i * N + sel.per_element[i].chosen_index) = f.weights(i);
            return out;
        }

        double intensity(const arma::cx_vec &a, const arma::vec &g_bar, const arma::cx_vec &bf)
        {
            const arma::uword N = g_bar.n_elem;
            std::complex<double> acc = 0.0;
            for (arma::uword i = 0; i < a.n_elem; ++i)
                for (arma::uword n = 0; n < N; ++n)
                    acc += std::conj(a(i) * g_bar(n)) * bf(i * N + n);
            return std::norm(acc);
        }

        void check_sizes(const ArrayGeometry &geom, const SelectionConfig &sel, const BeamformerWeights &f)
        {
            if (sel.size() != geom.n_elements() || f.size() != geom.n_elements())
                throw config_error("selection (" + std::to_string(sel.size()) + ") and weights (" + std::to_string(f.size()) +
                                   ") must match the array size " + std::to_string(geom.n_elements()));
        }
    }

    double beampattern_at(const ArrayGeometry &geom, const PatternDictionary &dict, const SelectionConfig &sel,
                          const BeamformerWeights &f, const DirectionAngle &dir)
    {
        check_sizes(geom, sel, f);
        return intensity(steering_vector(geom, dir), eval_dictionary(dict, dir), lift_weights(sel, f, dict.size()));
    }

    BeampatternSamples beampattern(const ArrayGeometry &geom, const PatternDictionary &dict, const SelectionConfig &sel,
                                   const BeamformerWeights &f, const std::vector<DirectionAngle> &grid)
    {
        check_sizes(geom, sel, f);
        if (grid.empty())
            throw config_error("beampattern grid is empty");
        const arma::cx_vec bf = lift_weights(sel, f, dict.size());
        BeampatternSamples out{grid, std::vector<double>(grid.size())};
        for (std::size_t k = 0; k < grid.size(); ++k)
            out.values[k] = intensity(steering_vector(geom, grid[k]), eval_dictionary(dict, grid[k]), bf);
        return out;
    }

    std::vector<DirectionAngle> azimuth_cut(double az_start_deg, double az_stop_deg, double az_step_deg, double el_deg)
    {
        if (!(az_step_deg > 0.0) || !(az_stop_deg >= az_start_deg))
            throw config_error("azimuth cut needs step > 0 and stop >= start");
        const auto n = std::size_t(std::llround((az_stop_deg - az_start_deg) / az_step_deg)) + 1;
        std::vector<DirectionAngle> grid;
        grid.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            grid.push_back(DirectionAngle::from_degrees(az_start_deg + double(k) * az_step_deg, el_deg));
        return grid;
    }

    std::complex<double> receive_signal(const arma::cx_mat &H, const BeamformerWeights &f, const BeamformerWeights &w,
                                        std::complex<double> s, const arma::cx_vec &noise)
    {
        if (H.n_cols != f.size() || H.n_rows != w.size() || noise.n_elem != w.size())
            throw config_error("receive_signal: channel " + std::to_string(H.n_rows) + "x" + std::to_string(H.n_cols) +
                               " does not match f (" + std::to_string(f.size()) + "), w (" + std::to_string(w.size()) +
                               ") and noise (" + std::to_string(noise.n_elem) + ")");
        const std::complex<double> gain = arma::cdot(w.weights, H * f.weights);
        return gain * s + arma::cdot(w.weights, noise);
    }

    arma::cx_vec draw_noise(std::size_t n, double variance, Rng &rng)
    {
        arma::cx_vec out(n);
        for (std::size_t i = 0; i < n; ++i)
            out(i) = rng.complex_normal(variance);
        return out;
    }

    LinkMetrics snr_and_rate(const arma::cx_mat &H, const BeamformerWeights &f, const BeamformerWeights &w,
                             const LinkBudget &budget)
    {
        budget.validate();
        if (H.n_cols != f.size() || H.n_rows != w.size())
            throw config_error("snr_and_rate: channel does not match the beamformer sizes");
        const double g = std::norm(arma::cdot(w.weights, H * f.weights));
        LinkMetrics m;
        m.snr = budget.transmit_power * g / budget.noise_variance;
        m.rate = std::log2(1.0 + m.snr);
        return m;
    }

    namespace
    {
        // contribution(i, n) = conj(a_i(target) G_n(target)) f_i
        arma::cx_mat element_contributions(const ArrayGeometry &geom, const PatternDictionary &dict,
                                           const BeamformerWeights &f, const DirectionAngle &target)
        {
            if (f.size() != geom.n_elements())
                throw config_error("weights size does not match the array");
            const arma::cx_vec a = steering_vector(geom, target);
            const arma::vec g_bar = eval_dictionary(dict, target);
            arma::cx_mat c(a.n_elem, g_bar.n_elem);
            for (arma::uword i = 0; i < a.n_elem; ++i)
                for (arma::uword n = 0; n < g_bar.n_elem; ++n)
                    c(i, n) = std::conj(a(i) * g_bar(n)) * f.weights(i);
            return c;
        }
    }

    SelectionConfig select_patterns_greedy(const ArrayGeometry &geom, const PatternDictionary &dict,
                                           const BeamformerWeights &f, const DirectionAngle &target)
    {
        const arma::cx_mat c = element_contributions(geom, dict, f, target);
        SelectionConfig sel = SelectionConfig::uniform(c.n_rows, 0);
        for (arma::uword i = 0; i < c.n_rows; ++i)
        {
            double best = std::abs(c(i, 0));
            for (arma::uword n = 1; n < c.n_cols; ++n)
                if (const double m = std::abs(c(i, n)); m > best)
                {
                    best = m;
                    sel.per_element[i].chosen_index = n;
                }
        }
        return sel;
    }

    SelectionConfig select_patterns_exhaustive(const ArrayGeometry &geom, const PatternDictionary &dict,
                                               const BeamformerWeights &f, const DirectionAngle &target,
                                               std::size_t max_candidates)
    {
        const std::size_t n = geom.n_elements(), N = dict.size();
        std::size_t candidates = 1;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (candidates > max_candidates / N)
                throw search_space_error("exhaustive search over " + std::to_string(N) + "^" + std::to_string(n) +
                                         " selections exceeds the bound of " + std::to_string(max_candidates) + " candidates");
            candidates *= N;
        }

        const arma::cx_mat c = element_contributions(geom, dict, f, target);
        std::vector<std::size_t> current(n, 0), best(n, 0);
        double best_value = -1.0;
        for (std::size_t k = 0; k < candidates; ++k)
        {
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += c(i, current[i]);
            if (const double e = std::norm(acc); e > best_value)
            {
                best_value = e;
                best = current;
            }
            // Odometer, last element fastest: lexicographic order
            for (std::size_t i = n; i-- > 0;)
            {
                if (++current[i] < N)
                    break;
                current[i] = 0;
            }
        }
        return SelectionConfig::from_indices(best);
    }

    SidelobeMetrics sidelobe_metrics(const BeampatternSamples &samples, const DirectionAngle &main_dir)
    {
        const auto &E = samples.values;
        if (E.empty() || E.size() != samples.grid.size())
            throw config_error("sidelobe_metrics needs a nonempty beampattern with matching grid");
        constexpr double neg_inf = -std::numeric_limits<double>::infinity();
        const std::size_t n = E.size();

        SidelobeMetrics m;
        double best_cos = -2.0;
        for (std::size_t k = 0; k < n; ++k)
            if (const double c = cos_angle_between(samples.grid[k], main_dir); c > best_cos)
            {
                best_cos = c;
                m.main_index = k;
            }

        // Climb to the top of the hill containing the main direction
        std::size_t top = m.main_index;
        while (true)
        {
            if (top + 1 < n && E[top + 1] > E[top])
                ++top;
            else if (top > 0 && E[top - 1] > E[top])
                --top;
            else
                break;
        }
        std::size_t lo = top, hi = top;
        while (lo > 0 && E[lo - 1] <= E[lo])
            --lo;
        while (hi + 1 < n && E[hi + 1] <= E[hi])
            ++hi;
        m.lobe_first = lo;
        m.lobe_last = hi;

        double peak = E[0], left = neg_inf, right = neg_inf;
        for (std::size_t k = 0; k < n; ++k)
        {
            peak = std::max(peak, E[k]);
            if (k < lo)
                left = std::max(left, power_db(E[k]));
            else if (k > hi)
                right = std::max(right, power_db(E[k]));
        }
        m.peak_db = power_db(peak);
        m.main_db = power_db(E[m.main_index]);
        m.left_sidelobe_db = left;
        m.right_sidelobe_db = right;
        m.peak_sidelobe_db = std::max(left, right);
        return m;
    }
}
