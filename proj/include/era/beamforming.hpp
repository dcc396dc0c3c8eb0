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

#ifndef era_beamforming_H
#define era_beamforming_H

#include "era/array_geometry.hpp"
#include "era/pattern_dictionary.hpp"
#include "era/random.hpp"

#include <armadillo>
#include <complex>
#include <cstddef>
#include <vector>

namespace era
{
    // Analog (phase-shifter) weights with |w_i|^2 = 1 / n
    struct BeamformerWeights
    {
        arma::cx_vec weights;

        std::size_t size() const { return weights.n_elem; }
        bool is_constant_modulus(double tol = 1e-12) const;
    };

    struct LinkBudget
    {
        double transmit_power = 1.0; // P_T = |s|^2, linear
        double noise_variance = 1.0; // sigma^2, linear

        void validate() const; // throws config_error unless both are positive and finite
        bool operator==(const LinkBudget &) const = default;
    };

    // Beampattern values E (linear power intensity) on a list of directions
    struct BeampatternSamples
    {
        std::vector<DirectionAngle> grid;
        std::vector<double> values;
    };

    // f_i = 1/sqrt(n) exp(+j arg a_i(dir)): each element's term conj(a_i) f_i is real positive
    BeamformerWeights matched_precoder(const ArrayGeometry &geom, const DirectionAngle &dir);

    // f_k = 1/sqrt(n) exp(-j k step_rad); step 0 is the uniform in-phase feed
    BeamformerWeights phase_gradient_precoder(std::size_t n, double step_rad);

    // E(dir) = |(a(dir) kron g_bar(dir))^H B^T f|^2
    double beampattern_at(const ArrayGeometry &geom, const PatternDictionary &dict, const SelectionConfig &sel,
                          const BeamformerWeights &f, const DirectionAngle &dir);

    // Evaluates E on every grid direction; each sample is computed independently
    BeampatternSamples beampattern(const ArrayGeometry &geom, const PatternDictionary &dict, const SelectionConfig &sel,
                                   const BeamformerWeights &f, const std::vector<DirectionAngle> &grid);

    // Azimuth cut at fixed elevation: az_k = start + k * step for k = 0 .. round((stop - start) / step)
    std::vector<DirectionAngle> azimuth_cut(double az_start_deg, double az_stop_deg, double az_step_deg, double el_deg);

    // y = w^H H f s + w^H n
    std::complex<double> receive_signal(const arma::cx_mat &H, const BeamformerWeights &f, const BeamformerWeights &w,
                                        std::complex<double> s, const arma::cx_vec &noise);

    // Noise vector with i.i.d. CN(0, variance) entries
    arma::cx_vec draw_noise(std::size_t n, double variance, Rng &rng);

    struct LinkMetrics
    {
        double snr = 0.0;  // linear
        double rate = 0.0; // bit/s/Hz
    };

    // snr = P_T |w^H H f|^2 / sigma^2, rate = log2(1 + snr)
    LinkMetrics snr_and_rate(const arma::cx_mat &H, const BeamformerWeights &f, const BeamformerWeights &w,
                             const LinkBudget &budget);

    // Per element, the dictionary state with the largest |conj(a_i G_n) f_i| at target; ties go to the lowest index
    SelectionConfig select_patterns_greedy(const ArrayGeometry &geom, const PatternDictionary &dict,
                                           const BeamformerWeights &f, const DirectionAngle &target);

    constexpr std::size_t exhaustive_search_limit = 1000000;

    // Global maximizer of E(target) over all N^n selections, first in lexicographic order on ties.
    // Throws search_space_error if N^n exceeds max_candidates.
    SelectionConfig select_patterns_exhaustive(const ArrayGeometry &geom, const PatternDictionary &dict,
                                               const BeamformerWeights &f, const DirectionAngle &target,
                                               std::size_t max_candidates = exhaustive_search_limit);

    // Lobe metrics in dB (10 log10 E, reference E = 1)
    struct SidelobeMetrics
    {
        double peak_db = 0.0;          // largest sample
        double main_db = 0.0;          // sample nearest the main direction
        double peak_sidelobe_db = 0.0; // largest sample outside the main lobe, -inf if none
        double left_sidelobe_db = 0.0; // largest sample before the main lobe, -inf if none
        double right_sidelobe_db = 0.0;
        std::size_t main_index = 0;
        std::size_t lobe_first = 0; // main lobe spans [lobe_first, lobe_last] in grid order
        std::size_t lobe_last = 0;
    };

    // The main lobe is the hill containing the sample nearest main_dir, bounded by the first local minimum on each side
    SidelobeMetrics sidelobe_metrics(const BeampatternSamples &samples, const DirectionAngle &main_dir);

    inline double power_db(double e) { return 10.0 * std::log10(e); }
}

#endif
