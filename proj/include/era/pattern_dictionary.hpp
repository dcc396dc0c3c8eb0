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

#ifndef era_pattern_dictionary_H
#define era_pattern_dictionary_H

#include "era/array_geometry.hpp"

#include <armadillo>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace era
{
    // Element gains are linear field amplitudes; dB values convert with 20 log10
    inline double dbi_to_amplitude(double dbi) { return std::pow(10.0, dbi / 20.0); }
    inline double amplitude_to_dbi(double amplitude) { return 20.0 * std::log10(amplitude); }

    enum class PatternKind
    {
        isotropic,
        steered_power_cosine,
        tabulated
    };

    // Sampled amplitude pattern on a rectangular (azimuth, elevation) grid in degrees.
    // Queries are bilinear in (az, el); no extrapolation outside the grid.
    class TabulatedGrid
    {
    public:
        // amplitude(i, j) is the sample at (azimuth_deg(i), elevation_deg(j)); both axes strictly increasing
        TabulatedGrid(arma::vec azimuth_deg, arma::vec elevation_deg, arma::mat amplitude);

        const arma::vec &azimuth_deg() const { return azimuth_deg_; }
        const arma::vec &elevation_deg() const { return elevation_deg_; }
        const arma::mat &amplitude() const { return amplitude_; }

        // Throws out_of_domain if the direction lies outside the grid
        double eval(const DirectionAngle &dir) const;

    private:
        arma::vec azimuth_deg_;
        arma::vec elevation_deg_;
        arma::mat amplitude_;
    };

    // One reconfigurable element state: a real, nonnegative amplitude pattern
    class ElementPattern
    {
    public:
        // Unit gain in every direction
        static ElementPattern isotropic();

        // peak_amplitude * max(0, cos(delta))^exponent, delta = great-circle angle to boresight
        static ElementPattern steered_power_cosine(const DirectionAngle &boresight, double exponent, double peak_amplitude);

        static ElementPattern tabulated(TabulatedGrid grid);

        PatternKind kind() const;
        double eval(const DirectionAngle &dir) const;

        // Parameters of the steered kind (meaningless for the others)
        const DirectionAngle &boresight() const;
        double exponent() const;
        double peak_amplitude() const;
        const TabulatedGrid *grid() const; // nullptr unless tabulated

    private:
        struct Isotropic
        {
        };
        struct SteeredPowerCosine
        {
            DirectionAngle boresight;
            double exponent;
            double peak_amplitude;
        };
        using Tabulated = std::shared_ptr<const TabulatedGrid>;

        explicit ElementPattern(std::variant<Isotropic, SteeredPowerCosine, Tabulated> v) : model_(std::move(v)) {}
        std::variant<Isotropic, SteeredPowerCosine, Tabulated> model_;
    };

    double eval_pattern(const ElementPattern &p, const DirectionAngle &dir);

    // Ordered set of N selectable element patterns
    class PatternDictionary
    {
    public:
        explicit PatternDictionary(std::vector<ElementPattern> patterns);

        std::size_t size() const { return patterns_.size(); }
        const ElementPattern &operator[](std::size_t n) const { return patterns_[n]; }
        const std::vector<ElementPattern> &patterns() const { return patterns_; }

    private:
        std::vector<ElementPattern> patterns_;
    };

    // Dictionary vector g(dir) = [G_1(dir), ..., G_N(dir)]
    arma::vec eval_dictionary(const PatternDictionary &dict, const DirectionAngle &dir);

    // Three steered patterns at azimuth 45, 90, 135 deg (elevation 90 deg), exponent 2, 8 dBi peak
    PatternDictionary default_dictionary();

    // One-hot selection vector b, stored as the index of its single 1
    struct SelectionVector
    {
        std::size_t chosen_index = 0;

        arma::vec as_binary(std::size_t dictionary_size) const;
        bool operator==(const SelectionVector &) const = default;
    };

    // One selection per antenna element
    struct SelectionConfig
    {
        std::vector<SelectionVector> per_element;

        static SelectionConfig uniform(std::size_t n_elements, std::size_t index);
        static SelectionConfig from_indices(const std::vector<std::size_t> &indices);

        std::size_t size() const { return per_element.size(); }
        std::vector<std::size_t> indices() const;
        bool operator==(const SelectionConfig &) const = default;
    };

    // Throws config_error when an index is not below dictionary_size
    void check_selection(const SelectionConfig &cfg, std::size_t dictionary_size);

    // Block-diagonal selection matrix blkdiag(b_1^T, ..., b_n^T), size [n, N * n]
    arma::mat selection_matrix(const SelectionConfig &cfg, std::size_t dictionary_size);

    // Per-element gains g(dir) with g_i = g_bar(dir)^T b_i
    arma::vec element_gains(const PatternDictionary &dict, const SelectionConfig &cfg, const DirectionAngle &dir);

    // Reads a pattern grid CSV (header az_deg,el_deg,gain_dbi; azimuth-major rows).
    // Gains in dBi are stored as linear amplitude 10^(dBi/20). Errors carry the line number.
    ElementPattern parse_tabulated_pattern(std::istream &in, const std::string &source_name = "<stream>");
    ElementPattern load_tabulated_pattern(const std::filesystem::path &file);
}

#endif
