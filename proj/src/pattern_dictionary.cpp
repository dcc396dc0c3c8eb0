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

#include "era/pattern_dictionary.hpp"
#include "era/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>

namespace era
{
    // ---------------------------------------------------------------- TabulatedGrid

    TabulatedGrid::TabulatedGrid(arma::vec azimuth_deg, arma::vec elevation_deg, arma::mat amplitude)
        : azimuth_deg_(std::move(azimuth_deg)), elevation_deg_(std::move(elevation_deg)), amplitude_(std::move(amplitude))
    {
        if (azimuth_deg_.n_elem < 2 || elevation_deg_.n_elem < 2)
            throw config_error("tabulated pattern needs at least 2 samples on each axis");
        if (amplitude_.n_rows != azimuth_deg_.n_elem || amplitude_.n_cols != elevation_deg_.n_elem)
            throw config_error("tabulated pattern sample matrix does not match the grid axes");
        for (arma::uword i = 1; i < azimuth_deg_.n_elem; ++i)
            if (!(azimuth_deg_(i) > azimuth_deg_(i - 1)))
                throw config_error("tabulated pattern azimuth axis must be strictly increasing");
        for (arma::uword j = 1; j < elevation_deg_.n_elem; ++j)
            if (!(elevation_deg_(j) > elevation_deg_(j - 1)))
                throw config_error("tabulated pattern elevation axis must be strictly increasing");
        if (!amplitude_.is_finite() || amplitude_.min() < 0.0)
            throw config_error("tabulated pattern amplitudes must be finite and nonnegative");
    }

    namespace
    {
        // Cell index and fractional position of x on a strictly increasing axis; false if outside
        bool locate(const arma::vec &axis, double x, arma::uword &cell, double &t)
        {
            const arma::uword n = axis.n_elem;
            if (!(x >= axis(0) && x <= axis(n - 1)))
                return false;
            const auto it = std::upper_bound(axis.begin(), axis.end(), x);
            arma::uword upper = arma::uword(it - axis.begin());
            if (upper >= n) // x equals the last node
                upper = n - 1;
            cell = upper - 1;
            t = (x - axis(cell)) / (axis(cell + 1) - axis(cell));
            return true;
        }
    }

    double TabulatedGrid::eval(const DirectionAngle &dir) const
    {
        const DirectionAngle c = dir.canonical();
        double az = c.azimuth_deg();
        const double el = c.elevation_deg();

        arma::uword ia = 0, ie = 0;
        double ta = 0.0, te = 0.0;
        bool az_ok = locate(azimuth_deg_, az, ia, ta);
        if (!az_ok) // grids given on [-180, 180)
            az_ok = locate(azimuth_deg_, az - 360.0, ia, ta);
        if (!az_ok || !locate(elevation_deg_, el, ie, te))
            throw out_of_domain("direction (az " + std::to_string(az) + " deg, el " + std::to_string(el) +
                                " deg) is outside the tabulated pattern grid");

        const double a00 = amplitude_(ia, ie), a01 = amplitude_(ia, ie + 1);
        const double a10 = amplitude_(ia + 1, ie), a11 = amplitude_(ia + 1, ie + 1);
        return (1.0 - ta) * ((1.0 - te) * a00 + te * a01) + ta * ((1.0 - te) * a10 + te * a11);
    }

    // ---------------------------------------------------------------- ElementPattern

    ElementPattern ElementPattern::isotropic()
    {
        return ElementPattern(Isotropic{});
    }

    ElementPattern ElementPattern::steered_power_cosine(const DirectionAngle &boresight, double exponent, double peak_amplitude)
    {
        if (!(exponent >= 0.0) || !std::isfinite(exponent))
            throw config_error("pattern exponent must be nonnegative and finite");
        if (!(peak_amplitude > 0.0) || !std::isfinite(peak_amplitude))
            throw config_error("pattern peak amplitude must be positive and finite");
        return ElementPattern(SteeredPowerCosine{boresight.canonical(), exponent, peak_amplitude});
    }

    ElementPattern ElementPattern::tabulated(TabulatedGrid grid)
    {
        return ElementPattern(std::make_shared<const TabulatedGrid>(std::move(grid)));
    }

    PatternKind ElementPattern::kind() const
    {
        switch (model_.index())
        {
        case 0:
            return PatternKind::isotropic;
        case 1:
            return PatternKind::steered_power_cosine;
        default:
            return PatternKind::tabulated;
        }
    }

    double ElementPattern::eval(const DirectionAngle &dir) const
    {
        struct Visitor
        {
            const DirectionAngle &dir;
            double operator()(const Isotropic &) const { return 1.0; }
            double operator()(const SteeredPowerCosine &p) const
            {
                const double c = std::max(0.0, cos_angle_between(dir, p.boresight));
                return p.peak_amplitude * std::pow(c, p.exponent);
            }
            double operator()(const Tabulated &t) const { return t->eval(dir); }
        };
        return std::visit(Visitor{dir}, model_);
    }

    const DirectionAngle &ElementPattern::boresight() const
    {
        static const DirectionAngle none{};
        const auto *p = std::get_if<SteeredPowerCosine>(&model_);
        return p ? p->boresight : none;
    }

    double ElementPattern::exponent() const
    {
        const auto *p = std::get_if<SteeredPowerCosine>(&model_);
        return p ? p->exponent : 0.0;
    }

    double ElementPattern::peak_amplitude() const
    {
        const auto *p = std::get_if<SteeredPowerCosine>(&model_);
        return p ? p->peak_amplitude : 1.0;
    }

    const TabulatedGrid *ElementPattern::grid() const
    {
        const auto *p = std::get_if<Tabulated>(&model_);
        return p ? p->get() : nullptr;
    }

    double eval_pattern(const ElementPattern &p, const DirectionAngle &dir)
    {
        return p.eval(dir);
    }

    // ---------------------------------------------------------------- PatternDictionary

    PatternDictionary::PatternDictionary(std::vector<ElementPattern> patterns)
        : patterns_(std::move(patterns))
    {
        if (patterns_.empty())
            throw config_error("pattern dictionary must hold at least one pattern");
    }

    arma::vec eval_dictionary(const PatternDictionary &dict, const DirectionAngle &dir)
    {
        arma::vec g(dict.size());
        for (std::size_t n = 0; n < dict.size(); ++n)
            g(n) = dict[n].eval(dir);
        return g;
    }

    PatternDictionary default_dictionary()
    {
        const double peak = dbi_to_amplitude(8.0);
        std::vector<ElementPattern> states;
        for (double az : {45.0, 90.0, 135.0})
            states.push_back(ElementPattern::steered_power_cosine(DirectionAngle::from_degrees(az, 90.0), 2.0, peak));
        return PatternDictionary(std::move(states));
    }

    // ---------------------------------------------------------------- Selection

    arma::vec SelectionVector::as_binary(std::size_t dictionary_size) const
    {
        if (chosen_index >= dictionary_size)
            throw config_error("selection index " + std::to_string(chosen_index) + " out of range for dictionary of size " +
                               std::to_string(dictionary_size));
        arma::vec b(dictionary_size, arma::fill::zeros);
        b(chosen_index) = 1.0;
        return b;
    }

    SelectionConfig SelectionConfig::uniform(std::size_t n_elements, std::size_t index)
    {
        return SelectionConfig{std::vector<SelectionVector>(n_elements, SelectionVector{index})};
    }

    SelectionConfig SelectionConfig::from_indices(const std::vector<std::size_t> &indices)
    {
        SelectionConfig cfg;
        cfg.per_element.reserve(indices.size());
        for (auto i : indices)
            cfg.per_element.push_back({i});
        return cfg;
    }

    std::vector<std::size_t> SelectionConfig::indices() const
    {
        std::vector<std::size_t> out;
        out.reserve(per_element.size());
        for (const auto &s : per_element)
            out.push_back(s.chosen_index);
        return out;
    }

    void check_selection(const SelectionConfig &cfg, std::size_t dictionary_size)
    {
        for (std::size_t i = 0; i < cfg.size(); ++i)
            if (cfg.per_element[i].chosen_index >= dictionary_size)
                throw config_error("element " + std::to_string(i) + " selects pattern " +
                                   std::to_string(cfg.per_element[i].chosen_index) + ", dictionary has " +
                                   std::to_string(dictionary_size));
    }

    arma::mat selection_matrix(const SelectionConfig &cfg, std::size_t dictionary_size)
    {
        check_selection(cfg, dictionary_size);
        const std::size_t n = cfg.size();
        arma::mat B(n, n * dictionary_size, arma::fill::zeros);
        for (std::size_t i = 0; i < n; ++i)
            B(i, i * dictionary_size + cfg.per_element[i].chosen_index) = 1.0;
        return B;
    }

    arma::vec element_gains(const PatternDictionary &dict, const SelectionConfig &cfg, const DirectionAngle &dir)
    {
        check_selection(cfg, dict.size());
        const arma::vec g_bar = eval_dictionary(dict, dir);
        arma::vec g(cfg.size());
        for (std::size_t i = 0; i < cfg.size(); ++i)
            g(i) = g_bar(cfg.per_element[i].chosen_index);
        return g;
    }

    // ---------------------------------------------------------------- Pattern files

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        double parse_number(std::string_view field, const std::string &source, std::size_t line, const char *column)
        {
            field = trim(field);
            if (!field.empty() && field.front() == '+')
                field.remove_prefix(1);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size())
                throw parse_error(source, line, std::string("column ") + column + ": cannot parse '" + std::string(field) + "'");
            if (!std::isfinite(value))
                throw parse_error(source, line, std::string("column ") + column + ": value is not finite");
            return value;
        }
    }

    ElementPattern parse_tabulated_pattern(std::istream &in, const std::string &source_name)
    {
        std::string text;
        std::size_t line_no = 0;

        // Header
        while (std::getline(in, text))
        {
            ++line_no;
            if (!trim(text).empty())
                break;
        }
        if (trim(text) != "az_deg,el_deg,gain_dbi")
            throw parse_error(source_name, line_no, "expected header 'az_deg,el_deg,gain_dbi'");

        struct Row
        {
            double az, el, amplitude;
            std::size_t line;
        };
        std::vector<Row> rows;
        while (std::getline(in, text))
        {
            ++line_no;
            const std::string_view s = trim(text);
            if (s.empty())
                continue;
            const auto c1 = s.find(',');
            const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
            if (c2 == std::string_view::npos || s.find(',', c2 + 1) != std::string_view::npos)
                throw parse_error(source_name, line_no, "expected 3 comma-separated fields");
            const double az = parse_number(s.substr(0, c1), source_name, line_no, "az_deg");
            const double el = parse_number(s.substr(c1 + 1, c2 - c1 - 1), source_name, line_no, "el_deg");
            const double dbi = parse_number(s.substr(c2 + 1), source_name, line_no, "gain_dbi");
            rows.push_back({az, el, dbi_to_amplitude(dbi), line_no});
        }
        if (rows.empty())
            throw parse_error(source_name, line_no, "no data rows");

        // Elevation axis from the leading azimuth block
        std::size_t n_el = 0;
        while (n_el < rows.size() && rows[n_el].az == rows[0].az)
            ++n_el;
        if (rows.size() % n_el != 0)
            throw parse_error(source_name, rows.back().line, "grid is not rectangular: " + std::to_string(rows.size()) +
                                                                 " rows is not a multiple of " + std::to_string(n_el) +
                                                                 " elevation samples");
        const std::size_t n_az = rows.size() / n_el;
        if (n_el < 2 || n_az < 2)
            throw parse_error(source_name, rows.back().line, "grid needs at least 2 azimuth and 2 elevation samples");

        arma::vec az_axis(n_az), el_axis(n_el);
        arma::mat amplitude(n_az, n_el);
        for (std::size_t k = 0; k < rows.size(); ++k)
        {
            const Row &r = rows[k];
            const std::size_t i = k / n_el, j = k % n_el;
            if (i == 0)
            {
                if (j > 0 && !(r.el > el_axis(j - 1)))
                    throw parse_error(source_name, r.line, "elevation axis is not strictly increasing");
                el_axis(j) = r.el;
            }
            else if (r.el != el_axis(j))
                throw parse_error(source_name, r.line, "elevation does not match the grid's elevation axis");

            if (j == 0)
            {
                if (i > 0 && !(r.az > az_axis(i - 1)))
                    throw parse_error(source_name, r.line, "azimuth axis is not strictly increasing");
                az_axis(i) = r.az;
            }
            else if (r.az != az_axis(i))
                throw parse_error(source_name, r.line, "azimuth changes inside an elevation block");

            amplitude(i, j) = r.amplitude;
        }
        return ElementPattern::tabulated(TabulatedGrid(std::move(az_axis), std::move(el_axis), std::move(amplitude)));
    }

    ElementPattern load_tabulated_pattern(const std::filesystem::path &file)
    {
        std::ifstream in(file);
        if (!in)
            throw config_error("cannot open pattern file " + file.string());
        return parse_tabulated_pattern(in, file.string());
    }
}
