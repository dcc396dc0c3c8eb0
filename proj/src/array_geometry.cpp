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

#include "era/array_geometry.hpp"
#include "era/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace era
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        double wrap_two_pi(double x)
        {
            double r = std::fmod(x, two_pi);
            if (r < 0.0)
                r += two_pi;
            if (r >= two_pi) // fmod rounding on tiny negatives
                r = 0.0;
            return r;
        }
    }

    DirectionAngle DirectionAngle::canonical() const
    {
        double az = azimuth_rad;
        double el = wrap_two_pi(elevation_rad);
        if (el > std::numbers::pi)
        {
            el = two_pi - el;
            az += std::numbers::pi;
        }
        return {wrap_two_pi(az), el};
    }

    DirectionAngle DirectionAngle::from_degrees(double azimuth_deg, double elevation_deg)
    {
        return DirectionAngle{deg2rad(azimuth_deg), deg2rad(elevation_deg)}.canonical();
    }

    arma::vec3 DirectionAngle::unit_vector() const
    {
        const double s = std::sin(elevation_rad);
        return {s * std::cos(azimuth_rad), s * std::sin(azimuth_rad), std::cos(elevation_rad)};
    }

    double cos_angle_between(const DirectionAngle &a, const DirectionAngle &b)
    {
        const double c = arma::dot(a.unit_vector(), b.unit_vector());
        return std::clamp(c, -1.0, 1.0);
    }

    ArrayGeometry::ArrayGeometry(std::size_t n_horizontal, std::size_t n_vertical, double spacing_wavelengths)
        : n_horizontal_(n_horizontal), n_vertical_(n_vertical), spacing_(spacing_wavelengths)
    {
        if (n_horizontal == 0)
            throw config_error("n_horizontal must be at least 1");
        if (n_vertical == 0)
            throw config_error("n_vertical must be at least 1");
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw config_error("spacing_wavelengths must be positive and finite, got " + std::to_string(spacing_wavelengths));
    }

    ArrayGeometry ArrayGeometry::ula(std::size_t n_elements, double spacing_wavelengths)
    {
        return ArrayGeometry(n_elements, 1, spacing_wavelengths);
    }

    SpatialAngles spatial_angles(const ArrayGeometry &geom, const DirectionAngle &dir)
    {
        const double d = geom.spacing_wavelengths();
        return {d * std::sin(dir.azimuth_rad) * std::sin(dir.elevation_rad),
                d * std::cos(dir.elevation_rad)};
    }

    arma::cx_vec steering_vector(const ArrayGeometry &geom, const DirectionAngle &dir)
    {
        const SpatialAngles sa = spatial_angles(geom, dir);
        const std::size_t nh = geom.n_horizontal(), nv = geom.n_vertical();
        const double scale = 1.0 / std::sqrt(double(nh * nv));

        arma::cx_vec horizontal(nh), vertical(nv);
        for (std::size_t h = 0; h < nh; ++h)
            horizontal(h) = std::polar(1.0, -two_pi * sa.theta_h * double(h));
        for (std::size_t v = 0; v < nv; ++v)
            vertical(v) = std::polar(1.0, -two_pi * sa.theta_v * double(v));

        // Kronecker order: horizontal index major
        arma::cx_vec a(nh * nv);
        for (std::size_t h = 0; h < nh; ++h)
            for (std::size_t v = 0; v < nv; ++v)
                a(geom.flat_index(h, v)) = scale * (horizontal(h) * vertical(v));
        return a;
    }
}
