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

#ifndef era_array_geometry_H
#define era_array_geometry_H

#include <armadillo>
#include <cstddef>

namespace era
{
    constexpr double deg2rad(double deg) { return deg * (3.14159265358979323846 / 180.0); }
    constexpr double rad2deg(double rad) { return rad * (180.0 / 3.14159265358979323846); }

    // Direction in the array body frame.
    // Azimuth: angle between +X and the projection onto the XOY plane. Elevation: angle from +Z.
    struct DirectionAngle
    {
        double azimuth_rad = 0.0;
        double elevation_rad = 0.0;

        // Canonical form with azimuth in [0, 2pi) and elevation in [0, pi], same physical direction
        DirectionAngle canonical() const;

        // Builds a canonical direction from angles given in degrees
        static DirectionAngle from_degrees(double azimuth_deg, double elevation_deg);

        double azimuth_deg() const { return rad2deg(azimuth_rad); }
        double elevation_deg() const { return rad2deg(elevation_rad); }

        // Cartesian unit vector (sin el cos az, sin el sin az, cos el)
        arma::vec3 unit_vector() const;

        bool operator==(const DirectionAngle &) const = default;
    };

    // Cosine of the great-circle angle between two directions, clamped to [-1, 1]
    double cos_angle_between(const DirectionAngle &a, const DirectionAngle &b);

    // Uniform planar array on the YOZ plane: n_horizontal elements along Y, n_vertical along Z.
    // Element i sits at flat index i = h * n_vertical + v.
    class ArrayGeometry
    {
    public:
        ArrayGeometry() = default; // single element, half-wavelength spacing
        ArrayGeometry(std::size_t n_horizontal, std::size_t n_vertical, double spacing_wavelengths);

        // Uniform linear array along Y (n_vertical = 1)
        static ArrayGeometry ula(std::size_t n_elements, double spacing_wavelengths = 0.5);

        std::size_t n_horizontal() const { return n_horizontal_; }
        std::size_t n_vertical() const { return n_vertical_; }
        std::size_t n_elements() const { return n_horizontal_ * n_vertical_; }
        double spacing_wavelengths() const { return spacing_; } // d_I / lambda

        std::size_t flat_index(std::size_t h, std::size_t v) const { return h * n_vertical_ + v; }

        bool operator==(const ArrayGeometry &) const = default;

    private:
        std::size_t n_horizontal_ = 1;
        std::size_t n_vertical_ = 1;
        double spacing_ = 0.5;
    };

    // Dimensionless spatial frequencies of a plane wave along the two array axes
    struct SpatialAngles
    {
        double theta_h = 0.0; // (d/lambda) sin(az) sin(el)
        double theta_v = 0.0; // (d/lambda) cos(el)
    };

    SpatialAngles spatial_angles(const ArrayGeometry &geom, const DirectionAngle &dir);

    // Unit-norm far-field array response vector, length n_elements:
    //   a = 1/sqrt(N) exp(-j 2pi theta_h k(N_h)) kron exp(-j 2pi theta_v k(N_v))
    arma::cx_vec steering_vector(const ArrayGeometry &geom, const DirectionAngle &dir);
}

#endif
