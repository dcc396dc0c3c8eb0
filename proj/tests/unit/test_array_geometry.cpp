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

#include <catch_amalgamated.hpp>

#include "era/array_geometry.hpp"
#include "era/errors.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace era;
using Catch::Matchers::WithinAbs;
constexpr double pi = std::numbers::pi;

TEST_CASE("spatial_angles closed form", "[array_geometry]")
{
    const auto geom = ArrayGeometry::ula(4, 0.5);

    auto sa = spatial_angles(geom, {0.0, pi / 2});
    CHECK_THAT(sa.theta_h, WithinAbs(0.0, 1e-15));
    CHECK_THAT(sa.theta_v, WithinAbs(0.0, 1e-15));

    sa = spatial_angles(geom, {pi / 2, pi / 2});
    CHECK_THAT(sa.theta_h, WithinAbs(0.5, 1e-15));
    CHECK_THAT(sa.theta_v, WithinAbs(0.0, 1e-15));

    // 0.5 sin(135 deg), 30-digit reference value
    sa = spatial_angles(geom, {3 * pi / 4, pi / 2});
    CHECK_THAT(sa.theta_h, WithinAbs(0.353553390593273762200422181052, 1e-15));
    CHECK_THAT(sa.theta_v, WithinAbs(0.0, 1e-15));
}

TEST_CASE("spatial_angles stay within the spacing bound and flip under el -> pi - el", "[array_geometry]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 1000; ++k)
    {
        const ArrayGeometry g(1 + rng() % 5, 1 + rng() % 5, 0.05 + 2.0 * U(rng));
        const DirectionAngle d{2 * pi * U(rng), pi * U(rng)};
        const auto sa = spatial_angles(g, d);
        REQUIRE(std::abs(sa.theta_h) <= g.spacing_wavelengths());
        REQUIRE(std::abs(sa.theta_v) <= g.spacing_wavelengths());

        const auto mirrored = spatial_angles(g, {d.azimuth_rad, pi - d.elevation_rad});
        REQUIRE_THAT(mirrored.theta_h, WithinAbs(sa.theta_h, 1e-14));
        REQUIRE_THAT(mirrored.theta_v, WithinAbs(-sa.theta_v, 1e-14));
    }
}

TEST_CASE("steering_vector examples", "[array_geometry]")
{
    SECTION("single element")
    {
        const auto a = steering_vector(ArrayGeometry(), DirectionAngle::from_degrees(37.0, 61.0));
        REQUIRE(a.n_elem == 1);
        CHECK(a(0) == std::complex<double>(1.0, 0.0));
    }
    SECTION("endfire ULA alternates sign")
    {
        const auto a = steering_vector(ArrayGeometry::ula(4, 0.5), {pi / 2, pi / 2});
        const double expect[] = {0.5, -0.5, 0.5, -0.5};
        for (int i = 0; i < 4; ++i)
        {
            CHECK_THAT(a(i).real(), WithinAbs(expect[i], 1e-15));
            CHECK_THAT(a(i).imag(), WithinAbs(0.0, 1e-15));
        }
    }
    SECTION("2x2 UPA against the scalar-loop oracle")
    {
        const ArrayGeometry g(2, 2, 0.5);
        const DirectionAngle d{3 * pi / 4, pi / 3};
        const auto a = steering_vector(g, d);
        const auto ref = oracle::steering(2, 2, 0.5, d.azimuth_rad, d.elevation_rad);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(a(i) - ref(i)) <= 1e-12);

        // 30-digit evaluation of the closed form
        const std::complex<double> frozen[] = {{0.5, 0.0},
                                               {0.0, -0.5},
                                               {-0.17287052217438971328, -0.4691649843745309116},
                                               {-0.4691649843745309116, 0.17287052217438971328}};
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(a(i) - frozen[i]) <= 1e-12);
    }
}

TEST_CASE("steering_vector is unit norm with entry 0 exactly 1/sqrt(N)", "[array_geometry]")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 1000; ++k)
    {
        const ArrayGeometry g(1 + rng() % 8, 1 + rng() % 8, 0.1 + 1.9 * U(rng));
        const DirectionAngle d{2 * pi * U(rng), pi * U(rng)};
        const auto a = steering_vector(g, d);
        REQUIRE(a.n_elem == g.n_elements());
        REQUIRE_THAT(arma::norm(a, 2), WithinAbs(1.0, 1e-12));
        REQUIRE(a(0) == std::complex<double>(1.0 / std::sqrt(double(g.n_elements())), 0.0));
    }
}

TEST_CASE("steering_vector follows horizontal-major Kronecker order", "[array_geometry]")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 200; ++k)
    {
        const std::size_t nh = 1 + rng() % 6, nv = 1 + rng() % 6;
        const ArrayGeometry g(nh, nv, 0.2 + U(rng));
        const DirectionAngle d{2 * pi * U(rng), pi * U(rng)};
        const auto a = steering_vector(g, d);
        for (std::size_t h = 0; h < nh; ++h)
            for (std::size_t v = 0; v < nv; ++v)
                REQUIRE(std::abs(a(g.flat_index(h, v)) -
                                 oracle::steering_entry(nh, nv, g.spacing_wavelengths(), d.azimuth_rad, d.elevation_rad, h, v)) <=
                        1e-12);
    }
}

TEST_CASE("DirectionAngle canonicalization", "[array_geometry]")
{
    const auto d = DirectionAngle::from_degrees(-90.0, 90.0);
    CHECK_THAT(d.azimuth_deg(), WithinAbs(270.0, 1e-12));
    CHECK_THAT(d.elevation_deg(), WithinAbs(90.0, 1e-12));

    const auto e = DirectionAngle::from_degrees(10.0, 200.0);
    CHECK_THAT(e.azimuth_deg(), WithinAbs(190.0, 1e-12));
    CHECK_THAT(e.elevation_deg(), WithinAbs(160.0, 1e-12));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-20.0, 20.0);
    for (int k = 0; k < 1000; ++k)
    {
        const DirectionAngle raw{U(rng), U(rng)};
        const auto c = raw.canonical();
        REQUIRE(c.azimuth_rad >= 0.0);
        REQUIRE(c.azimuth_rad < 2 * pi);
        REQUIRE(c.elevation_rad >= 0.0);
        REQUIRE(c.elevation_rad <= pi);
        REQUIRE(arma::norm(c.unit_vector() - raw.unit_vector()) < 1e-12);
    }
}

TEST_CASE("ArrayGeometry validation", "[array_geometry]")
{
    CHECK_THROWS_AS(ArrayGeometry(0, 1, 0.5), config_error);
    CHECK_THROWS_AS(ArrayGeometry(1, 0, 0.5), config_error);
    CHECK_THROWS_AS(ArrayGeometry(2, 1, 0.0), config_error);
    CHECK_THROWS_AS(ArrayGeometry(2, 1, -0.5), config_error);
    const auto g = ArrayGeometry(3, 4, 0.7);
    CHECK(g.n_elements() == 12);
    CHECK(g.flat_index(2, 1) == 9);
}
