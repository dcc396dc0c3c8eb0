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

#ifndef era_random_H
#define era_random_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace era
{
    // Seeded generator with portable variate transforms.
    // std::mt19937_64 output is fixed by the standard, the std:: distributions are not, so the
    // uniform and Gaussian mappings are done here to keep outputs identical across toolchains.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // Uniform on [0, 1) with 53 random bits
        double uniform()
        {
            return double(engine_() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi)
        {
            return lo + (hi - lo) * uniform();
        }

        // Standard normal, Box-Muller (one variate per call, no cached state)
        double normal()
        {
            const double u1 = 1.0 - uniform(); // (0, 1]
            const double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }

        // Circular complex Gaussian CN(0, variance)
        std::complex<double> complex_normal(double variance)
        {
            const double s = std::sqrt(0.5 * variance);
            const double re = normal();
            const double im = normal();
            return {s * re, s * im};
        }

    private:
        std::mt19937_64 engine_;
    };

    // Seed of Monte-Carlo trial t; parallel and serial runs use the same mapping
    inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
    {
        return seed + trial;
    }
}

#endif
