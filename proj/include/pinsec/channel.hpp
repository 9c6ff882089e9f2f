// SPDX-License-Identifier: Apache-2.0
//
// pinsec: pinching-antenna physical layer security simulation library
// Copyright (C) 2026 The pinsec authors
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

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "coalition.hpp"
#include "geometry.hpp"

namespace pinsec {

inline constexpr double speed_of_light = 299'792'458.0; // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Wavelengths
{
    double wavelength;        // lambda = c / f_c
    double guided_wavelength; // lambda_g = lambda / n_eff
    double path_loss;         // eta = c / (4 pi f_c)
};

inline Wavelengths wavelengths(const Scenario& scenario)
{
    if (!(scenario.carrier_frequency > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
    const double lambda = speed_of_light / scenario.carrier_frequency;
    return {lambda, lambda / scenario.effective_refractive_index, speed_of_light / (4.0 * std::numbers::pi * scenario.carrier_frequency)};
}

/// Reduce an angle into [0, 2 pi).
inline double wrap_two_pi(double phase) noexcept
{
    double r = std::fmod(phase, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi)
        r = 0.0;
    return r;
}

/// Unwrapped phase accrued from the feed point, along the waveguide to
/// antenna n, then through free space to the receiver.
inline double total_phase(const Scenario& scenario, const AntennaLayout& layout, const Point3& receiver, std::size_t n)
{
    const auto w = wavelengths(scenario);
    const Point3 antenna = layout.position(n);
    return two_pi * distance(receiver, antenna) / w.wavelength + two_pi * distance(scenario.feed_point(), antenna) / w.guided_wavelength;
}

/// h_n = eta / |receiver - antenna_n| * exp(-j phi_n). The phase is wrapped
/// once before the complex exponential.
inline std::complex<double> channel_coefficient(const Scenario& scenario, const AntennaLayout& layout, const Point3& receiver, std::size_t n)
{
    const auto w = wavelengths(scenario);
    const double d = distance(receiver, layout.position(n));
    return std::polar(w.path_loss / d, -wrap_two_pi(total_phase(scenario, layout, receiver, n)));
}

/// Coefficients of every antenna in a layout towards one receiver.
struct ChannelVector
{
    std::vector<std::complex<double>> coefficients;
    double wavelength = 0.0;
    double guided_wavelength = 0.0;

    std::size_t size() const noexcept { return coefficients.size(); }
    const std::complex<double>& operator[](std::size_t n) const { return coefficients.at(n); }
};

inline ChannelVector channel_vector(const Scenario& scenario, const AntennaLayout& layout, const Point3& receiver)
{
    const auto w = wavelengths(scenario);
    ChannelVector cv;
    cv.wavelength = w.wavelength;
    cv.guided_wavelength = w.guided_wavelength;
    cv.coefficients.reserve(layout.size());
    for (std::size_t n = 0; n < layout.size(); ++n)
        cv.coefficients.push_back(channel_coefficient(scenario, layout, receiver, n));
    return cv;
}

/// Coherent sum of the active antennas' coefficients.
inline std::complex<double> effective_channel(const ChannelVector& channels, Coalition coalition)
{
    if (coalition.empty())
        throw std::invalid_argument("effective_channel: at least one antenna must be active");
    if (coalition.span_width() > channels.size())
        throw std::out_of_range("effective_channel: coalition refers to antenna beyond the channel vector");
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t m = coalition.mask(); m != 0; m &= m - 1)
        sum += channels.coefficients[static_cast<std::size_t>(std::countr_zero(m))];
    return sum;
}

/// mod(phi_n - phi_m, 2 pi) at the receiver. A gap of 0 means the two
/// antennas add constructively there, a gap of pi means they cancel.
inline double phase_gap(const Scenario& scenario, const AntennaLayout& layout, const Point3& receiver, std::size_t n, std::size_t m)
{
    if (n == m)
        throw std::invalid_argument("phase_gap: antennas must differ");
    return wrap_two_pi(total_phase(scenario, layout, receiver, n) - total_phase(scenario, layout, receiver, m));
}

} // namespace pinsec
