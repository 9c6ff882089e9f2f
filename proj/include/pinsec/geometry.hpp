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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "random.hpp"

namespace pinsec {

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

/// Euclidean distance in meters.
inline double distance(const Point3& a, const Point3& b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

/// Where the user region sits relative to the waveguide (which runs along y = 0).
enum class RegionMode
{
    Straddling, ///< y in [-D_y/2, D_y/2]
    OneSided,   ///< y in [0, D_y]
};

inline std::string_view to_string(RegionMode mode)
{
    return mode == RegionMode::Straddling ? "straddling" : "one-sided";
}

inline RegionMode region_mode_from_string(std::string_view s)
{
    if (s == "straddling")
        return RegionMode::Straddling;
    if (s == "one-sided")
        return RegionMode::OneSided;
    throw std::invalid_argument("unknown region mode '" + std::string(s) + "' (expected straddling or one-sided)");
}

/// Physical configuration shared by every trial. Defaults are the 28 GHz
/// indoor setup: 10 m x 6 m room, 10 m waveguide hung at 3 m.
struct Scenario
{
    double region_x = 10.0;                  // m
    double region_y = 6.0;                   // m
    double waveguide_height = 3.0;           // m
    double waveguide_length = 10.0;          // m
    double carrier_frequency = 28e9;         // Hz
    double effective_refractive_index = 1.4; //
    double noise_power_dbm = -90.0;          // dBm
    double feed_point_x = 0.0;               // m, along the waveguide
    RegionMode region_mode = RegionMode::Straddling;

    void validate() const
    {
        auto require = [](bool ok, const char* what) {
            if (!ok)
                throw std::invalid_argument(std::string("invalid scenario: ") + what);
        };
        require(region_x > 0.0, "region_x must be positive");
        require(region_y > 0.0, "region_y must be positive");
        require(waveguide_height > 0.0, "waveguide_height must be positive");
        require(waveguide_length >= 0.0, "waveguide_length must be nonnegative");
        require(carrier_frequency > 0.0, "carrier_frequency must be positive");
        require(effective_refractive_index >= 1.0, "effective_refractive_index must be >= 1");
        require(std::isfinite(noise_power_dbm), "noise_power_dbm must be finite");
        require(feed_point_x >= 0.0 && feed_point_x <= waveguide_length, "feed_point_x must lie on the waveguide");
    }

    double y_min() const { return region_mode == RegionMode::Straddling ? -0.5 * region_y : 0.0; }
    double y_max() const { return region_mode == RegionMode::Straddling ? 0.5 * region_y : region_y; }

    Point3 feed_point() const { return {feed_point_x, 0.0, waveguide_height}; }

    bool contains(const Point3& p) const
    {
        return p.z == 0.0 && p.x >= 0.0 && p.x <= region_x && p.y >= y_min() && p.y <= y_max();
    }
};

/// Positions of the pre-installed pinching antennas along the waveguide.
class AntennaLayout
{
public:
    AntennaLayout(std::vector<double> positions_x, double height) : xs_(std::move(positions_x)), height_(height)
    {
        if (xs_.empty())
            throw std::invalid_argument("antenna layout needs at least one antenna");
        for (std::size_t i = 1; i < xs_.size(); ++i)
            if (!(xs_[i] > xs_[i - 1]))
                throw std::invalid_argument("antenna positions must be strictly increasing");
    }

    std::size_t size() const noexcept { return xs_.size(); }
    std::span<const double> positions_x() const noexcept { return xs_; }
    double height() const noexcept { return height_; }

    Point3 position(std::size_t n) const
    {
        if (n >= xs_.size())
            throw std::out_of_range("antenna index " + std::to_string(n) + " out of range");
        return {xs_[n], 0.0, height_};
    }

    /// Index of the antenna closest to p; ties go to the smaller index.
    std::size_t closest_to(const Point3& p) const
    {
        std::size_t best = 0;
        double best_d = distance(position(0), p);
        for (std::size_t n = 1; n < xs_.size(); ++n)
        {
            const double d = distance(position(n), p);
            if (d < best_d)
            {
                best = n;
                best_d = d;
            }
        }
        return best;
    }

private:
    std::vector<double> xs_;
    double height_;
};

/// n antennas equally spaced over the whole waveguide, endpoints included.
/// A single antenna sits at the midpoint.
inline AntennaLayout uniform_layout(const Scenario& scenario, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_layout: antenna count must be at least 1");
    const double length = scenario.waveguide_length;
    std::vector<double> xs(n);
    if (n == 1)
        xs[0] = 0.5 * length;
    else
    {
        const double step = length / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = static_cast<double>(i) * step;
        xs[n - 1] = length;
    }
    return AntennaLayout(std::move(xs), scenario.waveguide_height);
}

/// One random placement of the legitimate user and the eavesdropper.
struct Drop
{
    Point3 bob;
    Point3 eve;
};

/// Bob and Eve independently uniform over the region floor. Draw order is
/// bob.x, bob.y, eve.x, eve.y.
inline Drop sample_drop(const Scenario& scenario, Rng& rng)
{
    Drop drop;
    drop.bob.x = rng.uniform(0.0, scenario.region_x);
    drop.bob.y = rng.uniform(scenario.y_min(), scenario.y_max());
    drop.eve.x = rng.uniform(0.0, scenario.region_x);
    drop.eve.y = rng.uniform(scenario.y_min(), scenario.y_max());
    return drop;
}

} // namespace pinsec
