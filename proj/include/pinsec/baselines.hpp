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

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "coalition.hpp"
#include "game.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "secrecy.hpp"

namespace pinsec {

inline constexpr std::size_t brute_force_cap = 24;

struct Optimum
{
    Coalition coalition;
    double value = 0.0;
};

/// Exhaustive argmax of v over all 2^N - 1 nonempty coalitions. Ties go to
/// the numerically smallest bit mask.
template <ValueFunction V>
Optimum brute_force_optimum(const V& v, std::size_t n_antennas)
{
    if (n_antennas == 0)
        throw std::invalid_argument("brute_force_optimum: need at least one antenna");
    if (n_antennas > brute_force_cap)
        throw CapacityError("brute_force_optimum: " + std::to_string(n_antennas) + " antennas exceeds cap of " + std::to_string(brute_force_cap));
    const std::uint64_t end = std::uint64_t{1} << n_antennas;
    Optimum best{Coalition(1), v(Coalition(1))};
    for (std::uint64_t mask = 2; mask < end; ++mask)
    {
        const double value = v(Coalition(mask));
        if (value > best.value)
            best = {Coalition(mask), value};
    }
    return best;
}

/// Same search for a secrecy evaluator without touching its memo cache.
/// Effective channels come from two half-width subset tables (low and high
/// antenna halves), so each coalition costs one complex add per link.
inline Optimum brute_force_optimum(const SecrecyEvaluator& v)
{
    const std::size_t n = v.size();
    if (n > brute_force_cap)
        throw CapacityError("brute_force_optimum: " + std::to_string(n) + " antennas exceeds cap of " + std::to_string(brute_force_cap));

    const std::size_t low_bits = n / 2;
    const std::size_t high_bits = n - low_bits;
    auto subset_sums = [](const ChannelVector& ch, std::size_t first, std::size_t count) {
        std::vector<std::complex<double>> sums(std::size_t{1} << count);
        for (std::size_t m = 1; m < sums.size(); ++m)
        {
            const auto low = static_cast<std::size_t>(std::countr_zero(m));
            sums[m] = sums[m & (m - 1)] + ch.coefficients[first + low];
        }
        return sums;
    };
    const auto bob_low = subset_sums(v.bob(), 0, low_bits);
    const auto bob_high = subset_sums(v.bob(), low_bits, high_bits);
    const auto eve_low = subset_sums(v.eve(), 0, low_bits);
    const auto eve_high = subset_sums(v.eve(), low_bits, high_bits);

    const double p_over_noise = v.budget().transmit_power_w() / v.budget().noise_power_w();
    const std::uint64_t low_mask = (std::uint64_t{1} << low_bits) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;

    std::uint64_t best_mask = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 1; mask < end; ++mask)
    {
        const std::size_t lo = mask & low_mask;
        const std::size_t hi = mask >> low_bits;
        const double rho = p_over_noise / static_cast<double>(std::popcount(mask));
        const double value = std::log2(1.0 + rho * std::norm(bob_low[lo] + bob_high[hi])) - std::log2(1.0 + rho * std::norm(eve_low[lo] + eve_high[hi]));
        if (value > best_value)
        {
            best_value = value;
            best_mask = mask;
        }
    }
    const Coalition best(best_mask);
    return {best, v.rates(best).secrecy()};
}

/// Starting temperature in bits/s/Hz. Neighbouring coalitions routinely
/// differ by several bits at 20-30 dBm, so T = 1 freezes the walk early.
inline constexpr double default_annealing_temperature = 10.0;

/// Geometric cooling: T_k = initial_temperature * cooling_factor^k.
struct AnnealingSchedule
{
    double initial_temperature = default_annealing_temperature;
    double cooling_factor = 0.99;
    std::size_t steps = 1000;

    /// Factor chosen so the temperature reaches final_temperature after `steps` steps.
    static AnnealingSchedule geometric(std::size_t steps, double initial_temperature = default_annealing_temperature, double final_temperature = 1e-3)
    {
        if (steps == 0)
            return {initial_temperature, 0.5, 0};
        return {initial_temperature, std::pow(final_temperature / initial_temperature, 1.0 / static_cast<double>(steps)), steps};
    }

    void validate() const
    {
        if (!(initial_temperature > 0.0))
            throw std::invalid_argument("annealing: initial temperature must be positive");
        if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
            throw std::invalid_argument("annealing: cooling factor must lie in (0, 1)");
    }
};

struct AnnealingStep
{
    double temperature = 0.0;
    double delta = 0.0;     ///< v(proposal) - v(current); NaN for a proposal that empties the coalition
    bool accepted = false;
    double best_value = 0.0;
};

struct AnnealingResult
{
    Coalition coalition; ///< best visited
    double value = 0.0;
    Coalition start;
    double start_value = 0.0;
    std::vector<AnnealingStep> history; ///< filled when requested
};

/// Metropolis search over activation vectors with single-antenna flips.
/// Starts from a uniformly random nonempty coalition; flips that would
/// deactivate the last antenna are rejected.
template <ValueFunction V>
AnnealingResult simulated_annealing(const V& v, std::size_t n_antennas, const AnnealingSchedule& schedule, std::uint64_t seed,
                                    bool record_history = false)
{
    schedule.validate();
    if (n_antennas == 0 || n_antennas > Coalition::max_antennas)
        throw std::invalid_argument("simulated_annealing: antenna count must be in [1, 64]");

    Rng rng(seed);
    const std::uint64_t full = n_antennas == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_antennas) - 1;
    Coalition current(n_antennas == 64 ? (rng.next_u64() | 1U) : 1 + rng.below(full));
    double current_value = v(current);

    AnnealingResult result;
    result.start = current;
    result.start_value = current_value;
    result.coalition = current;
    result.value = current_value;
    if (record_history)
        result.history.reserve(schedule.steps);

    double temperature = schedule.initial_temperature;
    for (std::size_t k = 0; k < schedule.steps; ++k, temperature *= schedule.cooling_factor)
    {
        const std::size_t n = rng.below(n_antennas);
        const Coalition proposal = current.contains(n) ? current.without(n) : current.with(n);
        AnnealingStep step{temperature, std::numeric_limits<double>::quiet_NaN(), false, 0.0};
        if (!proposal.empty())
        {
            const double proposal_value = v(proposal);
            step.delta = proposal_value - current_value;
            // Always draw, so the stream position does not depend on the outcome.
            const double u = rng.uniform01();
            step.accepted = step.delta >= 0.0 || u < std::exp(step.delta / temperature);
            if (step.accepted)
            {
                current = proposal;
                current_value = proposal_value;
                if (current_value > result.value)
                {
                    result.coalition = current;
                    result.value = current_value;
                }
            }
        }
        step.best_value = result.value;
        if (record_history)
            result.history.push_back(step);
    }
    return result;
}

/// Merge/split scan driven by the coalition value alone: join iff
/// v(S + n) > v(S), leave iff v(S - n) > v(S) and |S| > 1.
template <ValueFunction V>
ActivationResult coalition_value_activation(const V& v, const AntennaLayout& layout, const Point3& bob, const ActivationOptions& options = {})
{
    return detail::activation_loop(
        v, layout, bob, options,
        [&](Coalition s, std::size_t n) {
            Decision d;
            d.inside = v(s.with(n));
            d.outside = v(s);
            d.move = d.inside > d.outside ? Move::Merge : Move::None;
            return d;
        },
        [&](Coalition s, std::size_t n) {
            Decision d;
            d.inside = v(s);
            if (s.size() == 1)
                return d;
            d.outside = v(s.without(n));
            d.move = d.outside > d.inside ? Move::Split : Move::None;
            return d;
        });
}

/// Fixed half-wavelength uniform linear array at the region center, on the
/// waveguide height, oriented along x. Free-space phase only.
inline ChannelVector ula_channel_vector(const Scenario& scenario, std::size_t n_antennas, const Point3& receiver)
{
    if (n_antennas == 0)
        throw std::invalid_argument("ula: need at least one antenna");
    const auto w = wavelengths(scenario);
    const double center_x = 0.5 * scenario.region_x;
    const double center_y = 0.5 * (scenario.y_min() + scenario.y_max());
    ChannelVector cv;
    cv.wavelength = w.wavelength;
    cv.guided_wavelength = w.guided_wavelength;
    cv.coefficients.reserve(n_antennas);
    for (std::size_t i = 0; i < n_antennas; ++i)
    {
        const double offset = (static_cast<double>(i) - 0.5 * static_cast<double>(n_antennas - 1)) * 0.5 * w.wavelength;
        const Point3 element{center_x + offset, center_y, scenario.waveguide_height};
        const double d = distance(receiver, element);
        cv.coefficients.push_back(std::polar(w.path_loss / d, -wrap_two_pi(two_pi * d / w.wavelength)));
    }
    return cv;
}

/// Rates of the fixed array with every element active and equal power.
inline LinkRates ula_secrecy_rate(const Scenario& scenario, const Drop& drop, std::size_t n_antennas, const LinkBudget& budget)
{
    const Coalition all = Coalition::all(n_antennas);
    return {rate(ula_channel_vector(scenario, n_antennas, drop.bob), all, budget), rate(ula_channel_vector(scenario, n_antennas, drop.eve), all, budget)};
}

} // namespace pinsec
