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
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "channel.hpp"
#include "coalition.hpp"

namespace pinsec {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Transmit power and noise floor. The transmit power is split equally over
/// the active antennas.
struct LinkBudget
{
    double transmit_power_dbm = 10.0;
    double noise_power_dbm = -90.0;

    double transmit_power_w() const { return dbm_to_watts(transmit_power_dbm); }
    double noise_power_w() const { return dbm_to_watts(noise_power_dbm); }

    /// rho = P_t / (K sigma^2) for K active antennas.
    double snr(std::size_t active) const
    {
        if (active == 0)
            throw std::invalid_argument("snr: at least one antenna must be active");
        return transmit_power_w() / (static_cast<double>(active) * noise_power_w());
    }
};

/// log2(1 + rho |g|^2) for an already-summed effective channel g.
inline double rate_from_effective(std::complex<double> effective, std::size_t active, const LinkBudget& budget)
{
    return std::log2(1.0 + budget.snr(active) * std::norm(effective));
}

/// Achievable rate in bits/s/Hz of one link with the given antennas active.
inline double rate(const ChannelVector& channels, Coalition coalition, const LinkBudget& budget)
{
    return rate_from_effective(effective_channel(channels, coalition), coalition.size(), budget);
}

/// R_bob - R_eve, not clamped.
inline double secrecy_rate(const ChannelVector& bob, const ChannelVector& eve, Coalition coalition, const LinkBudget& budget)
{
    return rate(bob, coalition, budget) - rate(eve, coalition, budget);
}

struct LinkRates
{
    double bob = 0.0;
    double eve = 0.0;
    double secrecy() const { return bob - eve; }
};

/// Callable mapping a coalition to its value.
template <typename F>
concept ValueFunction = std::invocable<const F&, Coalition> && std::convertible_to<std::invoke_result_t<const F&, Coalition>, double>;

/// Coalition value v(S) = secrecy rate for one drop, with v(empty) = 0.
///
/// Results are memoized per coalition. The cache is not synchronized: an
/// evaluator belongs to a single game run / worker.
class SecrecyEvaluator
{
public:
    SecrecyEvaluator(ChannelVector bob, ChannelVector eve, LinkBudget budget)
        : bob_(std::move(bob)), eve_(std::move(eve)), budget_(budget)
    {
        if (bob_.size() != eve_.size())
            throw std::invalid_argument("bob and eve channel vectors differ in length");
        if (bob_.size() == 0 || bob_.size() > Coalition::max_antennas)
            throw std::invalid_argument("channel vectors must hold between 1 and 64 antennas");
    }

    std::size_t size() const noexcept { return bob_.size(); }
    const ChannelVector& bob() const noexcept { return bob_; }
    const ChannelVector& eve() const noexcept { return eve_; }
    const LinkBudget& budget() const noexcept { return budget_; }

    /// Memoized v(S).
    double operator()(Coalition coalition) const
    {
        if (coalition.empty())
            return 0.0;
        if (auto it = cache_.find(coalition.mask()); it != cache_.end())
            return it->second;
        const double v = rates(coalition).secrecy();
        cache_.emplace(coalition.mask(), v);
        return v;
    }

    /// Per-link rates, uncached. Rejects the empty coalition.
    LinkRates rates(Coalition coalition) const
    {
        return {rate(bob_, coalition, budget_), rate(eve_, coalition, budget_)};
    }

    std::size_t cache_size() const noexcept { return cache_.size(); }

private:
    ChannelVector bob_;
    ChannelVector eve_;
    LinkBudget budget_;
    mutable std::unordered_map<std::uint64_t, double> cache_;
};

} // namespace pinsec
