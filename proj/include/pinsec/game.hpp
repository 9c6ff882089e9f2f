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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coalition.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "secrecy.hpp"

namespace pinsec {

/// Raised when an exact enumeration would exceed its configured size.
class CapacityError : public std::length_error
{
public:
    using std::length_error::length_error;
};

/// Raised for a move that would leave no antenna active.
class InvalidMove : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

inline constexpr std::size_t default_shapley_cap = 24;

/// Exact Shapley value of member n in the game restricted to `coalition`,
/// by enumeration of all subsets of coalition \ {n}:
///
///   phi_n = sum_{T subset S\{n}} |T|! (|S|-|T|-1)! / |S|! * [v(T + n) - v(T)]
///
/// with v(empty) taken from the value function (0 for SecrecyEvaluator).
template <ValueFunction V>
double shapley_value(const V& v, Coalition coalition, std::size_t n, std::size_t cap = default_shapley_cap)
{
    if (!coalition.contains(n))
        throw std::invalid_argument("shapley_value: antenna " + std::to_string(n) + " is not in the coalition");
    const std::size_t k = coalition.size();
    if (k > cap)
        throw CapacityError("shapley_value: coalition of size " + std::to_string(k) + " exceeds cap " + std::to_string(cap));

    // weight[s] = s!(k-s-1)!/k! = 1 / (k * C(k-1, s))
    std::vector<double> weight(k);
    double binom = 1.0;
    for (std::size_t s = 0; s < k; ++s)
    {
        weight[s] = 1.0 / (static_cast<double>(k) * binom);
        binom = binom * static_cast<double>(k - 1 - s) / static_cast<double>(s + 1);
    }

    const std::uint64_t self = std::uint64_t{1} << n;
    const std::uint64_t rest = coalition.mask() & ~self;
    double total = 0.0;
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest)
    {
        const double gain = v(Coalition(sub | self)) - v(Coalition(sub));
        total += weight[static_cast<std::size_t>(std::popcount(sub))] * gain;
        if (sub == 0)
            break;
    }
    return total;
}

/// Marginal contribution used as the payoff of an antenna outside the
/// Shapley bargaining: v(S) - v(S + n) for an outsider (what it gains by
/// staying out), v(S - n) - v(S) for a member (what it gains by leaving).
template <ValueFunction V>
double outside_payoff(const V& v, Coalition coalition, std::size_t n)
{
    if (coalition.empty())
        throw std::invalid_argument("outside_payoff: coalition must be nonempty");
    if (!coalition.contains(n))
        return v(coalition) - v(coalition.with(n));
    if (coalition.size() == 1)
        throw InvalidMove("outside_payoff: the sole active antenna cannot leave");
    return v(coalition.without(n)) - v(coalition);
}

enum class Move
{
    None,
    Merge,
    Split,
};

inline std::string_view to_string(Move m)
{
    switch (m)
    {
    case Move::Merge:
        return "merge";
    case Move::Split:
        return "split";
    default:
        return "none";
    }
}

/// Outcome of one rule evaluation. `inside` is the payoff the antenna gets
/// as a member, `outside` the payoff it gets as a non-member; NaN where the
/// comparison was not made.
struct Decision
{
    Move move = Move::None;
    double inside = std::numeric_limits<double>::quiet_NaN();
    double outside = std::numeric_limits<double>::quiet_NaN();
};

/// Merge rule: an outsider joins iff its Shapley value after joining
/// strictly exceeds its marginal payoff for staying out.
template <ValueFunction V>
Decision merge_candidate(const V& v, Coalition coalition, std::size_t n, std::size_t cap = default_shapley_cap)
{
    if (coalition.contains(n))
        throw std::invalid_argument("merge_candidate: antenna " + std::to_string(n) + " is already a member");
    Decision d;
    d.outside = outside_payoff(v, coalition, n);
    d.inside = shapley_value(v, coalition.with(n), n, cap);
    d.move = d.inside > d.outside ? Move::Merge : Move::None;
    return d;
}

/// Split rule: a member leaves iff its marginal payoff for leaving strictly
/// exceeds its Shapley value, and it is not the only member.
template <ValueFunction V>
Decision split_candidate(const V& v, Coalition coalition, std::size_t n, std::size_t cap = default_shapley_cap)
{
    if (!coalition.contains(n))
        throw std::invalid_argument("split_candidate: antenna " + std::to_string(n) + " is not a member");
    Decision d;
    d.inside = shapley_value(v, coalition, n, cap);
    if (coalition.size() == 1)
        return d;
    d.outside = outside_payoff(v, coalition, n);
    d.move = d.outside > d.inside ? Move::Split : Move::None;
    return d;
}

/// Nash stability: no outsider gains by joining and no member (of a
/// coalition larger than one) gains by leaving.
template <ValueFunction V>
bool is_nash_stable(const V& v, Coalition coalition, std::size_t n_antennas, std::size_t cap = default_shapley_cap)
{
    if (coalition.empty())
        throw std::invalid_argument("is_nash_stable: coalition must be nonempty");
    for (std::size_t n = 0; n < n_antennas; ++n)
    {
        if (!coalition.contains(n))
        {
            if (shapley_value(v, coalition.with(n), n, cap) > outside_payoff(v, coalition, n))
                return false;
        }
        else if (coalition.size() > 1)
        {
            if (outside_payoff(v, coalition, n) > shapley_value(v, coalition, n, cap))
                return false;
        }
    }
    return true;
}

inline bool is_nash_stable(const SecrecyEvaluator& v, Coalition coalition, std::size_t cap = default_shapley_cap)
{
    return is_nash_stable(v, coalition, v.size(), cap);
}

/// Payoff of every antenna with respect to a coalition: the Shapley value
/// for members, the marginal contribution of staying out for outsiders.
struct PayoffReport
{
    std::size_t antenna = 0;
    bool in_coalition = false;
    double payoff = 0.0;
};

template <ValueFunction V>
std::vector<PayoffReport> payoff_report(const V& v, Coalition coalition, std::size_t n_antennas, std::size_t cap = default_shapley_cap)
{
    std::vector<PayoffReport> out;
    out.reserve(n_antennas);
    for (std::size_t n = 0; n < n_antennas; ++n)
    {
        const bool member = coalition.contains(n);
        out.push_back({n, member, member ? shapley_value(v, coalition, n, cap) : outside_payoff(v, coalition, n)});
    }
    return out;
}

struct TraceStep
{
    std::size_t iteration = 0; ///< 1-based count of examined antennas
    std::size_t cycle = 0;     ///< 1-based
    std::size_t antenna = 0;
    Move action = Move::None;
    Coalition coalition;       ///< after the step
    double value = 0.0;        ///< v(coalition) after the step
    double inside_payoff = std::numeric_limits<double>::quiet_NaN();
    double outside_payoff = std::numeric_limits<double>::quiet_NaN();
};

struct GameTrace
{
    Coalition initial;
    double initial_value = 0.0;
    std::vector<TraceStep> steps;
    bool converged = false;
    std::size_t cycles_used = 0;

    /// Examined-antenna count up to and including the last accepted move.
    std::size_t iterations_to_converge() const
    {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            if (it->action != Move::None)
                return it->iteration;
        return 0;
    }

    std::size_t moves() const
    {
        return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const TraceStep& s) { return s.action != Move::None; }));
    }
};

enum class ScanOrder
{
    Ascending,
    Shuffled, ///< fresh seeded permutation every cycle
};

struct ActivationOptions
{
    std::size_t cycle_cap = 100;
    std::size_t shapley_cap = default_shapley_cap;
    ScanOrder order = ScanOrder::Ascending;
    std::uint64_t order_seed = 0;
};

struct ActivationResult
{
    Coalition coalition;
    GameTrace trace;
};

namespace detail {

/// Shared merge/split scan. Starts from the antenna closest to Bob and
/// sweeps all antennas per cycle until a full cycle makes no move or the
/// cycle cap is hit.
template <ValueFunction V, typename MergeRule, typename SplitRule>
ActivationResult activation_loop(const V& v, const AntennaLayout& layout, const Point3& bob, const ActivationOptions& options,
                                 MergeRule&& merge_rule, SplitRule&& split_rule)
{
    const std::size_t n_antennas = layout.size();
    if (n_antennas > Coalition::max_antennas)
        throw CapacityError("activation: at most 64 antennas supported");

    ActivationResult result;
    Coalition s = Coalition::singleton(layout.closest_to(bob));
    result.trace.initial = s;
    result.trace.initial_value = v(s);

    std::vector<std::size_t> order(n_antennas);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::size_t iteration = 0;
    for (std::size_t cycle = 1; cycle <= options.cycle_cap; ++cycle)
    {
        if (options.order == ScanOrder::Shuffled)
        {
            Rng rng(derive_seed(options.order_seed, {cycle}));
            for (std::size_t i = n_antennas; i > 1; --i)
                std::swap(order[i - 1], order[rng.below(i)]);
        }

        bool changed = false;
        for (const std::size_t n : order)
        {
            // A merge of n can never be followed by a split of n in the same
            // step (the two rules compare the same pair of numbers), so the
            // member / non-member branches are exclusive.
            Decision d = s.contains(n) ? split_rule(s, n) : merge_rule(s, n);
            if (d.move == Move::Merge)
                s = s.with(n);
            else if (d.move == Move::Split)
                s = s.without(n);
            changed = changed || d.move != Move::None;

            result.trace.steps.push_back({++iteration, cycle, n, d.move, s, v(s), d.inside, d.outside});
        }
        result.trace.cycles_used = cycle;
        if (!changed)
        {
            result.trace.converged = true;
            break;
        }
    }
    result.coalition = s;
    return result;
}

} // namespace detail

/// Shapley-payoff merge/split antenna activation.
template <ValueFunction V>
ActivationResult run_activation(const V& v, const AntennaLayout& layout, const Point3& bob, const ActivationOptions& options = {})
{
    return detail::activation_loop(
        v, layout, bob, options, [&](Coalition s, std::size_t n) { return merge_candidate(v, s, n, options.shapley_cap); },
        [&](Coalition s, std::size_t n) { return split_candidate(v, s, n, options.shapley_cap); });
}

} // namespace pinsec
