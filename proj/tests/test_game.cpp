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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <pinsec/game.hpp>

#include "support/oracles.hpp"

using namespace pinsec;
using pinsec::oracle::permutation_shapley;
using pinsec::oracle::random_table_game;
using pinsec::oracle::TableGame;

namespace {

struct AdditiveGame
{
    std::vector<double> weights;
    double operator()(Coalition s) const
    {
        double sum = 0.0;
        for (auto n : s.members())
            sum += weights.at(n);
        return sum;
    }
};

SecrecyEvaluator drop_evaluator(const Scenario& sc, const AntennaLayout& layout, const Drop& d, double pt_dbm)
{
    return SecrecyEvaluator(channel_vector(sc, layout, d.bob), channel_vector(sc, layout, d.eve), LinkBudget{pt_dbm, sc.noise_power_dbm});
}

} // namespace

TEST(Shapley, SingleMemberGetsItsValue)
{
    Rng rng(1);
    const auto g = random_table_game(4, rng);
    for (std::size_t n = 0; n < 4; ++n)
        EXPECT_EQ(shapley_value(g, Coalition::singleton(n), n), g(Coalition::singleton(n)));
}

TEST(Shapley, TwoMemberClosedForm)
{
    Rng rng(2);
    const auto g = random_table_game(3, rng);
    const Coalition s{0, 2};
    const double expected = 0.5 * (g(Coalition{0}) + g(s) - g(Coalition{2}));
    EXPECT_NEAR(shapley_value(g, s, 0), expected, 1e-15);
}

TEST(Shapley, MatchesPermutationAverage)
{
    Rng rng(3);
    for (int t = 0; t < 50; ++t)
    {
        const auto g = random_table_game(3, rng);
        const Coalition s{0, 1, 2};
        for (std::size_t n = 0; n < 3; ++n)
            EXPECT_NEAR(shapley_value(g, s, n), permutation_shapley(g, s, n), 1e-12);
    }
}

TEST(Shapley, Efficiency)
{
    Rng rng(4);
    for (int t = 0; t < 100; ++t)
    {
        const std::size_t n_players = 1 + rng.below(8);
        const auto g = random_table_game(n_players, rng);
        const Coalition s(1 + rng.below((std::uint64_t{1} << n_players) - 1));
        double total = 0.0;
        for (auto n : s.members())
            total += shapley_value(g, s, n);
        EXPECT_NEAR(total, g(s), 1e-9);
    }
}

TEST(Shapley, SymmetricPlayersGetEqualPayoffs)
{
    // Players 0 and 1 are interchangeable: v depends on |S & {0,1}| and on 2, 3.
    Rng rng(5);
    TableGame g = random_table_game(4, rng);
    for (std::uint64_t m = 0; m < 16; ++m)
    {
        const std::uint64_t swapped = (m & ~3ULL) | ((m & 1ULL) << 1) | ((m & 2ULL) >> 1);
        g.table[swapped] = g.table[m];
    }
    const Coalition all = Coalition::all(4);
    EXPECT_NEAR(shapley_value(g, all, 0), shapley_value(g, all, 1), 1e-12);
}

TEST(Shapley, NullPlayerGetsZero)
{
    // Player 3 never changes the value.
    Rng rng(6);
    TableGame g = random_table_game(4, rng);
    for (std::uint64_t m = 0; m < 8; ++m)
        g.table[m | 8] = g.table[m];
    EXPECT_NEAR(shapley_value(g, Coalition::all(4), 3), 0.0, 1e-12);
    EXPECT_NEAR(outside_payoff(g, Coalition{0, 1}, 3), 0.0, 1e-12);
    EXPECT_NEAR(outside_payoff(g, Coalition{0, 3}, 3), 0.0, 1e-12);
}

TEST(Shapley, Errors)
{
    Rng rng(7);
    const auto g = random_table_game(3, rng);
    EXPECT_THROW(shapley_value(g, Coalition{0, 1}, 2), std::invalid_argument);
    EXPECT_THROW(shapley_value(g, Coalition{0, 1, 2}, 0, 2), CapacityError);
    const AdditiveGame big{std::vector<double>(30, 1.0)};
    EXPECT_THROW(shapley_value(big, Coalition::all(25), 0), CapacityError);
}

TEST(OutsidePayoff, Examples)
{
    // v(S) = 2, v(S + n) = 1.5 for S = {0}, n = 1.
    TableGame g;
    g.table = {0.0, 2.0, 0.7, 1.5};
    EXPECT_DOUBLE_EQ(outside_payoff(g, Coalition{0}, 1), 0.5);
    // v(S - n) = 1, v(S) = 2 for S = {0, 1}, n = 1.
    g.table = {0.0, 1.0, 0.3, 2.0};
    EXPECT_DOUBLE_EQ(outside_payoff(g, Coalition{0, 1}, 1), -1.0);

    EXPECT_THROW(outside_payoff(g, Coalition{0}, 0), InvalidMove);
    EXPECT_THROW(outside_payoff(g, Coalition{}, 0), std::invalid_argument);
}

TEST(MergeRule, Examples)
{
    const AdditiveGame g{{1.0, 0.5, 0.0}};
    EXPECT_EQ(merge_candidate(g, Coalition{0}, 1).move, Move::Merge);
    EXPECT_EQ(merge_candidate(g, Coalition{0}, 2).move, Move::None);
    EXPECT_THROW(merge_candidate(g, Coalition{0}, 0), std::invalid_argument);
}

TEST(SplitRule, Examples)
{
    const AdditiveGame g{{1.0, -0.5, 0.25}};
    EXPECT_EQ(split_candidate(g, Coalition{1}, 1).move, Move::None);
    EXPECT_EQ(split_candidate(g, Coalition{0, 1}, 1).move, Move::Split);
    EXPECT_EQ(split_candidate(g, Coalition{0, 2}, 2).move, Move::None);
    EXPECT_THROW(split_candidate(g, Coalition{0}, 2), std::invalid_argument);
}

TEST(Rules, AgreeWithDirectEvaluationOnRandomGames)
{
    Rng rng(8);
    for (int t = 0; t < 200; ++t)
    {
        const auto g = random_table_game(4, rng);
        const Coalition s(1 + rng.below(15));
        for (std::size_t n = 0; n < 4; ++n)
        {
            if (!s.contains(n))
            {
                const bool expected = permutation_shapley(g, s.with(n), n) > g(s) - g(s.with(n));
                EXPECT_EQ(merge_candidate(g, s, n).move == Move::Merge, expected);
            }
            else
            {
                const bool expected = s.size() != 1 && g(s.without(n)) - g(s) > permutation_shapley(g, s, n);
                EXPECT_EQ(split_candidate(g, s, n).move == Move::Split, expected);
            }
        }
    }
}

TEST(NashStability, ExhaustiveAgainstDefinition)
{
    const AdditiveGame additive{{0.7, -0.2, 0.0}};
    Rng rng(9);
    const auto table = random_table_game(3, rng);
    for (std::uint64_t m = 1; m < 8; ++m)
    {
        EXPECT_EQ(is_nash_stable(additive, Coalition(m), 3), pinsec::oracle::stable_by_definition(additive, Coalition(m), 3)) << m;
        EXPECT_EQ(is_nash_stable(table, Coalition(m), 3), pinsec::oracle::stable_by_definition(table, Coalition(m), 3)) << m;
    }
    // With a strictly positive and a strictly negative weight, only {0} and {0,2} are stable.
    EXPECT_TRUE(is_nash_stable(additive, Coalition{0}, 3));
    EXPECT_FALSE(is_nash_stable(additive, Coalition{0, 1}, 3));
    EXPECT_THROW(is_nash_stable(additive, Coalition{}, 3), std::invalid_argument);
}

TEST(RunActivation, SingleAntenna)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 1);
    const Drop d{{2.0, 1.0, 0.0}, {8.0, -1.0, 0.0}};
    const auto v = drop_evaluator(sc, layout, d, 10.0);
    const auto r = run_activation(v, layout, d.bob);
    EXPECT_EQ(r.coalition, Coalition{0});
    EXPECT_TRUE(r.trace.converged);
    EXPECT_EQ(r.trace.cycles_used, 1U);
    EXPECT_EQ(r.trace.moves(), 0U);
    EXPECT_EQ(r.trace.iterations_to_converge(), 0U);
}

TEST(RunActivation, AlignedPairIsActivatedTogether)
{
    const auto pair = pinsec::oracle::aligned_pair();
    const auto v = drop_evaluator(pair.scenario, pair.layout, pair.drop, 20.0);
    ASSERT_EQ(pair.layout.closest_to(pair.drop.bob), 0U);
    const auto r = run_activation(v, pair.layout, pair.drop.bob);
    EXPECT_EQ(r.coalition, (Coalition{0, 1}));
    EXPECT_GT(v(r.coalition), v(Coalition{0}));
    EXPECT_GT(v(r.coalition), v(Coalition{1}));
    EXPECT_TRUE(is_nash_stable(v, r.coalition));
}

TEST(RunActivation, TraceInvariantsAndStability)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 20);
    Rng rng(10);
    for (int t = 0; t < 100; ++t)
    {
        const auto d = sample_drop(sc, rng);
        const auto v = drop_evaluator(sc, layout, d, 20.0);
        const auto r = run_activation(v, layout, d.bob);
        ASSERT_TRUE(r.trace.converged);
        EXPECT_TRUE(is_nash_stable(v, r.coalition));
        EXPECT_EQ(r.trace.initial, Coalition::singleton(layout.closest_to(d.bob)));
        for (const auto& s : r.trace.steps)
        {
            EXPECT_GE(s.coalition.size(), 1U);
            EXPECT_EQ(s.value, v(s.coalition));
            if (s.action == Move::Merge)
                EXPECT_GT(s.inside_payoff, s.outside_payoff);
            if (s.action == Move::Split)
                EXPECT_GT(s.outside_payoff, s.inside_payoff);
        }
        // Final cycle is a full pass without moves.
        const auto last_cycle = r.trace.cycles_used;
        for (const auto& s : r.trace.steps)
            if (s.cycle == last_cycle)
                EXPECT_EQ(s.action, Move::None);
    }
}

TEST(RunActivation, CycleCapReportedNotThrown)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 20);
    Rng rng(12);
    const auto d = sample_drop(sc, rng);
    const auto v = drop_evaluator(sc, layout, d, 20.0);
    ActivationOptions opt;
    opt.cycle_cap = 1;
    const auto r = run_activation(v, layout, d.bob, opt);
    EXPECT_EQ(r.trace.cycles_used, 1U);
    EXPECT_EQ(r.trace.converged, r.trace.moves() == 0);
    EXPECT_EQ(r.trace.steps.size(), 20U);
}

TEST(RunActivation, ShuffledOrderIsSeeded)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 16);
    Rng rng(13);
    const auto d = sample_drop(sc, rng);
    const auto v = drop_evaluator(sc, layout, d, 10.0);
    ActivationOptions opt;
    opt.order = ScanOrder::Shuffled;
    opt.order_seed = 99;
    const auto a = run_activation(v, layout, d.bob, opt);
    const auto b = run_activation(v, layout, d.bob, opt);
    EXPECT_EQ(a.coalition, b.coalition);
    ASSERT_EQ(a.trace.steps.size(), b.trace.steps.size());
    for (std::size_t i = 0; i < a.trace.steps.size(); ++i)
        EXPECT_EQ(a.trace.steps[i].antenna, b.trace.steps[i].antenna);
    if (a.trace.converged)
        EXPECT_TRUE(is_nash_stable(v, a.coalition));
}

TEST(PayoffReport, MembersAndOutsiders)
{
    const AdditiveGame g{{1.0, -0.5, 2.0}};
    const auto report = payoff_report(g, Coalition{0, 2}, 3);
    ASSERT_EQ(report.size(), 3U);
    EXPECT_TRUE(report[0].in_coalition);
    EXPECT_NEAR(report[0].payoff, 1.0, 1e-15);
    EXPECT_FALSE(report[1].in_coalition);
    EXPECT_NEAR(report[1].payoff, 0.5, 1e-15);
    EXPECT_NEAR(report[2].payoff, 2.0, 1e-15);
}
