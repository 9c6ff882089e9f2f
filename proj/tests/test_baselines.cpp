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

#include <pinsec/baselines.hpp>
#include <pinsec/game.hpp>

#include "support/oracles.hpp"

using namespace pinsec;
using pinsec::oracle::random_table_game;

namespace {

SecrecyEvaluator drop_evaluator(const Scenario& sc, const AntennaLayout& layout, const Drop& d, double pt_dbm)
{
    return SecrecyEvaluator(channel_vector(sc, layout, d.bob), channel_vector(sc, layout, d.eve), LinkBudget{pt_dbm, sc.noise_power_dbm});
}

// Plain exhaustive search that does not share code with the library.
Optimum exhaustive(const SecrecyEvaluator& v)
{
    Optimum best{Coalition{}, -INFINITY};
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << v.size()); ++m)
    {
        const double r = secrecy_rate(v.bob(), v.eve(), Coalition(m), v.budget());
        if (r > best.value)
            best = {Coalition(m), r};
    }
    return best;
}

} // namespace

TEST(BruteForce, SingleAntenna)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 1);
    Rng rng(1);
    const auto d = sample_drop(sc, rng);
    const auto v = drop_evaluator(sc, layout, d, 10.0);
    const auto best = brute_force_optimum(v);
    EXPECT_EQ(best.coalition, Coalition{0});
    EXPECT_EQ(best.value, v(Coalition{0}));
}

TEST(BruteForce, TableGame)
{
    Rng rng(2);
    const auto g = random_table_game(6, rng);
    const auto best = brute_force_optimum(g, 6);
    for (std::uint64_t m = 1; m < 64; ++m)
        EXPECT_GE(best.value, g(Coalition(m)));
    EXPECT_EQ(best.value, g(best.coalition));
}

TEST(BruteForce, FastRouteMatchesExhaustiveSearch)
{
    Scenario sc;
    Rng rng(3);
    for (std::size_t n : {2U, 5U, 9U, 12U})
    {
        const auto layout = uniform_layout(sc, n);
        for (int t = 0; t < 10; ++t)
        {
            const auto v = drop_evaluator(sc, layout, sample_drop(sc, rng), 20.0);
            const auto fast = brute_force_optimum(v);
            const auto slow = exhaustive(v);
            EXPECT_NEAR(fast.value, slow.value, 1e-9);
            EXPECT_NEAR(v(fast.coalition), fast.value, 1e-12);
            EXPECT_NEAR(brute_force_optimum<SecrecyEvaluator>(v, n).value, slow.value, 1e-12);
        }
    }
}

TEST(BruteForce, DominatesActivation)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 14);
    Rng rng(4);
    for (int t = 0; t < 30; ++t)
    {
        const auto d = sample_drop(sc, rng);
        const auto v = drop_evaluator(sc, layout, d, 20.0);
        const auto best = brute_force_optimum(v);
        EXPECT_GE(best.value + 1e-12, v(run_activation(v, layout, d.bob).coalition));
        EXPECT_GE(best.value + 1e-12, v(coalition_value_activation(v, layout, d.bob).coalition));
    }
}

TEST(BruteForce, CapEnforced)
{
    Rng rng(5);
    const auto g = random_table_game(2, rng);
    EXPECT_THROW(brute_force_optimum(g, 25), CapacityError);
    EXPECT_THROW(brute_force_optimum(g, 0), std::invalid_argument);
}

TEST(Annealing, ScheduleReachesFinalTemperature)
{
    const auto s = AnnealingSchedule::geometric(1000, 1.0, 1e-3);
    EXPECT_NEAR(std::pow(s.cooling_factor, 1000.0), 1e-3, 1e-12);
    AnnealingSchedule bad{1.0, 1.0, 10};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = {0.0, 0.5, 10};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Annealing, ZeroStepsReturnsStart)
{
    Rng rng(6);
    const auto g = random_table_game(5, rng);
    const auto r = simulated_annealing(g, 5, AnnealingSchedule::geometric(0), 17);
    EXPECT_EQ(r.coalition, r.start);
    EXPECT_EQ(r.value, g(r.start));
    EXPECT_FALSE(r.start.empty());
}

TEST(Annealing, FindsOptimumOnSmallDrops)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 10);
    Rng rng(7);
    int hits = 0;
    const int drops = 40;
    for (int t = 0; t < drops; ++t)
    {
        const auto v = drop_evaluator(sc, layout, sample_drop(sc, rng), 20.0);
        const auto r = simulated_annealing(v, 10, AnnealingSchedule::geometric(20000), derive_seed(7, {std::uint64_t(t)}));
        const auto best = brute_force_optimum(v);
        EXPECT_LE(r.value, best.value + 1e-12);
        hits += std::abs(r.value - best.value) <= 1e-9;
    }
    EXPECT_GE(hits, 38);
}

TEST(Annealing, HistoryInvariants)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 12);
    Rng rng(8);
    const auto v = drop_evaluator(sc, layout, sample_drop(sc, rng), 20.0);
    const std::size_t steps = 20000;
    const auto r = simulated_annealing(v, 12, AnnealingSchedule::geometric(steps), 99, true);
    ASSERT_EQ(r.history.size(), steps);

    double prev = r.start_value;
    std::size_t worse_early = 0, tried_early = 0, worse_late = 0, tried_late = 0;
    for (std::size_t k = 0; k < steps; ++k)
    {
        const auto& h = r.history[k];
        EXPECT_GE(h.best_value, prev);
        prev = h.best_value;
        if (std::isnan(h.delta))
            EXPECT_FALSE(h.accepted);
        else if (h.delta < 0.0)
        {
            auto& tried = k < steps / 10 ? tried_early : tried_late;
            auto& worse = k < steps / 10 ? worse_early : worse_late;
            if (k < steps / 10 || k >= steps - steps / 10)
            {
                ++tried;
                worse += h.accepted;
            }
        }
    }
    EXPECT_EQ(prev, r.value);
    EXPECT_EQ(r.value, v(r.coalition));
    ASSERT_GT(tried_early, 0U);
    ASSERT_GT(tried_late, 0U);
    const double early = double(worse_early) / double(tried_early);
    const double late = double(worse_late) / double(tried_late);
    EXPECT_GT(early, late);
    EXPECT_LT(late, 0.05);
}

TEST(Annealing, DeterministicForSeed)
{
    Rng rng(9);
    const auto g = random_table_game(8, rng);
    const auto a = simulated_annealing(g, 8, AnnealingSchedule::geometric(500), 5);
    const auto b = simulated_annealing(g, 8, AnnealingSchedule::geometric(500), 5);
    EXPECT_EQ(a.coalition, b.coalition);
    EXPECT_EQ(a.value, b.value);
}

TEST(CoalitionValue, SingleAntenna)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 1);
    const Drop d{{1.0, 1.0, 0.0}, {9.0, -2.0, 0.0}};
    const auto v = drop_evaluator(sc, layout, d, 10.0);
    const auto r = coalition_value_activation(v, layout, d.bob);
    EXPECT_EQ(r.coalition, Coalition{0});
    EXPECT_TRUE(r.trace.converged);
}

TEST(CoalitionValue, MonotoneGameActivatesEverything)
{
    struct Count
    {
        double operator()(Coalition s) const { return static_cast<double>(s.size()); }
    };
    Scenario sc;
    const auto layout = uniform_layout(sc, 7);
    const auto r = coalition_value_activation(Count{}, layout, {0.0, 0.0, 0.0});
    EXPECT_EQ(r.coalition, Coalition::all(7));
    EXPECT_TRUE(r.trace.converged);
    EXPECT_EQ(r.trace.cycles_used, 2U);
}

TEST(CoalitionValue, EveryAcceptedMoveRaisesValue)
{
    Scenario sc;
    const auto layout = uniform_layout(sc, 20);
    Rng rng(10);
    for (int t = 0; t < 50; ++t)
    {
        const auto d = sample_drop(sc, rng);
        const auto v = drop_evaluator(sc, layout, d, 20.0);
        const auto r = coalition_value_activation(v, layout, d.bob);
        double prev = r.trace.initial_value;
        for (const auto& s : r.trace.steps)
        {
            if (s.action != Move::None)
                EXPECT_GT(s.value, prev);
            else
                EXPECT_EQ(s.value, prev);
            prev = s.value;
        }
        EXPECT_TRUE(r.trace.converged);
    }
}

TEST(Ula, ColocatedUsersGiveZero)
{
    Scenario sc;
    const Point3 p{3.0, 1.0, 0.0};
    const auto r = ula_secrecy_rate(sc, {p, p}, 16, LinkBudget{});
    EXPECT_EQ(r.secrecy(), 0.0);
}

TEST(Ula, SingleElementAtRegionCenter)
{
    Scenario sc;
    const Point3 rx{2.0, -1.0, 0.0};
    const auto h = ula_channel_vector(sc, 1, rx);
    const double d = distance(rx, {5.0, 0.0, 3.0});
    EXPECT_NEAR(std::abs(h[0]), wavelengths(sc).path_loss / d, 1e-15);
    EXPECT_THROW(ula_channel_vector(sc, 0, rx), std::invalid_argument);
}

TEST(Ula, HalfWavelengthSpacingAndFreeSpacePhase)
{
    Scenario sc;
    const auto w = wavelengths(sc);
    const Point3 rx{7.5, 2.0, 0.0};
    const auto h = ula_channel_vector(sc, 4, rx);
    for (std::size_t i = 0; i < 4; ++i)
    {
        const Point3 e{5.0 + (static_cast<double>(i) - 1.5) * 0.5 * w.wavelength, 0.0, 3.0};
        const double d = distance(rx, e);
        EXPECT_NEAR(std::abs(h[i]) * d / w.path_loss, 1.0, 1e-12);
        const double expected = std::remainder(-two_pi * d / w.wavelength - std::arg(h[i]), two_pi);
        EXPECT_LT(std::abs(expected), 1e-9);
    }
}

TEST(Ula, OneSidedRegionCenterMovesArray)
{
    Scenario sc;
    sc.region_mode = RegionMode::OneSided;
    // Receiver directly below the single element at (5, 3, 3).
    const auto h = ula_channel_vector(sc, 1, {5.0, 3.0, 0.0});
    EXPECT_NEAR(std::abs(h[0]), wavelengths(sc).path_loss / 3.0, 1e-15);
}
