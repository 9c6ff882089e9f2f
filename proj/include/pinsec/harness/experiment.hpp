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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "../baselines.hpp"
#include "../channel.hpp"
#include "../game.hpp"
#include "../geometry.hpp"
#include "../random.hpp"
#include "../secrecy.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace pinsec::harness {

// Stream labels for seed derivation.
inline constexpr std::uint64_t drop_stream = 0xD80F;
inline constexpr std::uint64_t method_stream = 0x3E7D;

/// Seed of the user drop for one trial. It does not depend on the sweep
/// point or the method, so every method and every sweep point of a trial
/// sees the same Bob/Eve placement.
inline std::uint64_t drop_seed(std::uint64_t master, std::size_t trial) { return derive_seed(master, {drop_stream, trial}); }

/// Seed for a method's own randomness (annealing, shuffled scan order).
inline std::uint64_t method_seed(std::uint64_t master, std::size_t sweep_index, std::size_t trial, Method m)
{
    return derive_seed(master, {method_stream, sweep_index, trial, static_cast<std::uint64_t>(m)});
}

struct ResultRow
{
    Method method = Method::Shapley;
    std::size_t sweep_index = 0;
    double sweep_value = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double secrecy_rate = 0.0;
    double bob_rate = 0.0;
    double eve_rate = 0.0;
    std::uint64_t coalition_mask = 0;
    std::size_t coalition_size = 0;
    std::size_t iterations = 0;
    double wall_time_s = 0.0;

    double secrecy_rate_clamped() const { return std::max(0.0, secrecy_rate); }
};

/// Canonical row order: method, then sweep point, then trial.
inline void sort_rows(std::vector<ResultRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.method != b.method)
            return a.method < b.method;
        if (a.sweep_index != b.sweep_index)
            return a.sweep_index < b.sweep_index;
        return a.trial < b.trial;
    });
}

/// Run fn(0..count-1) on `workers` threads. The first exception thrown by
/// any task is rethrown after all threads join.
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn)
{
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                }
            }
        });
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

/// What one method produced on one drop.
struct MethodOutcome
{
    Coalition coalition;
    LinkRates rates;
    std::size_t iterations = 0;
    std::optional<GameTrace> trace;
};

/// Everything bound to a single (sweep point, trial) pair.
struct TrialContext
{
    const ExperimentConfig& config;
    const AntennaLayout& layout;
    const Drop& drop;
    const LinkBudget& budget;
    const SecrecyEvaluator& value;
    std::size_t sweep_index = 0;
    std::size_t trial = 0;
};

inline MethodOutcome run_method(Method method, const TrialContext& ctx)
{
    const auto& v = ctx.value;
    const std::uint64_t seed = method_seed(ctx.config.master_seed, ctx.sweep_index, ctx.trial, method);
    ActivationOptions game = ctx.config.game;
    game.order_seed = seed;

    MethodOutcome out;
    switch (method)
    {
    case Method::InitialSingleAntenna:
        out.coalition = Coalition::singleton(ctx.layout.closest_to(ctx.drop.bob));
        break;
    case Method::Shapley:
    {
        auto r = run_activation(v, ctx.layout, ctx.drop.bob, game);
        out.coalition = r.coalition;
        out.iterations = r.trace.iterations_to_converge();
        out.trace = std::move(r.trace);
        break;
    }
    case Method::CoalitionValue:
    {
        auto r = coalition_value_activation(v, ctx.layout, ctx.drop.bob, game);
        out.coalition = r.coalition;
        out.iterations = r.trace.iterations_to_converge();
        out.trace = std::move(r.trace);
        break;
    }
    case Method::BruteForce:
        out.coalition = brute_force_optimum(v).coalition;
        out.iterations = (std::size_t{1} << v.size()) - 1;
        break;
    case Method::Annealing:
    {
        const auto schedule = ctx.config.annealing_schedule();
        out.coalition = simulated_annealing(v, v.size(), schedule, seed).coalition;
        out.iterations = schedule.steps;
        break;
    }
    case Method::FixedUla:
        out.coalition = Coalition::all(ctx.layout.size());
        out.rates = ula_secrecy_rate(ctx.config.scenario, ctx.drop, ctx.layout.size(), ctx.budget);
        return out;
    }
    out.rates = v.rates(out.coalition);
    return out;
}

inline ResultRow make_row(Method method, const TrialContext& ctx, double sweep_value, std::uint64_t seed, const MethodOutcome& o, double wall)
{
    ResultRow row;
    row.method = method;
    row.sweep_index = ctx.sweep_index;
    row.sweep_value = sweep_value;
    row.trial = ctx.trial;
    row.seed = seed;
    row.secrecy_rate = o.rates.secrecy();
    row.bob_rate = o.rates.bob;
    row.eve_rate = o.rates.eve;
    row.coalition_mask = o.coalition.mask();
    row.coalition_size = o.coalition.size();
    row.iterations = o.iterations;
    row.wall_time_s = wall;
    return row;
}

struct SweepPoint
{
    double sweep_value;
    std::size_t n_antennas;
    double transmit_power_dbm;
};

struct SweepResult
{
    std::string axis; ///< "transmit_power_dbm" or "n_antennas"
    std::vector<ResultRow> rows;
};

/// Runs every selected method on every (sweep point, trial).
inline SweepResult run_sweep(const ExperimentConfig& config, std::string axis, const std::vector<SweepPoint>& points)
{
    config.validate();
    const std::size_t trials = config.trials;
    std::vector<std::vector<ResultRow>> per_task(points.size() * trials);

    std::vector<AntennaLayout> layouts;
    layouts.reserve(points.size());
    for (const auto& p : points)
        layouts.push_back(uniform_layout(config.scenario, p.n_antennas));

    parallel_for(per_task.size(), config.workers, [&](std::size_t task) {
        const std::size_t sweep_index = task / trials;
        const std::size_t trial = task % trials;
        const auto& point = points[sweep_index];
        const auto& layout = layouts[sweep_index];

        const std::uint64_t seed = drop_seed(config.master_seed, trial);
        Rng rng(seed);
        const Drop drop = sample_drop(config.scenario, rng);
        const LinkBudget budget{point.transmit_power_dbm, config.scenario.noise_power_dbm};
        const SecrecyEvaluator v(channel_vector(config.scenario, layout, drop.bob), channel_vector(config.scenario, layout, drop.eve), budget);
        const TrialContext ctx{config, layout, drop, budget, v, sweep_index, trial};

        auto& rows = per_task[task];
        for (auto method : config.methods)
        {
            const auto t0 = std::chrono::steady_clock::now();
            const auto outcome = run_method(method, ctx);
            const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rows.push_back(make_row(method, ctx, point.sweep_value, seed, outcome, wall));
        }
    });

    SweepResult result{std::move(axis), {}};
    for (auto& rows : per_task)
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    sort_rows(result.rows);
    return result;
}

inline SweepResult run_power_sweep(const ExperimentConfig& config)
{
    std::vector<SweepPoint> points;
    for (double p : config.powers_dbm)
        points.push_back({p, config.power_sweep_antennas, p});
    return run_sweep(config, "transmit_power_dbm", points);
}

inline SweepResult run_antenna_sweep(const ExperimentConfig& config)
{
    std::vector<SweepPoint> points;
    for (auto n : config.antenna_counts)
        points.push_back({static_cast<double>(n), n, config.antenna_sweep_power_dbm});
    return run_sweep(config, "n_antennas", points);
}

struct Stat
{
    double mean = 0.0;
    double standard_error = 0.0;
};

inline Stat mean_and_standard_error(const std::vector<double>& xs)
{
    Stat s;
    if (xs.empty())
        return s;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    const double n = static_cast<double>(xs.size());
    s.mean = sum / n;
    if (xs.size() > 1)
    {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - s.mean) * (x - s.mean);
        s.standard_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return s;
}

struct AggregateRow
{
    Method method = Method::Shapley;
    std::size_t sweep_index = 0;
    double sweep_value = 0.0;
    std::size_t trials = 0;
    Stat secrecy;
    Stat secrecy_clamped;
    Stat bob;
    Stat eve;
    double mean_coalition_size = 0.0;
    double mean_iterations = 0.0;
};

/// Per (method, sweep point) mean and standard error, in canonical order.
inline std::vector<AggregateRow> aggregate(std::vector<ResultRow> rows)
{
    sort_rows(rows);
    std::vector<AggregateRow> out;
    std::size_t i = 0;
    while (i < rows.size())
    {
        std::size_t j = i;
        while (j < rows.size() && rows[j].method == rows[i].method && rows[j].sweep_index == rows[i].sweep_index)
            ++j;
        std::vector<double> sec, clamped, bob, eve;
        double size = 0.0, iters = 0.0;
        for (std::size_t k = i; k < j; ++k)
        {
            sec.push_back(rows[k].secrecy_rate);
            clamped.push_back(rows[k].secrecy_rate_clamped());
            bob.push_back(rows[k].bob_rate);
            eve.push_back(rows[k].eve_rate);
            size += static_cast<double>(rows[k].coalition_size);
            iters += static_cast<double>(rows[k].iterations);
        }
        const double n = static_cast<double>(j - i);
        out.push_back({rows[i].method, rows[i].sweep_index, rows[i].sweep_value, j - i, mean_and_standard_error(sec),
                       mean_and_standard_error(clamped), mean_and_standard_error(bob), mean_and_standard_error(eve), size / n, iters / n});
        i = j;
    }
    return out;
}

/// Lookup of one aggregate entry.
inline const AggregateRow& find_aggregate(const std::vector<AggregateRow>& rows, Method m, std::size_t sweep_index)
{
    for (const auto& r : rows)
        if (r.method == m && r.sweep_index == sweep_index)
            return r;
    throw std::out_of_range(fmt::format("no aggregate for method {} at sweep index {}", to_string(m), sweep_index));
}

inline const std::vector<std::string>& result_header()
{
    static const std::vector<std::string> header{"method", "sweep_value", "trial", "seed", "secrecy_rate", "secrecy_rate_clamped", "bob_rate",
                                                 "eve_rate", "coalition_mask", "coalition_size", "iterations"};
    return header;
}

inline CsvTable result_table(const std::vector<ResultRow>& rows)
{
    CsvTable t{result_header(), {}};
    for (const auto& r : rows)
        t.rows.push_back({std::string(to_string(r.method)), format_number(r.sweep_value), format_number(std::uint64_t{r.trial}),
                          format_number(r.seed), format_number(r.secrecy_rate), format_number(r.secrecy_rate_clamped()),
                          format_number(r.bob_rate), format_number(r.eve_rate), format_number(r.coalition_mask),
                          format_number(std::uint64_t{r.coalition_size}), format_number(std::uint64_t{r.iterations})});
    return t;
}

/// Wall-clock timings live in their own file so the result tables stay
/// byte-reproducible.
inline CsvTable timing_table(const std::vector<ResultRow>& rows)
{
    CsvTable t{{"method", "sweep_value", "trial", "wall_time_s"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({std::string(to_string(r.method)), format_number(r.sweep_value), format_number(std::uint64_t{r.trial}),
                          format_number(r.wall_time_s)});
    return t;
}

inline CsvTable aggregate_table(const std::vector<AggregateRow>& rows)
{
    CsvTable t{{"method", "sweep_value", "trials", "mean_secrecy_rate", "se_secrecy_rate", "mean_secrecy_rate_clamped", "se_secrecy_rate_clamped",
                "mean_bob_rate", "se_bob_rate", "mean_eve_rate", "se_eve_rate", "mean_coalition_size", "mean_iterations"},
               {}};
    for (const auto& r : rows)
        t.rows.push_back({std::string(to_string(r.method)), format_number(r.sweep_value), format_number(std::uint64_t{r.trials}),
                          format_number(r.secrecy.mean), format_number(r.secrecy.standard_error), format_number(r.secrecy_clamped.mean),
                          format_number(r.secrecy_clamped.standard_error), format_number(r.bob.mean), format_number(r.bob.standard_error),
                          format_number(r.eve.mean), format_number(r.eve.standard_error), format_number(r.mean_coalition_size),
                          format_number(r.mean_iterations)});
    return t;
}

/// Convergence study outputs.
struct TraceRow
{
    Method method = Method::Shapley;
    std::size_t trial = 0;
    TraceStep step; ///< iteration 0 holds the initial coalition
};

struct ConvergenceSummary
{
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Method reference = Method::BruteForce; ///< Annealing when N exceeds the brute-force cap
    Coalition optimum;
    LinkRates optimum_rates;
    double shapley_value = 0.0;
    std::size_t shapley_iterations = 0;
    std::size_t shapley_cycles = 0;
    bool shapley_converged = false;
    bool shapley_nash_stable = false;
    double coalition_value_value = 0.0;
    std::size_t coalition_value_iterations = 0;
    std::size_t coalition_value_cycles = 0;
    bool coalition_value_converged = false;

    double optimum_value() const { return optimum_rates.secrecy(); }
    /// NaN unless the optimum is positive.
    double shapley_ratio() const { return optimum_value() > 0.0 ? shapley_value / optimum_value() : std::nan(""); }
    double coalition_value_ratio() const { return optimum_value() > 0.0 ? coalition_value_value / optimum_value() : std::nan(""); }
};

struct ConvergenceResult
{
    std::vector<ResultRow> rows;
    std::vector<TraceRow> traces;
    std::vector<ConvergenceSummary> summaries;
};

inline ConvergenceResult run_convergence_study(const ExperimentConfig& config)
{
    config.validate();
    const std::size_t n = config.convergence_antennas;
    const Method reference = n <= brute_force_cap ? Method::BruteForce : Method::Annealing;
    const AntennaLayout layout = uniform_layout(config.scenario, n);
    const LinkBudget budget{config.convergence_power_dbm, config.scenario.noise_power_dbm};

    struct TaskOut
    {
        std::vector<ResultRow> rows;
        std::vector<TraceRow> traces;
        ConvergenceSummary summary;
    };
    std::vector<TaskOut> tasks(config.trials);

    parallel_for(config.trials, config.workers, [&](std::size_t trial) {
        const std::uint64_t seed = drop_seed(config.master_seed, trial);
        Rng rng(seed);
        const Drop drop = sample_drop(config.scenario, rng);
        const SecrecyEvaluator v(channel_vector(config.scenario, layout, drop.bob), channel_vector(config.scenario, layout, drop.eve), budget);
        const TrialContext ctx{config, layout, drop, budget, v, 0, trial};

        auto& out = tasks[trial];
        out.summary.trial = trial;
        out.summary.seed = seed;
        out.summary.reference = reference;
        for (auto method : {Method::Shapley, Method::CoalitionValue, reference})
        {
            const auto t0 = std::chrono::steady_clock::now();
            auto outcome = run_method(method, ctx);
            const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            out.rows.push_back(make_row(method, ctx, config.convergence_power_dbm, seed, outcome, wall));

            if (outcome.trace)
            {
                const auto& tr = *outcome.trace;
                TraceStep initial;
                initial.coalition = tr.initial;
                initial.value = tr.initial_value;
                out.traces.push_back({method, trial, initial});
                for (const auto& step : tr.steps)
                    out.traces.push_back({method, trial, step});
            }

            auto& s = out.summary;
            if (method == Method::Shapley)
            {
                s.shapley_value = outcome.rates.secrecy();
                s.shapley_iterations = outcome.iterations;
                s.shapley_cycles = outcome.trace->cycles_used;
                s.shapley_converged = outcome.trace->converged;
                s.shapley_nash_stable = is_nash_stable(v, outcome.coalition, config.game.shapley_cap);
            }
            else if (method == Method::CoalitionValue)
            {
                s.coalition_value_value = outcome.rates.secrecy();
                s.coalition_value_iterations = outcome.iterations;
                s.coalition_value_cycles = outcome.trace->cycles_used;
                s.coalition_value_converged = outcome.trace->converged;
            }
            else
            {
                s.optimum = outcome.coalition;
                s.optimum_rates = outcome.rates;
            }
        }
    });

    ConvergenceResult result;
    for (auto& t : tasks)
    {
        result.rows.insert(result.rows.end(), t.rows.begin(), t.rows.end());
        result.traces.insert(result.traces.end(), t.traces.begin(), t.traces.end());
        result.summaries.push_back(t.summary);
    }
    sort_rows(result.rows);
    std::stable_sort(result.traces.begin(), result.traces.end(), [](const TraceRow& a, const TraceRow& b) {
        if (a.method != b.method)
            return a.method < b.method;
        if (a.trial != b.trial)
            return a.trial < b.trial;
        return a.step.iteration < b.step.iteration;
    });
    return result;
}

inline CsvTable trace_table(const std::vector<TraceRow>& rows)
{
    CsvTable t{{"method", "trial", "iteration", "cycle", "antenna", "action", "coalition_mask", "coalition_size", "value", "inside_payoff",
                "outside_payoff"},
               {}};
    for (const auto& r : rows)
    {
        const auto& s = r.step;
        const bool initial = s.iteration == 0;
        t.rows.push_back({std::string(to_string(r.method)), format_number(std::uint64_t{r.trial}), format_number(std::uint64_t{s.iteration}),
                          format_number(std::uint64_t{s.cycle}), initial ? std::string() : format_number(std::uint64_t{s.antenna}),
                          initial ? std::string("initial") : std::string(to_string(s.action)), format_number(s.coalition.mask()),
                          format_number(std::uint64_t{s.coalition.size()}), format_number(s.value), format_number(s.inside_payoff),
                          format_number(s.outside_payoff)});
    }
    return t;
}

inline CsvTable convergence_table(const std::vector<ConvergenceSummary>& rows)
{
    CsvTable t{{"trial", "seed", "reference", "optimum_value", "optimum_bob_rate", "optimum_eve_rate", "optimum_mask", "optimum_size",
                "shapley_value", "shapley_ratio", "shapley_iterations", "shapley_cycles", "shapley_converged", "shapley_nash_stable",
                "coalition_value_value", "coalition_value_ratio", "coalition_value_iterations", "coalition_value_cycles",
                "coalition_value_converged"},
               {}};
    auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
    for (const auto& s : rows)
        t.rows.push_back({format_number(std::uint64_t{s.trial}), format_number(s.seed), std::string(to_string(s.reference)),
                          format_number(s.optimum_value()), format_number(s.optimum_rates.bob), format_number(s.optimum_rates.eve),
                          format_number(s.optimum.mask()), format_number(std::uint64_t{s.optimum.size()}), format_number(s.shapley_value),
                          format_number(s.shapley_ratio()), format_number(std::uint64_t{s.shapley_iterations}),
                          format_number(std::uint64_t{s.shapley_cycles}), flag(s.shapley_converged), flag(s.shapley_nash_stable),
                          format_number(s.coalition_value_value), format_number(s.coalition_value_ratio()),
                          format_number(std::uint64_t{s.coalition_value_iterations}), format_number(std::uint64_t{s.coalition_value_cycles}),
                          flag(s.coalition_value_converged)});
    return t;
}

inline std::filesystem::path prepare_output_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw std::runtime_error("cannot write " + path.string());
}

/// raw_rows.csv, aggregate.csv, timing.csv and effective_config.ini.
inline void write_sweep_outputs(const SweepResult& result, const ExperimentConfig& config, const std::filesystem::path& dir)
{
    prepare_output_dir(dir);
    emit_csv(result_table(result.rows), dir / "raw_rows.csv");
    emit_csv(aggregate_table(aggregate(result.rows)), dir / "aggregate.csv");
    emit_csv(timing_table(result.rows), dir / "timing.csv");
    write_text(dir / "effective_config.ini", to_ini(config));
}

/// Sweep outputs plus trace.csv and convergence.csv.
inline void write_convergence_outputs(const ConvergenceResult& result, const ExperimentConfig& config, const std::filesystem::path& dir)
{
    prepare_output_dir(dir);
    emit_csv(result_table(result.rows), dir / "raw_rows.csv");
    emit_csv(aggregate_table(aggregate(result.rows)), dir / "aggregate.csv");
    emit_csv(trace_table(result.traces), dir / "trace.csv");
    emit_csv(convergence_table(result.summaries), dir / "convergence.csv");
    emit_csv(timing_table(result.rows), dir / "timing.csv");
    write_text(dir / "effective_config.ini", to_ini(config));
}

} // namespace pinsec::harness
