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
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "../baselines.hpp"
#include "../game.hpp"
#include "../geometry.hpp"

namespace pinsec::harness {

enum class Method
{
    InitialSingleAntenna,
    Shapley,
    CoalitionValue,
    BruteForce,
    Annealing,
    FixedUla,
};

inline constexpr std::array all_methods{Method::InitialSingleAntenna, Method::Shapley, Method::CoalitionValue,
                                        Method::BruteForce, Method::Annealing, Method::FixedUla};

inline std::string_view to_string(Method m)
{
    switch (m)
    {
    case Method::InitialSingleAntenna:
        return "initial-single-antenna";
    case Method::Shapley:
        return "shapley";
    case Method::CoalitionValue:
        return "coalition-value";
    case Method::BruteForce:
        return "brute-force";
    case Method::Annealing:
        return "annealing";
    case Method::FixedUla:
        return "fixed-ula";
    }
    return "unknown";
}

inline Method method_from_string(std::string_view s)
{
    for (auto m : all_methods)
        if (to_string(m) == s)
            return m;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

/// Comma separated method names; duplicates are dropped, order is canonical.
inline std::vector<Method> parse_methods(std::string_view list)
{
    std::vector<std::string> parts;
    boost::split(parts, list, boost::is_any_of(","));
    std::array<bool, all_methods.size()> seen{};
    for (auto& p : parts)
    {
        boost::trim(p);
        if (p.empty())
            continue;
        seen[static_cast<std::size_t>(method_from_string(p))] = true;
    }
    std::vector<Method> out;
    for (auto m : all_methods)
        if (seen[static_cast<std::size_t>(m)])
            out.push_back(m);
    if (out.empty())
        throw std::invalid_argument("method list is empty");
    return out;
}

template <typename T>
std::vector<T> parse_list(std::string_view list, std::string_view what)
{
    std::vector<std::string> parts;
    boost::split(parts, list, boost::is_any_of(","));
    std::vector<T> out;
    for (auto& p : parts)
    {
        boost::trim(p);
        if (p.empty())
            continue;
        try
        {
            std::size_t used = 0;
            if constexpr (std::is_floating_point_v<T>)
                out.push_back(static_cast<T>(std::stod(p, &used)));
            else
                out.push_back(static_cast<T>(std::stoull(p, &used)));
            if (used != p.size())
                throw std::invalid_argument(p);
        }
        catch (const std::exception&)
        {
            throw std::invalid_argument(fmt::format("cannot parse '{}' in {} list", p, what));
        }
    }
    return out;
}

template <typename T>
std::string join_list(const std::vector<T>& values)
{
    return fmt::format("{}", fmt::join(values, ","));
}

/// Everything one experiment run needs. Defaults give the standard 10 m x 6 m
/// scenario at desk-scale trial counts.
struct ExperimentConfig
{
    Scenario scenario;

    std::vector<double> powers_dbm{0, 5, 10, 15, 20, 25, 30};
    std::size_t power_sweep_antennas = 20;

    std::vector<std::size_t> antenna_counts{5, 10, 15, 20};
    double antenna_sweep_power_dbm = 10.0;

    std::size_t convergence_antennas = 20;
    double convergence_power_dbm = 20.0;

    std::size_t trials = 500;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;
    std::vector<Method> methods{Method::InitialSingleAntenna, Method::Shapley, Method::CoalitionValue, Method::FixedUla};
    std::string output_dir = "results";

    ActivationOptions game;

    std::size_t annealing_steps = 100'000;
    double annealing_initial_temperature = default_annealing_temperature;
    double annealing_final_temperature = 1e-3;

    AnnealingSchedule annealing_schedule() const
    {
        return AnnealingSchedule::geometric(annealing_steps, annealing_initial_temperature, annealing_final_temperature);
    }

    bool uses(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

    void validate() const
    {
        scenario.validate();
        if (trials == 0)
            throw std::invalid_argument("trials must be at least 1");
        if (workers == 0)
            throw std::invalid_argument("workers must be at least 1");
        if (powers_dbm.empty())
            throw std::invalid_argument("power sweep list is empty");
        if (antenna_counts.empty())
            throw std::invalid_argument("antenna count list is empty");
        for (auto n : antenna_counts)
            if (n == 0 || n > Coalition::max_antennas)
                throw std::invalid_argument("antenna counts must lie in [1, 64]");
        if (power_sweep_antennas == 0 || power_sweep_antennas > Coalition::max_antennas || convergence_antennas == 0 ||
            convergence_antennas > Coalition::max_antennas)
            throw std::invalid_argument("antenna counts must lie in [1, 64]");
        if (methods.empty())
            throw std::invalid_argument("no methods selected");
        if (game.cycle_cap == 0)
            throw std::invalid_argument("cycle cap must be at least 1");
        annealing_schedule().validate();
    }
};

inline std::string_view to_string(ScanOrder order) { return order == ScanOrder::Ascending ? "ascending" : "shuffled"; }

inline ScanOrder scan_order_from_string(std::string_view s)
{
    if (s == "ascending")
        return ScanOrder::Ascending;
    if (s == "shuffled")
        return ScanOrder::Shuffled;
    throw std::invalid_argument("unknown scan order '" + std::string(s) + "'");
}

/// Overlay the keys present in an INI stream onto `config`. Unknown
/// sections or keys are rejected so typos do not pass silently.
inline void apply_ini(ExperimentConfig& config, std::istream& in)
{
    boost::property_tree::ptree tree;
    boost::property_tree::ini_parser::read_ini(in, tree);

    auto& sc = config.scenario;
    for (const auto& [section, keys] : tree)
    {
        for (const auto& [key, node] : keys)
        {
            const std::string value = node.get_value<std::string>();
            const std::string where = section + "." + key;
            auto num = [&] {
                try
                {
                    return std::stod(value);
                }
                catch (const std::exception&)
                {
                    throw std::invalid_argument("config: " + where + " expects a number, got '" + value + "'");
                }
            };
            auto u64 = [&] {
                try
                {
                    if (value.find('-') != std::string::npos)
                        throw std::invalid_argument(value);
                    return static_cast<std::uint64_t>(std::stoull(value));
                }
                catch (const std::exception&)
                {
                    throw std::invalid_argument("config: " + where + " expects a non-negative integer, got '" + value + "'");
                }
            };
            auto count = [&] { return static_cast<std::size_t>(u64()); };

            if (where == "scenario.region_x") sc.region_x = num();
            else if (where == "scenario.region_y") sc.region_y = num();
            else if (where == "scenario.waveguide_height") sc.waveguide_height = num();
            else if (where == "scenario.waveguide_length") sc.waveguide_length = num();
            else if (where == "scenario.carrier_frequency") sc.carrier_frequency = num();
            else if (where == "scenario.effective_refractive_index") sc.effective_refractive_index = num();
            else if (where == "scenario.noise_power_dbm") sc.noise_power_dbm = num();
            else if (where == "scenario.feed_point_x") sc.feed_point_x = num();
            else if (where == "scenario.region_mode") sc.region_mode = region_mode_from_string(value);
            else if (where == "experiment.trials") config.trials = count();
            else if (where == "experiment.seed") config.master_seed = u64();
            else if (where == "experiment.workers") config.workers = count();
            else if (where == "experiment.methods") config.methods = parse_methods(value);
            else if (where == "experiment.out") config.output_dir = value;
            else if (where == "power_sweep.powers_dbm") config.powers_dbm = parse_list<double>(value, where);
            else if (where == "power_sweep.n_antennas") config.power_sweep_antennas = count();
            else if (where == "antenna_sweep.antenna_counts") config.antenna_counts = parse_list<std::size_t>(value, where);
            else if (where == "antenna_sweep.transmit_power_dbm") config.antenna_sweep_power_dbm = num();
            else if (where == "convergence.n_antennas") config.convergence_antennas = count();
            else if (where == "convergence.transmit_power_dbm") config.convergence_power_dbm = num();
            else if (where == "game.cycle_cap") config.game.cycle_cap = count();
            else if (where == "game.shapley_cap") config.game.shapley_cap = count();
            else if (where == "game.scan_order") config.game.order = scan_order_from_string(value);
            else if (where == "annealing.steps") config.annealing_steps = count();
            else if (where == "annealing.initial_temperature") config.annealing_initial_temperature = num();
            else if (where == "annealing.final_temperature") config.annealing_final_temperature = num();
            else
                throw std::invalid_argument("config: unknown key " + where);
        }
    }
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {})
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    try
    {
        apply_ini(base, in);
    }
    catch (const boost::property_tree::ini_parser_error& e)
    {
        throw std::invalid_argument("config " + path + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    return base;
}

/// INI text that reloads to the same configuration.
inline std::string to_ini(const ExperimentConfig& c)
{
    std::vector<std::string> methods;
    for (auto m : c.methods)
        methods.emplace_back(to_string(m));

    std::string out;
    auto kv = [&](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
    auto num = [](double x) { return fmt::format("{:.17g}", x); };

    out += "[scenario]\n";
    kv("region_x", num(c.scenario.region_x));
    kv("region_y", num(c.scenario.region_y));
    kv("waveguide_height", num(c.scenario.waveguide_height));
    kv("waveguide_length", num(c.scenario.waveguide_length));
    kv("carrier_frequency", num(c.scenario.carrier_frequency));
    kv("effective_refractive_index", num(c.scenario.effective_refractive_index));
    kv("noise_power_dbm", num(c.scenario.noise_power_dbm));
    kv("feed_point_x", num(c.scenario.feed_point_x));
    kv("region_mode", to_string(c.scenario.region_mode));
    out += "\n[experiment]\n";
    kv("trials", c.trials);
    kv("seed", c.master_seed);
    kv("workers", c.workers);
    kv("methods", fmt::format("{}", fmt::join(methods, ",")));
    kv("out", c.output_dir);
    out += "\n[power_sweep]\n";
    kv("powers_dbm", join_list(c.powers_dbm));
    kv("n_antennas", c.power_sweep_antennas);
    out += "\n[antenna_sweep]\n";
    kv("antenna_counts", join_list(c.antenna_counts));
    kv("transmit_power_dbm", num(c.antenna_sweep_power_dbm));
    out += "\n[convergence]\n";
    kv("n_antennas", c.convergence_antennas);
    kv("transmit_power_dbm", num(c.convergence_power_dbm));
    out += "\n[game]\n";
    kv("cycle_cap", c.game.cycle_cap);
    kv("shapley_cap", c.game.shapley_cap);
    kv("scan_order", to_string(c.game.order));
    out += "\n[annealing]\n";
    kv("steps", c.annealing_steps);
    kv("initial_temperature", num(c.annealing_initial_temperature));
    kv("final_temperature", num(c.annealing_final_temperature));
    return out;
}

} // namespace pinsec::harness
