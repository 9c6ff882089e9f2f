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

// Command line front end for the pinching-antenna secrecy experiments.
//
//   pinsec power-sweep   --trials 500 --out results/power
//   pinsec antenna-sweep --counts 5,10,15,20 --power 10
//   pinsec convergence   --antennas 20 --power 20
//   pinsec single-drop   --trial 3

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <pinsec/harness.hpp>

namespace {

struct Overrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> workers;
    std::optional<std::string> out;
    std::optional<std::string> methods;
    std::optional<std::string> powers;
    std::optional<std::string> counts;
    std::optional<std::size_t> antennas;
    std::optional<double> power;
    std::optional<std::size_t> sa_steps;
    std::optional<std::string> scan_order;
    std::optional<std::string> region_mode;
    std::size_t trial = 0;
};

pinsec::harness::ExperimentConfig resolve(const Overrides& o, const std::string& command)
{
    using namespace pinsec::harness;
    ExperimentConfig c;
    if (!o.config_path.empty())
        c = load_config(o.config_path);
    if (o.seed)
        c.master_seed = *o.seed;
    if (o.trials)
        c.trials = *o.trials;
    if (o.workers)
        c.workers = *o.workers;
    if (o.out)
        c.output_dir = *o.out;
    if (o.methods)
        c.methods = parse_methods(*o.methods);
    if (o.powers)
        c.powers_dbm = parse_list<double>(*o.powers, "--powers");
    if (o.counts)
        c.antenna_counts = parse_list<std::size_t>(*o.counts, "--counts");
    if (o.sa_steps)
        c.annealing_steps = *o.sa_steps;
    if (o.scan_order)
        c.game.order = scan_order_from_string(*o.scan_order);
    if (o.region_mode)
        c.scenario.region_mode = pinsec::region_mode_from_string(*o.region_mode);

    if (command == "power-sweep" && o.antennas)
        c.power_sweep_antennas = *o.antennas;
    if (command == "antenna-sweep" && o.power)
        c.antenna_sweep_power_dbm = *o.power;
    if (command == "convergence" || command == "single-drop")
    {
        if (o.antennas)
            c.convergence_antennas = *o.antennas;
        if (o.power)
            c.convergence_power_dbm = *o.power;
    }
    c.validate();
    return c;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pinching-antenna physical layer security experiments"};
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--config", o.config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--trials", o.trials, "Monte Carlo drops per sweep point");
    app.add_option("--workers", o.workers, "Worker threads");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--methods", o.methods,
                   "Comma separated: initial-single-antenna,shapley,coalition-value,brute-force,annealing,fixed-ula");
    app.add_option("--sa-steps", o.sa_steps, "Simulated annealing steps");
    app.add_option("--scan-order", o.scan_order, "ascending or shuffled");
    app.add_option("--region-mode", o.region_mode, "straddling or one-sided");

    auto* power = app.add_subcommand("power-sweep", "Secrecy rate versus transmit power");
    power->add_option("--powers", o.powers, "Transmit powers in dBm, comma separated");
    power->add_option("--antennas", o.antennas, "Number of pre-installed antennas");

    auto* antenna = app.add_subcommand("antenna-sweep", "Secrecy rate versus number of antennas");
    antenna->add_option("--counts", o.counts, "Antenna counts, comma separated");
    antenna->add_option("--power", o.power, "Transmit power in dBm");

    auto* conv = app.add_subcommand("convergence", "Activation traces against the global optimum");
    conv->add_option("--antennas", o.antennas, "Number of pre-installed antennas");
    conv->add_option("--power", o.power, "Transmit power in dBm");

    auto* single = app.add_subcommand("single-drop", "Print channels, payoffs and the activation trace for one drop");
    single->add_option("--antennas", o.antennas, "Number of pre-installed antennas");
    single->add_option("--power", o.power, "Transmit power in dBm");
    single->add_option("--trial", o.trial, "Trial index selecting the drop");

    for (auto* sub : {power, antenna, conv, single})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try
    {
        using namespace pinsec::harness;
        const std::string command = app.get_subcommands().front()->get_name();
        const ExperimentConfig config = resolve(o, command);
        const std::filesystem::path out = config.output_dir;

        if (command == "power-sweep")
        {
            write_sweep_outputs(run_power_sweep(config), config, out);
            std::cout << "wrote " << out.string() << "\n";
        }
        else if (command == "antenna-sweep")
        {
            write_sweep_outputs(run_antenna_sweep(config), config, out);
            std::cout << "wrote " << out.string() << "\n";
        }
        else if (command == "convergence")
        {
            const auto result = run_convergence_study(config);
            if (result.summaries.front().reference == Method::Annealing)
                std::cerr << "warning: N exceeds the brute-force cap; optimum column is an annealing estimate\n";
            write_convergence_outputs(result, config, out);
            std::cout << "wrote " << out.string() << "\n";
        }
        else
        {
            std::cout << single_drop_report(config, config.convergence_antennas, config.convergence_power_dbm, o.trial);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
