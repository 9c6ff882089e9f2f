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

#include <complex>
#include <cstddef>
#include <string>

#include <fmt/format.h>

#include "experiment.hpp"

namespace pinsec::harness {

/// Human-readable dump of one drop: positions, per-antenna channels,
/// the Shapley activation trace, the final payoffs and every selected
/// method's result on the same drop.
inline std::string single_drop_report(const ExperimentConfig& config, std::size_t n_antennas, double transmit_power_dbm, std::size_t trial)
{
    config.validate();
    const auto& sc = config.scenario;
    const AntennaLayout layout = uniform_layout(sc, n_antennas);
    const std::uint64_t seed = drop_seed(config.master_seed, trial);
    Rng rng(seed);
    const Drop drop = sample_drop(sc, rng);
    const LinkBudget budget{transmit_power_dbm, sc.noise_power_dbm};
    const SecrecyEvaluator v(channel_vector(sc, layout, drop.bob), channel_vector(sc, layout, drop.eve), budget);
    const auto w = wavelengths(sc);

    std::string out;
    out += fmt::format("seed {} trial {}  N={}  P_t={} dBm\n", config.master_seed, trial, n_antennas, transmit_power_dbm);
    out += fmt::format("bob ({:.4f}, {:.4f})  eve ({:.4f}, {:.4f})\n", drop.bob.x, drop.bob.y, drop.eve.x, drop.eve.y);
    out += fmt::format("lambda {:.6e} m  lambda_g {:.6e} m  eta {:.6e} m\n\n", w.wavelength, w.guided_wavelength, w.path_loss);

    out += fmt::format("{:>4} {:>8} {:>12} {:>9} {:>12} {:>9}\n", "n", "x [m]", "|h_bob|", "arg", "|h_eve|", "arg");
    for (std::size_t n = 0; n < layout.size(); ++n)
    {
        const auto hb = v.bob()[n];
        const auto he = v.eve()[n];
        out += fmt::format("{:>4} {:>8.4f} {:>12.5e} {:>9.4f} {:>12.5e} {:>9.4f}\n", n, layout.positions_x()[n], std::abs(hb), std::arg(hb),
                           std::abs(he), std::arg(he));
    }

    ActivationOptions game = config.game;
    game.order_seed = method_seed(config.master_seed, 0, trial, Method::Shapley);
    const auto result = run_activation(v, layout, drop.bob, game);
    const auto& tr = result.trace;
    out += fmt::format("\ninitial {} value {:.6f}\n", tr.initial.to_string(), tr.initial_value);
    for (const auto& s : tr.steps)
        if (s.action != Move::None)
            out += fmt::format("  it {:>3} cycle {:>2} antenna {:>2} {:<5} -> {} value {:.6f} (inside {:.6f}, outside {:.6f})\n", s.iteration,
                               s.cycle, s.antenna, to_string(s.action), s.coalition.to_string(), s.value, s.inside_payoff, s.outside_payoff);
    const auto rates = v.rates(result.coalition);
    out += fmt::format("final {} R_bob {:.6f} R_eve {:.6f} R {:.6f}  cycles {}  converged {}  nash-stable {}\n\n", result.coalition.to_string(),
                       rates.bob, rates.eve, rates.secrecy(), tr.cycles_used, tr.converged, is_nash_stable(v, result.coalition, game.shapley_cap));

    out += "payoffs (Shapley value for members, marginal payoff of staying out otherwise)\n";
    for (const auto& p : payoff_report(v, result.coalition, layout.size(), game.shapley_cap))
        out += fmt::format("  {:>2} {} {:+.6f}\n", p.antenna, p.in_coalition ? "in " : "out", p.payoff);

    out += "\nmethods\n";
    const TrialContext ctx{config, layout, drop, budget, v, 0, trial};
    for (auto m : config.methods)
    {
        if (m == Method::BruteForce && n_antennas > brute_force_cap)
        {
            out += fmt::format("  {:<24} skipped (more than {} antennas)\n", to_string(m), brute_force_cap);
            continue;
        }
        const auto o = run_method(m, ctx);
        out += fmt::format("  {:<24} R {:+.6f}  R_bob {:.6f}  R_eve {:.6f}  active {}\n", to_string(m), o.rates.secrecy(), o.rates.bob, o.rates.eve,
                           m == Method::FixedUla ? std::string("all (array)") : o.coalition.to_string());
    }
    return out;
}

} // namespace pinsec::harness
