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

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace pinsec {

/// SplitMix64 finalizer. Used to turn structured (seed, index, ...) tuples
/// into well-mixed 64-bit stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Pure function of the master seed and an ordered list of stream labels.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> labels) noexcept
{
    std::uint64_t s = splitmix64(master);
    for (auto label : labels)
        s = splitmix64(s ^ splitmix64(label + 0x632BE59BD9B4E019ULL));
    return s;
}

/// Random stream with a bit-exact output sequence on every platform.
/// mt19937_64 is fully specified by the standard; the distributions are
/// written out here because the std:: ones are implementation-defined.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform on [0, n), unbiased. n must be nonzero.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace pinsec
