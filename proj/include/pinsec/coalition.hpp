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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinsec {

/// Set of activated antenna indices (zero-based), stored as a bit mask.
/// Supports up to 64 antennas.
class Coalition
{
public:
    static constexpr std::size_t max_antennas = 64;

    constexpr Coalition() = default;
    constexpr explicit Coalition(std::uint64_t mask) : mask_(mask) {}
    Coalition(std::initializer_list<std::size_t> members)
    {
        for (auto n : members)
            *this = with(n);
    }

    static Coalition singleton(std::size_t n) { return Coalition{}.with(n); }

    /// All antennas 0..n-1.
    static Coalition all(std::size_t n)
    {
        check_index(n == 0 ? 0 : n - 1);
        return Coalition(n == max_antennas ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t mask() const noexcept { return mask_; }
    constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    constexpr bool empty() const noexcept { return mask_ == 0; }

    bool contains(std::size_t n) const { return n < max_antennas && ((mask_ >> n) & 1U) != 0; }

    Coalition with(std::size_t n) const
    {
        check_index(n);
        return Coalition(mask_ | (std::uint64_t{1} << n));
    }

    Coalition without(std::size_t n) const
    {
        check_index(n);
        return Coalition(mask_ & ~(std::uint64_t{1} << n));
    }

    /// Largest member index + 1, or 0 when empty.
    std::size_t span_width() const noexcept { return mask_ == 0 ? 0 : 64 - static_cast<std::size_t>(std::countl_zero(mask_)); }

    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        out.reserve(size());
        for (std::uint64_t m = mask_; m != 0; m &= m - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (auto n : members())
        {
            if (!first)
                s += ",";
            s += std::to_string(n);
            first = false;
        }
        return s + "}";
    }

    friend constexpr auto operator<=>(const Coalition&, const Coalition&) = default;

private:
    static void check_index(std::size_t n)
    {
        if (n >= max_antennas)
            throw std::out_of_range("antenna index " + std::to_string(n) + " exceeds coalition capacity");
    }

    std::uint64_t mask_ = 0;
};

} // namespace pinsec
