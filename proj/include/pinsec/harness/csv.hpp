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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace pinsec::harness {

/// Header plus string rows, rendered as comma separated values.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// 12 significant digits, '.' decimal separator regardless of locale.
inline std::string format_number(double x) { return fmt::format("{:.12g}", x); }
inline std::string format_number(std::uint64_t x) { return fmt::format("{}", x); }

inline std::string quote_field(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render_csv(const CsvTable& table)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i)
        {
            if (i != 0)
                out += ',';
            out += quote_field(fields[i]);
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows)
    {
        if (row.size() != table.header.size())
            throw std::logic_error("csv row width does not match header");
        line(row);
    }
    return out;
}

/// Write `table` to `path`. An empty table is rejected before any file is
/// created.
inline void emit_csv(const CsvTable& table, const std::filesystem::path& path)
{
    if (table.rows.empty())
        throw std::invalid_argument("emit_csv: no rows to write to " + path.string());
    const std::string text = render_csv(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("emit_csv: write failed for " + path.string());
}

/// Minimal reader for files produced by render_csv (quoted fields allowed).
inline CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool first = true;
    auto finish_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        if (first)
            table.header = std::move(row);
        else
            table.rows.push_back(std::move(row));
        row.clear();
        first = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"')
            {
                field += '"';
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                field += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
        {
            row.push_back(std::move(field));
            field.clear();
        }
        else if (c == '\n')
            finish_row();
        else if (c != '\r')
            field += c;
    }
    if (!field.empty() || !row.empty())
        finish_row();
    return table;
}

} // namespace pinsec::harness
