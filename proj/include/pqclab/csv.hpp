// Copyright 2026 The pqclab Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Plot-ready tabular output.
 *
 * Each rendered table starts with a '#' comment line carrying the config
 * hash and artifact version, then the header row, then the data rows. Reals
 * are written with 17 significant digits and a '.' decimal point regardless
 * of locale, and lines end with a bare LF, so identical runs give identical
 * bytes. render(',') is the CSV; render(' ') is the gnuplot-friendly .dat
 * twin.
 */
#pragma once

#include <charconv>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqclab/errors.hpp"

namespace pqclab {

/// Shortest-round-trip-style decimal rendering at 17 significant digits.
inline auto format_double(double value) -> std::string {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                         std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw Error("format_double: conversion failed");
    }
    return {buffer, ptr};
}

inline auto cell(double value) -> std::string { return format_double(value); }
inline auto cell(bool value) -> std::string { return value ? "1" : "0"; }
template <std::integral T>
    requires(!std::same_as<T, bool>)
auto cell(T value) -> std::string {
    return std::to_string(value);
}
inline auto cell(std::string value) -> std::string { return value; }

class Table {
  public:
    explicit Table(std::vector<std::string> columns)
        : columns_(std::move(columns)) {
        if (columns_.empty()) {
            throw InvalidInputError("Table: need at least one column");
        }
    }

    auto add_row(std::vector<std::string> cells) -> void {
        if (cells.size() != columns_.size()) {
            throw InvalidInputError("Table: row width does not match header");
        }
        rows_.push_back(std::move(cells));
    }

    [[nodiscard]] auto n_rows() const -> std::size_t { return rows_.size(); }
    [[nodiscard]] auto columns() const -> const std::vector<std::string> & {
        return columns_;
    }
    [[nodiscard]] auto rows() const
        -> const std::vector<std::vector<std::string>> & {
        return rows_;
    }

    /// Comment line, header, rows; sep is ',' for CSV and ' ' for .dat.
    [[nodiscard]] auto render(char sep, std::string_view hash,
                              std::string_view version) const -> std::string {
        std::string out;
        out += "# config_hash=";
        out += hash;
        out += " artifact_version=";
        out += version;
        out += '\n';
        const auto emit_line = [&out, sep](const std::vector<std::string> &line) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (i > 0) {
                    out += sep;
                }
                out += line[i];
            }
            out += '\n';
        };
        emit_line(columns_);
        for (const auto &row : rows_) {
            emit_line(row);
        }
        return out;
    }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

inline auto write_text_file(const std::filesystem::path &path,
                            std::string_view content) -> void {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ResourceError("cannot open output file: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw ResourceError("failed writing output file: " + path.string());
    }
}

} // namespace pqclab
