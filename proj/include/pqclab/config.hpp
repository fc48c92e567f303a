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
 * Flat key=value configuration with typed accessors and a stable hash.
 *
 * Format: one "key = value" pair per line, '#' starts a comment, blank lines
 * are skipped, later assignments win. Command-line flags are merged on top of
 * a file. Every accessor that fails names the offending key, and a runner can
 * reject unknown keys up front.
 *
 * The config hash is FNV-1a 64 over the sorted "key=value\n" pairs, so it is
 * byte-stable across platforms and insensitive to assignment order.
 */
#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pqclab/errors.hpp"

namespace pqclab {

namespace detail {

inline auto trim(std::string_view s) -> std::string_view {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

class KvConfig {
  public:
    KvConfig() = default;

    static auto parse(std::string_view text) -> KvConfig {
        KvConfig config;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                               : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;

            const auto hash_pos = line.find('#');
            if (hash_pos != std::string_view::npos) {
                line = line.substr(0, hash_pos);
            }
            line = detail::trim(line);
            if (line.empty()) {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key=value");
            }
            const auto key = detail::trim(line.substr(0, eq));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": empty key");
            }
            config.entries_[std::string(key)] =
                std::string(detail::trim(line.substr(eq + 1)));
        }
        return config;
    }

    static auto load(const std::filesystem::path &path) -> KvConfig {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("config file not readable: " + path.string());
        }
        std::ostringstream text;
        text << in.rdbuf();
        return parse(text.str());
    }

    auto set(std::string key, std::string value) -> void {
        entries_[std::move(key)] = std::move(value);
    }

    /// Later (argument) assignments win, matching flags-over-file semantics.
    auto merge(const KvConfig &overrides) -> void {
        for (const auto &[key, value] : overrides.entries_) {
            entries_[key] = value;
        }
    }

    [[nodiscard]] auto has(std::string_view key) const -> bool {
        return entries_.find(std::string(key)) != entries_.end();
    }

    [[nodiscard]] auto entries() const
        -> const std::map<std::string, std::string> & {
        return entries_;
    }

    /// Reject any key outside the allowed set, naming the first offender.
    auto restrict_keys(std::span<const std::string_view> allowed) const
        -> void {
        for (const auto &[key, value] : entries_) {
            bool ok = false;
            for (const auto &a : allowed) {
                ok = ok || key == a;
            }
            if (!ok) {
                throw ConfigError("config key '" + key +
                                  "' is not recognized by this command");
            }
        }
    }

    [[nodiscard]] auto get_string(std::string_view key,
                                  std::string fallback) const -> std::string {
        const auto it = entries_.find(std::string(key));
        return it == entries_.end() ? std::move(fallback) : it->second;
    }

    [[nodiscard]] auto require_string(std::string_view key) const
        -> std::string {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) {
            throw ConfigError("config key '" + std::string(key) +
                              "' is required");
        }
        return it->second;
    }

    [[nodiscard]] auto get_u64(std::string_view key, std::uint64_t fallback) const
        -> std::uint64_t {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) {
            return fallback;
        }
        return parse_u64(key, it->second);
    }

    [[nodiscard]] auto get_size(std::string_view key, std::size_t fallback) const
        -> std::size_t {
        return static_cast<std::size_t>(
            get_u64(key, static_cast<std::uint64_t>(fallback)));
    }

    [[nodiscard]] auto get_double(std::string_view key, double fallback) const
        -> double {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) {
            return fallback;
        }
        return parse_double(key, it->second);
    }

    /// Comma-separated unsigned list, e.g. "2,4,6,8".
    [[nodiscard]] auto get_size_list(std::string_view key,
                                     std::vector<std::size_t> fallback) const
        -> std::vector<std::size_t> {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) {
            return fallback;
        }
        std::vector<std::size_t> values;
        std::string_view rest = it->second;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = detail::trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{}
                                                   : rest.substr(comma + 1);
            if (item.empty()) {
                throw ConfigError("config key '" + std::string(key) +
                                  "': empty list element");
            }
            values.push_back(static_cast<std::size_t>(parse_u64(key, item)));
        }
        if (values.empty()) {
            throw ConfigError("config key '" + std::string(key) +
                              "': empty list");
        }
        return values;
    }

  private:
    static auto parse_u64(std::string_view key, std::string_view text)
        -> std::uint64_t {
        std::uint64_t value = 0;
        const auto *begin = text.data();
        const auto *end = begin + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end || text.empty()) {
            throw ConfigError("config key '" + std::string(key) +
                              "': '" + std::string(text) +
                              "' is not an unsigned integer");
        }
        return value;
    }

    static auto parse_double(std::string_view key, std::string_view text)
        -> double {
        double value = 0.0;
        const auto *begin = text.data();
        const auto *end = begin + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end || text.empty()) {
            throw ConfigError("config key '" + std::string(key) + "': '" +
                              std::string(text) + "' is not a real number");
        }
        return value;
    }

    std::map<std::string, std::string> entries_;
};

/// FNV-1a 64 over the sorted "key=value\n" pairs, rendered as 16 hex digits.
inline auto config_hash(const KvConfig &config) -> std::string {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto feed = [&h](std::string_view s) {
        for (const char c : s) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto &[key, value] : config.entries()) {
        feed(key);
        feed("=");
        feed(value);
        feed("\n");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

} // namespace pqclab
