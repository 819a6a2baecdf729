// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matbench {

/// One value of a key-value document. Numbers keep their source text so
/// 64-bit integers round-trip exactly.
struct ConfigValue {
    enum class Kind { number, string, boolean, array };
    Kind kind = Kind::string;
    std::string text;                // number/string/boolean
    std::vector<std::string> items;  // array of numbers
};

/// Minimal TOML-style document: `key = value` lines, `[section]` headers,
/// `#` comments. Values are numbers, "strings", true/false, or [n, n, ...].
/// Keys are addressed as "section.key" (top-level keys have no prefix).
class Config {
  public:
    bool has(std::string_view key) const { return values_.count(std::string(key)) > 0; }
    const std::map<std::string, ConfigValue> &values() const { return values_; }

    double get_double(std::string_view key) const;
    double get_double(std::string_view key, double fallback) const;
    int64_t get_int(std::string_view key) const;
    int64_t get_int(std::string_view key, int64_t fallback) const;
    uint64_t get_uint64(std::string_view key, uint64_t fallback) const;
    std::string get_string(std::string_view key) const;
    std::string get_string(std::string_view key, std::string fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;
    std::vector<double> get_array(std::string_view key) const;

    void set_number(const std::string &key, std::string text);
    void set_number(const std::string &key, double value);
    void set_int(const std::string &key, int64_t value);
    void set_string(const std::string &key, std::string value);
    void set_bool(const std::string &key, bool value);
    void set_array(const std::string &key, const std::vector<double> &values);

    /// Throws ValidationError for any key under `section` (or top level when
    /// empty) that is not listed.
    void check_keys(std::string_view section, const std::vector<std::string_view> &allowed) const;

    /// Serializes with top-level keys first, then sections in order.
    std::string to_string() const;

  private:
    const ConfigValue &require(std::string_view key) const;
    std::map<std::string, ConfigValue> values_;
};

Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path &path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace matbench
