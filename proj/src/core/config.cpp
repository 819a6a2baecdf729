// SPDX-License-Identifier: Apache-2.0

#include "matbench/core/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "matbench/core/error.hpp"

namespace matbench {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_number(std::string_view s) {
    double v;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

[[noreturn]] void fail(int line, const std::string &msg) {
    throw ValidationError(fmt::format("config line {}: {}", line, msg));
}

// Strips a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

}  // namespace

Config parse_config(std::string_view text) {
    Config cfg;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) fail(line_no, "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(line_no, "expected key = value");
        const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (cfg.has(full)) fail(line_no, "duplicate key '" + full + "'");

        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') fail(line_no, "unterminated string");
            cfg.set_string(full, std::string(value.substr(1, value.size() - 2)));
        } else if (value == "true" || value == "false") {
            cfg.set_bool(full, value == "true");
        } else if (value.front() == '[') {
            if (value.back() != ']') fail(line_no, "unterminated array");
            std::vector<double> items;
            auto body = value.substr(1, value.size() - 2);
            while (!trim(body).empty()) {
                const auto comma = body.find(',');
                const auto item = trim(body.substr(0, comma));
                if (!is_number(item)) fail(line_no, "array items must be numbers");
                double v = 0;
                std::from_chars(item.data() + (item.front() == '+'), item.data() + item.size(), v);
                items.push_back(v);
                if (comma == std::string_view::npos) break;
                body.remove_prefix(comma + 1);
            }
            cfg.set_array(full, items);
        } else if (is_number(value)) {
            cfg.set_number(full, std::string(value.front() == '+' ? value.substr(1) : value));
        } else {
            fail(line_no, "cannot parse value '" + std::string(value) + "'");
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw RuntimeError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    std::string s(buf, p);
    // Keep a decimal marker so the value reads back as a real.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

const ConfigValue &Config::require(std::string_view key) const {
    const auto it = values_.find(std::string(key));
    if (it == values_.end()) throw ValidationError("missing config key '" + std::string(key) + "'");
    return it->second;
}

double Config::get_double(std::string_view key) const {
    const auto &v = require(key);
    if (v.kind != ConfigValue::Kind::number) throw ValidationError("'" + std::string(key) + "' must be a number");
    double out = 0;
    std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    return out;
}

double Config::get_double(std::string_view key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int64_t Config::get_int(std::string_view key) const {
    const auto &v = require(key);
    int64_t out = 0;
    const auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (v.kind != ConfigValue::Kind::number || ec != std::errc() || p != v.text.data() + v.text.size())
        throw ValidationError("'" + std::string(key) + "' must be an integer");
    return out;
}

int64_t Config::get_int(std::string_view key, int64_t fallback) const { return has(key) ? get_int(key) : fallback; }

uint64_t Config::get_uint64(std::string_view key, uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto &v = require(key);
    uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
    if (v.kind != ConfigValue::Kind::number || ec != std::errc() || p != v.text.data() + v.text.size())
        throw ValidationError("'" + std::string(key) + "' must be a non-negative integer");
    return out;
}

std::string Config::get_string(std::string_view key) const {
    const auto &v = require(key);
    if (v.kind != ConfigValue::Kind::string) throw ValidationError("'" + std::string(key) + "' must be a string");
    return v.text;
}

std::string Config::get_string(std::string_view key, std::string fallback) const {
    return has(key) ? get_string(key) : fallback;
}

bool Config::get_bool(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto &v = require(key);
    if (v.kind != ConfigValue::Kind::boolean) throw ValidationError("'" + std::string(key) + "' must be true or false");
    return v.text == "true";
}

std::vector<double> Config::get_array(std::string_view key) const {
    const auto &v = require(key);
    if (v.kind == ConfigValue::Kind::number) return {get_double(key)};
    if (v.kind != ConfigValue::Kind::array) throw ValidationError("'" + std::string(key) + "' must be an array");
    std::vector<double> out;
    for (const auto &item : v.items) {
        double d = 0;
        std::from_chars(item.data(), item.data() + item.size(), d);
        out.push_back(d);
    }
    return out;
}

void Config::set_number(const std::string &key, std::string text) {
    values_[key] = {ConfigValue::Kind::number, std::move(text), {}};
}
void Config::set_number(const std::string &key, double value) { set_number(key, format_double(value)); }
void Config::set_int(const std::string &key, int64_t value) { set_number(key, std::to_string(value)); }
void Config::set_string(const std::string &key, std::string value) {
    if (value.find_first_of("\"\n") != std::string::npos)
        throw ValidationError("config strings cannot contain quotes or newlines");
    values_[key] = {ConfigValue::Kind::string, std::move(value), {}};
}
void Config::set_bool(const std::string &key, bool value) {
    values_[key] = {ConfigValue::Kind::boolean, value ? "true" : "false", {}};
}
void Config::set_array(const std::string &key, const std::vector<double> &values) {
    ConfigValue v{ConfigValue::Kind::array, {}, {}};
    for (double d : values) v.items.push_back(format_double(d));
    values_[key] = std::move(v);
}

void Config::check_keys(std::string_view section, const std::vector<std::string_view> &allowed) const {
    for (const auto &[full, value] : values_) {
        const auto dot = full.find('.');
        const std::string_view sec = dot == std::string::npos ? std::string_view{} : std::string_view(full).substr(0, dot);
        if (sec != section) continue;
        const std::string_view key = dot == std::string::npos ? std::string_view(full) : std::string_view(full).substr(dot + 1);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("unknown config key '" + full + "'");
    }
}

std::string Config::to_string() const {
    auto render = [](const ConfigValue &v) {
        switch (v.kind) {
            case ConfigValue::Kind::string: return "\"" + v.text + "\"";
            case ConfigValue::Kind::array: {
                std::string s = "[";
                for (std::size_t i = 0; i < v.items.size(); ++i) s += (i ? ", " : "") + v.items[i];
                return s + "]";
            }
            default: return v.text;
        }
    };
    std::string out;
    for (const auto &[key, value] : values_)
        if (key.find('.') == std::string::npos) out += key + " = " + render(value) + "\n";
    std::string current;
    for (const auto &[key, value] : values_) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) continue;
        const auto section = key.substr(0, dot);
        if (section != current) {
            out += "\n[" + section + "]\n";
            current = section;
        }
        out += key.substr(dot + 1) + " = " + render(value) + "\n";
    }
    return out;
}

}  // namespace matbench
