// config.hpp — structured key-value scenario files (TOML-compatible subset:
// [section], [[array-of-tables]], key = value with strings, numbers,
// booleans and flat arrays).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plb/core.hpp"

namespace plb {

struct ConfigValue {
    using Array = std::vector<ConfigValue>;
    std::variant<std::string, double, bool, Array> data;
    int line = -1;

    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }

    const std::string& as_string() const;
    double as_number() const;
    bool as_bool() const;
    const Array& as_array() const;
    std::vector<std::string> as_string_list() const;
    std::vector<double> as_number_list() const;
};

struct ConfigTable {
    std::map<std::string, ConfigValue> values;
    int line = -1;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    const ConfigValue& at(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
};

struct ConfigDocument {
    ConfigTable root;                                         // keys before any section
    std::map<std::string, ConfigTable> sections;              // [name]
    std::map<std::string, std::vector<ConfigTable>> arrays;   // [[name]]

    const ConfigTable& section(const std::string& name) const;
    bool has_section(const std::string& name) const { return sections.count(name) > 0; }
};

// Parses text; throws ConfigError carrying the offending line number.
ConfigDocument parse_config(const std::string& text);
ConfigDocument parse_config_file(const std::string& path);

}  // namespace plb
