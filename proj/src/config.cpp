#include "plb/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace plb {

const std::string& ConfigValue::as_string() const {
    if (!is_string()) throw ConfigError("expected a string value", line);
    return std::get<std::string>(data);
}
double ConfigValue::as_number() const {
    if (!is_number()) throw ConfigError("expected a numeric value", line);
    return std::get<double>(data);
}
bool ConfigValue::as_bool() const {
    if (!is_bool()) throw ConfigError("expected a boolean value", line);
    return std::get<bool>(data);
}
const ConfigValue::Array& ConfigValue::as_array() const {
    if (!is_array()) throw ConfigError("expected an array value", line);
    return std::get<Array>(data);
}
std::vector<std::string> ConfigValue::as_string_list() const {
    std::vector<std::string> out;
    for (const auto& v : as_array()) out.push_back(v.as_string());
    return out;
}
std::vector<double> ConfigValue::as_number_list() const {
    std::vector<double> out;
    for (const auto& v : as_array()) out.push_back(v.as_number());
    return out;
}

const ConfigValue& ConfigTable::at(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing key '" + key + "'", line);
    return it->second;
}
std::string ConfigTable::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? at(key).as_string() : fallback;
}
double ConfigTable::get_number(const std::string& key, double fallback) const {
    return has(key) ? at(key).as_number() : fallback;
}
bool ConfigTable::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? at(key).as_bool() : fallback;
}

const ConfigTable& ConfigDocument::section(const std::string& name) const {
    auto it = sections.find(name);
    if (it == sections.end()) throw ConfigError("missing section [" + name + "]");
    return it->second;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

ConfigValue parse_scalar(const std::string& text, int line);

ConfigValue parse_value(const std::string& text, int line) {
    std::string t = strip(text);
    if (t.empty()) throw ConfigError("empty value", line);
    if (t.front() == '[') {
        if (t.back() != ']') throw ConfigError("unterminated array", line);
        ConfigValue out;
        out.line = line;
        ConfigValue::Array items;
        std::string inner = t.substr(1, t.size() - 2);
        // split on commas outside quotes
        std::string cur;
        bool in_string = false;
        for (char c : inner) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!strip(cur).empty()) items.push_back(parse_scalar(strip(cur), line));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!strip(cur).empty()) items.push_back(parse_scalar(strip(cur), line));
        out.data = std::move(items);
        return out;
    }
    return parse_scalar(t, line);
}

ConfigValue parse_scalar(const std::string& t, int line) {
    ConfigValue out;
    out.line = line;
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
        out.data = t.substr(1, t.size() - 2);
        return out;
    }
    if (t == "true") {
        out.data = true;
        return out;
    }
    if (t == "false") {
        out.data = false;
        return out;
    }
    try {
        size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing");
        out.data = v;
        return out;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse value '" + t + "' (strings need quotes)", line);
    }
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
    ConfigDocument doc;
    ConfigTable* current = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        // strip comments outside quotes
        bool in_string = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_string = !in_string;
            if (line[i] == '#' && !in_string) {
                line = line.substr(0, i);
                break;
            }
        }
        line = strip(line);
        if (line.empty()) continue;

        if (line.size() >= 4 && line.substr(0, 2) == "[[") {
            if (line.substr(line.size() - 2) != "]]")
                throw ConfigError("malformed table-array header", line_no);
            std::string name = strip(line.substr(2, line.size() - 4));
            if (name.empty()) throw ConfigError("empty table-array name", line_no);
            doc.arrays[name].push_back(ConfigTable{{}, line_no});
            current = &doc.arrays[name].back();
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", line_no);
            std::string name = strip(line.substr(1, line.size() - 2));
            if (name.empty()) throw ConfigError("empty section name", line_no);
            auto [it, fresh] = doc.sections.emplace(name, ConfigTable{{}, line_no});
            if (!fresh) throw ConfigError("duplicate section [" + name + "]", line_no);
            current = &it->second;
            continue;
        }
        size_t eq = std::string::npos;
        in_string = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_string = !in_string;
            if (line[i] == '=' && !in_string) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        std::string key = strip(line.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (current->values.count(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        current->values[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return doc;
}

ConfigDocument parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace plb
