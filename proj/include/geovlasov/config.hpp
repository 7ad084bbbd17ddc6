#pragma once

// Scenario configuration: one JSON schema served by two on-disk formats,
// JSON and a TOML subset (tables, dotted keys, scalars, flat arrays, #
// comments) that is translated into the same tree. Validation failures name
// the offending key and exit through config_error.

#include "json.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace geovlasov {

using json = nlohmann::json;

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string toml_trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a]))
        ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1]))
        --b;
    return s.substr(a, b - a);
}

inline std::string toml_strip_comment(const std::string& line)
{
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            in_string = !in_string;
        else if (line[i] == '#' && !in_string)
            return line.substr(0, i);
    }
    return line;
}

inline json toml_scalar(const std::string& raw, int lineno)
{
    const std::string v = toml_trim(raw);
    if (v.empty())
        throw config_error("toml: empty value at line " + std::to_string(lineno));
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw config_error("toml: unterminated string at line " + std::to_string(lineno));
        return v.substr(1, v.size() - 2);
    }
    if (v == "true")
        return true;
    if (v == "false")
        return false;
    try {
        std::size_t used = 0;
        if (v.find_first_of(".eE") == std::string::npos) {
            const long long i = std::stoll(v, &used);
            if (used == v.size())
                return i;
        } else {
            const double d = std::stod(v, &used);
            if (used == v.size())
                return d;
        }
    } catch (const std::exception&) {
        // fall through to the error below
    }
    throw config_error("toml: cannot parse value '" + v + "' at line " + std::to_string(lineno));
}

inline std::vector<std::string> split_key_path(const std::string& key, int lineno)
{
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, '.')) {
        item = toml_trim(item);
        if (item.empty())
            throw config_error("toml: bad key '" + key + "' at line " + std::to_string(lineno));
        parts.push_back(item);
    }
    if (parts.empty())
        throw config_error("toml: empty key at line " + std::to_string(lineno));
    return parts;
}

} // namespace detail

/// TOML-subset reader: [table] headers, dotted keys, strings, numbers,
/// booleans, and flat arrays of scalars.
inline json parse_toml_lite(const std::string& text)
{
    json root = json::object();
    std::vector<std::string> table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::toml_trim(detail::toml_strip_comment(line));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("toml: bad table header at line " + std::to_string(lineno));
            table = detail::split_key_path(line.substr(1, line.size() - 2), lineno);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("toml: expected key = value at line " + std::to_string(lineno));
        const auto keys = detail::split_key_path(line.substr(0, eq), lineno);
        const std::string value = detail::toml_trim(line.substr(eq + 1));

        json* node = &root;
        for (const auto& t : table)
            node = &(*node)[t];
        for (std::size_t i = 0; i + 1 < keys.size(); ++i)
            node = &(*node)[keys[i]];

        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']')
                throw config_error("toml: unterminated array at line " + std::to_string(lineno));
            json arr = json::array();
            std::string inner = value.substr(1, value.size() - 2);
            if (!detail::toml_trim(inner).empty()) {
                std::stringstream ss(inner);
                std::string item;
                while (std::getline(ss, item, ','))
                    arr.push_back(detail::toml_scalar(item, lineno));
            }
            (*node)[keys.back()] = std::move(arr);
        } else {
            (*node)[keys.back()] = detail::toml_scalar(value, lineno);
        }
    }
    return root;
}

/// Load a config tree from a .json or .toml file.
inline json load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".toml")
        return parse_toml_lite(buf.str());
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw config_error("config parse error in " + path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// validated access

inline const json& require_key(const json& j, const std::string& key, const std::string& context)
{
    if (!j.is_object() || !j.contains(key))
        throw config_error("missing required key '" + context + key + "'");
    return j.at(key);
}

inline double require_number(const json& j, const std::string& key, const std::string& context)
{
    const json& v = require_key(j, key, context);
    if (!v.is_number())
        throw config_error("key '" + context + key + "' must be a number");
    return v.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback)
{
    if (!j.is_object() || !j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw config_error("key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline int int_or(const json& j, const std::string& key, int fallback)
{
    if (!j.is_object() || !j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        throw config_error("key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

inline std::string string_or(const json& j, const std::string& key, const std::string& fallback)
{
    if (!j.is_object() || !j.contains(key))
        return fallback;
    if (!j.at(key).is_string())
        throw config_error("key '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

inline bool bool_or(const json& j, const std::string& key, bool fallback)
{
    if (!j.is_object() || !j.contains(key))
        return fallback;
    if (!j.at(key).is_boolean())
        throw config_error("key '" + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

/// Scenario descriptor: kind plus the kind-specific parameter tree.
struct ScenarioConfig {
    std::string kind;                // simulate|linear|penrose|kernel|field|fit
    json params = json::object();    // everything else, echoed into the manifest
    std::filesystem::path out_dir = "out";
    int workers = 1;                 // sweep concurrency
    unsigned long long seed = 0;     // reserved for initial-condition noise
};

inline ScenarioConfig scenario_from_json(const json& j, const std::filesystem::path& default_out)
{
    if (!j.is_object() || j.empty())
        throw config_error(
            "empty config: required keys are 'kind' plus the kind-specific tables "
            "(simulate: manifold, grid, time, initial; linear/penrose: manifold, profile; "
            "kernel: manifold, modes|xi_grid; field: manifold, density; fit: input, model)");
    ScenarioConfig cfg;
    cfg.kind = require_key(j, "kind", "").get<std::string>();
    cfg.params = j;
    cfg.out_dir = string_or(j, "out", default_out.string());
    if (j.contains("outputs") && j.at("outputs").is_object())
        cfg.out_dir = string_or(j.at("outputs"), "dir", cfg.out_dir.string());
    cfg.workers = int_or(j, "workers", 1);
    if (cfg.workers < 1)
        throw config_error("key 'workers' must be >= 1");
    if (j.contains("seed"))
        cfg.seed = j.at("seed").get<unsigned long long>();
    return cfg;
}

/// Set a possibly dotted key path (sweep axes) inside a config tree.
inline void set_config_path(json& j, const std::string& dotted, const json& value)
{
    json* node = &j;
    std::stringstream ss(dotted);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.'))
        parts.push_back(part);
    if (parts.empty())
        throw config_error("empty sweep axis");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        node = &(*node)[parts[i]];
    (*node)[parts.back()] = value;
}

} // namespace geovlasov
