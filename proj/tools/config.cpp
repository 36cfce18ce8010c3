#include "config.hpp"

#include <fstream>
#include <sstream>

namespace heatwave::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(lineno) +
                                   ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value inside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(lineno) +
                                            ": empty key");
        cfg.kv_[{section, key}] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

void Config::apply_override(const std::string& dotted) {
    const auto eq = dotted.find('=');
    const auto dot = dotted.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw config_error("override must look like section.key=value: " + dotted);
    const std::string sec = trim(dotted.substr(0, dot));
    const std::string key = trim(dotted.substr(dot + 1, eq - dot - 1));
    kv_[{sec, key}] = trim(dotted.substr(eq + 1));
}

bool Config::has(const std::string& sec, const std::string& key) const {
    return kv_.count({sec, key}) > 0;
}

std::string Config::get_string(const std::string& sec, const std::string& key) const {
    auto it = kv_.find({sec, key});
    if (it == kv_.end())
        throw config_error("missing required config key: [" + sec + "] " + key);
    return it->second;
}

std::string Config::get_string_or(const std::string& sec, const std::string& key,
                                  const std::string& fallback) const {
    auto it = kv_.find({sec, key});
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& sec, const std::string& key) const {
    const std::string s = get_string(sec, key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key [" + sec + "] " + key + " is not a number: " + s);
    }
}

double Config::get_double_or(const std::string& sec, const std::string& key,
                             double fallback) const {
    return has(sec, key) ? get_double(sec, key) : fallback;
}

long Config::get_long(const std::string& sec, const std::string& key) const {
    const double v = get_double(sec, key);
    const long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
        throw config_error("config key [" + sec + "] " + key + " must be an integer");
    return l;
}

long Config::get_long_or(const std::string& sec, const std::string& key,
                         long fallback) const {
    return has(sec, key) ? get_long(sec, key) : fallback;
}

unsigned long long Config::get_u64(const std::string& sec, const std::string& key) const {
    const std::string s = get_string(sec, key);
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key [" + sec + "] " + key +
                           " is not an unsigned integer: " + s);
    }
}

std::vector<double> Config::get_list(const std::string& sec, const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get_string(sec, key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw config_error("config key [" + sec + "] " + key +
                               " has a non-numeric element: " + item);
        }
    }
    if (out.empty())
        throw config_error("config key [" + sec + "] " + key + " is an empty list");
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& sec,
                                                 const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(get_string(sec, key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty())
        throw config_error("config key [" + sec + "] " + key + " is an empty list");
    return out;
}

void Config::validate(const std::string& sec, const std::set<std::string>& allowed) const {
    for (const auto& [sk, value] : kv_) {
        (void)value;
        if (sk.first != sec)
            throw config_error("unexpected config section [" + sk.first +
                               "] (this command reads [" + sec + "])");
        if (!allowed.count(sk.second))
            throw config_error("unknown config key: [" + sec + "] " + sk.second);
    }
}

} // namespace heatwave::cli
