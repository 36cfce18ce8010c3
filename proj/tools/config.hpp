#pragma once

// Sectioned key-value run configuration ([section] / key = value, '#'
// comments). Unknown keys are rejected per command, and flags can override
// scalar keys as "section.key=value".

#include <map>
#include <set>
#include <string>
#include <vector>

#include "heatwave/errors.hpp"

namespace heatwave::cli {

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    void apply_override(const std::string& dotted_assignment); // "sec.key=value"

    bool has(const std::string& sec, const std::string& key) const;
    std::string get_string(const std::string& sec, const std::string& key) const;
    std::string get_string_or(const std::string& sec, const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& sec, const std::string& key) const;
    double get_double_or(const std::string& sec, const std::string& key,
                         double fallback) const;
    long get_long(const std::string& sec, const std::string& key) const;
    long get_long_or(const std::string& sec, const std::string& key, long fallback) const;
    unsigned long long get_u64(const std::string& sec, const std::string& key) const;
    std::vector<double> get_list(const std::string& sec, const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& sec,
                                             const std::string& key) const;

    // every present key of `sec` must be in `allowed`; other sections rejected
    void validate(const std::string& sec, const std::set<std::string>& allowed) const;

    const std::map<std::pair<std::string, std::string>, std::string>& entries() const {
        return kv_;
    }

private:
    std::map<std::pair<std::string, std::string>, std::string> kv_;
};

} // namespace heatwave::cli
