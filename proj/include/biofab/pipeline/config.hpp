#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace biofab::pipeline {

/// key = value text config; '#' starts a comment.
struct KvConfig {
    std::map<std::string, std::string> values;

    static KvConfig from_file(const std::string& path);

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
};

}  // namespace biofab::pipeline
