#pragma once

#include <map>
#include <string>
#include <vector>

namespace biofab::io {

/// Delimiter-separated text table. UTF-8, '.' decimal separator.
/// Delimiter is sniffed from the header (tab wins over comma) unless forced.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;  // throws if absent
    bool has_column(const std::string& name) const;
};

Table read_table(const std::string& path, char delimiter = '\0');

double parse_double(const std::string& cell, const std::string& context);

/// Atomic write: temp file in the same directory, then rename.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

}  // namespace biofab::io
