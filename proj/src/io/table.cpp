#include "biofab/io/table.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "biofab/text.hpp"

namespace biofab::io {

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::runtime_error("table: missing column '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

Table read_table(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table: " + path);

    std::string line;
    Table t;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            if (delimiter == '\0')
                delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
            t.header = split_text(line, delimiter);
            first = false;
            continue;
        }
        auto cells = split_text(line, delimiter);
        if (cells.size() != t.header.size())
            throw std::runtime_error("table: row with " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(t.header.size()) +
                                     " in " + path);
        t.rows.push_back(std::move(cells));
    }
    if (first) throw std::runtime_error("table: empty file " + path);
    return t;
}

double parse_double(const std::string& cell, const std::string& context) {
    if (cell.empty()) throw std::runtime_error("missing value in " + context);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(cell.c_str(), &end);
    if (errno != 0 || end == cell.c_str() || *end != '\0')
        throw std::runtime_error("bad numeric value '" + cell + "' in " + context);
    return v;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() /
                         (target.filename().string() + ".tmp-" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace biofab::io
