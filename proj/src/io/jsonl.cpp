#include "biofab/io/jsonl.hpp"

#include <fstream>
#include <stdexcept>

#include "biofab/text.hpp"

namespace biofab::io {

void for_each_jsonl_line(const std::string& path,
                         const std::function<void(const std::string&)>& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        fn(line);
    }
}

std::size_t count_lines(const std::string& path) {
    std::size_t n = 0;
    for_each_jsonl_line(path, [&](const std::string&) { ++n; });
    return n;
}

}  // namespace biofab::io
