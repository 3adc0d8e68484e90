#pragma once

#include <functional>
#include <string>

namespace biofab::io {

/// Calls fn once per non-empty line.
void for_each_jsonl_line(const std::string& path,
                         const std::function<void(const std::string&)>& fn);

std::size_t count_lines(const std::string& path);

}  // namespace biofab::io
