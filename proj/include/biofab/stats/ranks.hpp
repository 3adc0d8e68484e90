#pragma once

#include <span>
#include <vector>

namespace biofab::stats {

/// 1-based ranks with midranks assigned to ties.
std::vector<double> midranks(std::span<const double> values);

}  // namespace biofab::stats
