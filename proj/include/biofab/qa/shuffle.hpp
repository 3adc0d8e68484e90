#pragma once

#include <cstdint>

#include "biofab/qa/item.hpp"

namespace biofab::qa {

/// Randomizes which letter carries which option text. The permutation is
/// drawn from a generator keyed by (seed, item id), so re-runs are identical
/// and the assignment is independent across items. The answer letter is
/// updated to keep tracking the correct content.
QaItem shuffle_options(QaItem item, std::uint64_t seed);

}  // namespace biofab::qa
