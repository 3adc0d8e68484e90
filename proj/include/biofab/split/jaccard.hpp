#pragma once

#include <span>
#include <vector>

#include "biofab/parallel.hpp"
#include "biofab/stats/ssgsea.hpp"

namespace biofab::split {

/// |a ∩ b| / |a ∪ b|. Throws on an empty set.
double jaccard(const stats::GeneSet& a, const stats::GeneSet& b);

/// Keeps test sets whose maximum Jaccard overlap against every train set is
/// <= threshold. Order preserved.
std::vector<stats::GeneSet> max_jaccard_filter(std::span<const stats::GeneSet> test_sets,
                                               std::span<const stats::GeneSet> train_sets,
                                               double threshold = 0.3,
                                               Exec exec = Exec::parallel);

}  // namespace biofab::split
