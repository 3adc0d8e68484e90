#pragma once

#include <span>
#include <vector>

namespace biofab::stats {

/// Benjamini-Hochberg step-up adjustment: q_(i) = min_{j>=i} p_(j)*m/j,
/// clamped to <= 1, returned in input order. Throws if any p is outside [0,1].
std::vector<double> bh_fdr(std::span<const double> p_values);

}  // namespace biofab::stats
