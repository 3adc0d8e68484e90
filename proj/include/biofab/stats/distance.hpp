#pragma once

#include <span>

namespace biofab::stats {

/// 1-D Wasserstein-1 distance between empirical distributions, computed as
/// the quantile-function integral on the merged probability grid. For equal
/// sample sizes this reduces to the mean absolute difference of the sorted
/// samples. Throws on empty input.
double wasserstein_1d(std::span<const double> a, std::span<const double> b);

/// Maximum mean discrepancy with an RBF kernel, biased V-statistic estimate
/// (square root of the kernel double sums). Bandwidth is the median pairwise
/// distance over the pooled samples; k(x,y) = exp(-(x-y)^2 / (2h^2)).
/// Returns exactly 0 for identical inputs. Throws on empty input.
double mmd_rbf(std::span<const double> a, std::span<const double> b);

}  // namespace biofab::stats
