#pragma once

#include <span>

namespace biofab::stats {

double mean(std::span<const double> values);  // throws on empty input

/// Type-7 quantile: linear interpolation between order statistics at
/// h = (n-1)*p. Throws if values is empty or p is outside [0,1].
double quantile(std::span<const double> values, double p);

/// log2((mean(a)+pseudocount)/(mean(b)+pseudocount)), clamped to [-30, 30].
double log2_fold_change(std::span<const double> a, std::span<const double> b,
                        double pseudocount = 1e-9);

}  // namespace biofab::stats
