#include "biofab/stats/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace biofab::stats {

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile: empty input");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0,1]");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const double h = static_cast<double>(sorted.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double log2_fold_change(std::span<const double> a, std::span<const double> b,
                        double pseudocount) {
    if (pseudocount <= 0.0)
        throw std::invalid_argument("log2_fold_change: pseudocount must be > 0");
    const double num = mean(a) + pseudocount;
    const double den = mean(b) + pseudocount;
    const double fc = std::log2(num / den);
    return std::clamp(fc, -30.0, 30.0);
}

}  // namespace biofab::stats
