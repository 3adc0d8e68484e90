#include "biofab/stats/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace biofab::stats {

double wasserstein_1d(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wasserstein_1d: empty input");

    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());

    const std::size_t n = x.size(), m = y.size();
    if (n == m) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i] - y[i]);
        return s / static_cast<double>(n);
    }

    // integrate |Qx(u) - Qy(u)| over the merged grid of step boundaries
    double total = 0, u_prev = 0;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        const double ui = static_cast<double>(i + 1) / static_cast<double>(n);
        const double uj = static_cast<double>(j + 1) / static_cast<double>(m);
        const double u = std::min(ui, uj);
        total += (u - u_prev) * std::abs(x[i] - y[j]);
        u_prev = u;
        if (ui <= u) ++i;
        if (uj <= u) ++j;
    }
    return total;
}

double mmd_rbf(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mmd_rbf: empty input");

    // median heuristic over pooled pairwise distances
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> dists;
    dists.reserve(pooled.size() * (pooled.size() - 1) / 2);
    for (std::size_t i = 0; i < pooled.size(); ++i)
        for (std::size_t j = i + 1; j < pooled.size(); ++j)
            dists.push_back(std::abs(pooled[i] - pooled[j]));
    double h = 1.0;
    if (!dists.empty()) {
        std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
        h = dists[dists.size() / 2];
    }
    if (h <= 0.0) h = 1.0;  // all points identical; terms cancel regardless

    const double denom = 2.0 * h * h;
    auto kernel_sum = [&](std::span<const double> u, std::span<const double> v) {
        double s = 0;
        for (double ui : u)
            for (double vj : v) {
                const double d = ui - vj;
                s += std::exp(-(d * d) / denom);
            }
        return s;
    };

    const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    const double mmd2 = kernel_sum(a, a) / (n * n) + kernel_sum(b, b) / (m * m) -
                        2.0 * kernel_sum(a, b) / (n * m);
    return std::sqrt(std::max(0.0, mmd2));
}

}  // namespace biofab::stats
