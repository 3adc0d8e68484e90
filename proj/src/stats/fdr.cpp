#include "biofab/stats/fdr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace biofab::stats {

std::vector<double> bh_fdr(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("bh_fdr: p-value outside [0,1]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return p_values[i] < p_values[j];
    });

    std::vector<double> q(m);
    double running_min = 1.0;
    for (std::size_t i = m; i > 0; --i) {
        const std::size_t idx = order[i - 1];
        const double scaled =
            p_values[idx] * static_cast<double>(m) / static_cast<double>(i);
        running_min = std::min(running_min, scaled);
        q[idx] = std::min(1.0, running_min);
    }
    return q;
}

}  // namespace biofab::stats
