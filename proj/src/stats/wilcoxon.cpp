#include "biofab/stats/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "biofab/stats/ranks.hpp"

namespace biofab::stats {

namespace {

// Counts assignments whose |U' - mu| >= |U_obs - mu| over all C(n, n1)
// choices of which pooled ranks go to the first group. Midranks are 0.5
// multiples, so the comparisons below are exact in double precision.
double exact_two_sided_p(const std::vector<double>& pooled_ranks, std::size_t n1,
                         double u_obs, double mu) {
    const std::size_t n = pooled_ranks.size();
    const double target = std::abs(u_obs - mu);
    const double offset = static_cast<double>(n1 * (n1 + 1)) / 2.0;

    std::vector<std::size_t> pick(n1);
    for (std::size_t i = 0; i < n1; ++i) pick[i] = i;

    std::uint64_t total = 0, extreme = 0;
    for (;;) {
        double w = 0;
        for (std::size_t i : pick) w += pooled_ranks[i];
        const double u = w - offset;
        ++total;
        if (std::abs(u - mu) >= target) ++extreme;

        // advance to the next combination in lexicographic order
        std::size_t k = n1;
        while (k > 0 && pick[k - 1] == n - n1 + (k - 1)) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < n1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                std::size_t exact_cutoff) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon_rank_sum: empty input group");

    const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double w = 0;
    for (std::size_t i = 0; i < n1; ++i) w += ranks[i];
    const double u = w - static_cast<double>(n1 * (n1 + 1)) / 2.0;
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    double p;
    if (n <= exact_cutoff) {
        p = exact_two_sided_p(ranks, n1, u, mu);
    } else {
        // tie-corrected variance
        std::map<double, std::size_t> tie_counts;
        for (double r : pooled) ++tie_counts[r];
        double tie_term = 0;
        for (const auto& [value, t] : tie_counts) {
            (void)value;
            const double td = static_cast<double>(t);
            tie_term += td * td * td - td;
        }
        const double nd = static_cast<double>(n);
        const double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                           ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
        if (var <= 0.0) {
            p = 1.0;  // all observations tied
        } else {
            const double diff = u - mu;
            // continuity correction of 0.5 toward the mean
            double adj = std::abs(diff) - 0.5;
            if (adj < 0.0) adj = 0.0;
            const double z = adj / std::sqrt(var);
            p = std::erfc(z / std::sqrt(2.0));
        }
    }
    p = std::min(1.0, std::max(0.0, p));
    return {u, p};
}

}  // namespace biofab::stats
