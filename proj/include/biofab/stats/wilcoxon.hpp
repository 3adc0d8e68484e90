#pragma once

#include <cstddef>
#include <span>

namespace biofab::stats {

struct RankSumResult {
    double u_statistic;   // Mann-Whitney U for the first group
    double p_two_sided;
};

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test. Midranks handle ties.
/// For n1+n2 <= exact_cutoff the p-value is computed by exhaustive
/// enumeration of all C(n1+n2, n1) group assignments; above the cutoff a
/// tie-corrected normal approximation with continuity correction is used.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                std::size_t exact_cutoff = 12);

}  // namespace biofab::stats
