#include "biofab/stats/ssgsea.hpp"

#include <stdexcept>
#include <unordered_set>

namespace biofab::stats {

double rank_difference_score(std::size_t universe, std::int64_t member_rank_sum,
                             std::size_t member_count) {
    if (member_count == 0 || member_count >= universe)
        throw std::invalid_argument(
            "rank_difference_score: set and its complement must both be non-empty");
    const std::int64_t total =
        static_cast<std::int64_t>(universe) * static_cast<std::int64_t>(universe + 1) / 2;
    const double mean_member = static_cast<double>(member_rank_sum) /
                               static_cast<double>(member_count);
    const double mean_rest = static_cast<double>(total - member_rank_sum) /
                             static_cast<double>(universe - member_count);
    return mean_member - mean_rest;
}

double ssgsea_score(std::span<const std::string> ranked_genes, const GeneSet& set) {
    if (set.genes.empty()) throw std::invalid_argument("ssgsea_score: empty gene set");
    std::unordered_set<std::string_view> members(set.genes.begin(), set.genes.end());
    if (members.size() != set.genes.size())
        throw std::invalid_argument("ssgsea_score: duplicate genes in set '" + set.name + "'");

    std::int64_t rank_sum = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < ranked_genes.size(); ++i) {
        if (members.count(ranked_genes[i])) {
            rank_sum += static_cast<std::int64_t>(i + 1);
            ++count;
        }
    }
    if (count == 0 || count == ranked_genes.size())
        throw std::invalid_argument("ssgsea_score: set '" + set.name +
                                    "' covers none or all of the ranking");
    return rank_difference_score(ranked_genes.size(), rank_sum, count);
}

}  // namespace biofab::stats
