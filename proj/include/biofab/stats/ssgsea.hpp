#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace biofab::stats {

struct GeneSet {
    std::string name;
    std::vector<std::string> genes;  // unique, non-empty
    std::string provenance;
};

/// Rank-difference enrichment core: mean rank of the m member positions minus
/// mean rank of the remaining universe-m positions, ranks 1..universe.
double rank_difference_score(std::size_t universe, std::int64_t member_rank_sum,
                             std::size_t member_count);

/// Single-sample enrichment of `set` against a gene ranking. ranked_genes[0]
/// carries rank 1 (bottom of the ranking), the last element rank G (top).
/// Throws unless 1 <= |set ∩ ranked| < G.
double ssgsea_score(std::span<const std::string> ranked_genes, const GeneSet& set);

}  // namespace biofab::stats
