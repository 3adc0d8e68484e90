#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biofab/parallel.hpp"
#include "biofab/stats/ssgsea.hpp"

namespace biofab::stats {

enum class Direction { upregulated, downregulated };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct EnrichmentResult {
    std::string set_name;
    double score = 0;    // observed rank-difference score
    double nes = 0;      // z-score against the same-size random-set null
    double p_value = 1;  // add-one permutation estimate
    double fdr = 1;      // BH across the library
    Direction direction = Direction::upregulated;
};

/// Permutation-based significance for every set in the library. The null for
/// a set of size m is n_perm draws of m random distinct ranks;
/// nes = (score - null_mean) / null_sd, p = (1 + #{|null| >= |score|}) / (n_perm + 1),
/// fdr = BH over the library's p-values. Per-set seeds derive from
/// (seed, set name) so results are independent of evaluation order.
/// Requires n_perm >= 100.
std::vector<EnrichmentResult> enrichment_with_significance(
    std::span<const std::string> ranked_genes, std::span<const GeneSet> library,
    std::size_t n_perm, std::uint64_t seed, Exec exec = Exec::parallel);

/// Serial reference implementation; must match the parallel kernel exactly.
std::vector<EnrichmentResult> enrichment_with_significance_serial(
    std::span<const std::string> ranked_genes, std::span<const GeneSet> library,
    std::size_t n_perm, std::uint64_t seed);

}  // namespace biofab::stats
