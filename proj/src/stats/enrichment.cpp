#include "biofab/stats/enrichment.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "biofab/rng.hpp"
#include "biofab/stats/fdr.hpp"

namespace biofab::stats {

std::string to_string(Direction d) {
    return d == Direction::upregulated ? "upregulated" : "downregulated";
}

Direction direction_from_string(const std::string& s) {
    if (s == "upregulated") return Direction::upregulated;
    if (s == "downregulated") return Direction::downregulated;
    throw std::invalid_argument("unknown direction: " + s);
}

namespace {

// Floyd's algorithm: member_count distinct ranks in [1, universe], O(m).
std::int64_t random_rank_sum(Rng& rng, std::size_t universe, std::size_t member_count) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(member_count * 2);
    std::int64_t sum = 0;
    for (std::uint64_t j = universe - member_count + 1; j <= universe; ++j) {
        const std::uint64_t t = 1 + rng.below(j);
        if (chosen.insert(t).second) {
            sum += static_cast<std::int64_t>(t);
        } else {
            chosen.insert(j);
            sum += static_cast<std::int64_t>(j);
        }
    }
    return sum;
}

EnrichmentResult enrich_one(std::span<const std::string> ranked_genes, const GeneSet& set,
                            std::size_t n_perm, std::uint64_t master_seed) {
    const std::size_t universe = ranked_genes.size();
    if (set.genes.size() > universe)
        throw std::invalid_argument("enrichment: set '" + set.name +
                                    "' exceeds the gene universe");

    const double observed = ssgsea_score(ranked_genes, set);
    std::size_t member_count = 0;
    {
        std::unordered_set<std::string_view> members(set.genes.begin(), set.genes.end());
        for (const auto& g : ranked_genes)
            if (members.count(g)) ++member_count;
    }

    Rng rng(derive_seed(master_seed, set.name));
    double null_sum = 0, null_sq = 0;
    std::size_t at_least = 0;
    const double abs_obs = std::abs(observed);
    for (std::size_t k = 0; k < n_perm; ++k) {
        const std::int64_t rank_sum = random_rank_sum(rng, universe, member_count);
        const double s = rank_difference_score(universe, rank_sum, member_count);
        null_sum += s;
        null_sq += s * s;
        if (std::abs(s) >= abs_obs) ++at_least;
    }
    const double n = static_cast<double>(n_perm);
    const double null_mean = null_sum / n;
    const double var = std::max(0.0, null_sq / n - null_mean * null_mean);
    const double sd = std::sqrt(var);

    EnrichmentResult r;
    r.set_name = set.name;
    r.score = observed;
    r.nes = sd > 0.0 ? (observed - null_mean) / sd : 0.0;
    r.p_value = (1.0 + static_cast<double>(at_least)) / (n + 1.0);
    r.direction = observed > 0.0 ? Direction::upregulated : Direction::downregulated;
    return r;
}

std::vector<EnrichmentResult> run(std::span<const std::string> ranked_genes,
                                  std::span<const GeneSet> library, std::size_t n_perm,
                                  std::uint64_t seed, bool parallel) {
    if (n_perm < 100)
        throw std::invalid_argument("enrichment: n_perm must be >= 100");

    std::vector<EnrichmentResult> results(library.size());
    const std::int64_t n_sets = static_cast<std::int64_t>(library.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < n_sets; ++i)
        results[static_cast<std::size_t>(i)] =
            enrich_one(ranked_genes, library[static_cast<std::size_t>(i)], n_perm, seed);

    std::vector<double> pvals(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) pvals[i] = results[i].p_value;
    const std::vector<double> fdr = bh_fdr(pvals);
    for (std::size_t i = 0; i < results.size(); ++i) results[i].fdr = fdr[i];
    return results;
}

}  // namespace

std::vector<EnrichmentResult> enrichment_with_significance(
    std::span<const std::string> ranked_genes, std::span<const GeneSet> library,
    std::size_t n_perm, std::uint64_t seed, Exec exec) {
    return run(ranked_genes, library, n_perm, seed, exec == Exec::parallel);
}

std::vector<EnrichmentResult> enrichment_with_significance_serial(
    std::span<const std::string> ranked_genes, std::span<const GeneSet> library,
    std::size_t n_perm, std::uint64_t seed) {
    // plain loop kept as the reference for the parallel kernel
    if (n_perm < 100)
        throw std::invalid_argument("enrichment: n_perm must be >= 100");
    std::vector<EnrichmentResult> results;
    results.reserve(library.size());
    for (const auto& set : library)
        results.push_back(enrich_one(ranked_genes, set, n_perm, seed));

    std::vector<double> pvals(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) pvals[i] = results[i].p_value;
    const std::vector<double> fdr = bh_fdr(pvals);
    for (std::size_t i = 0; i < results.size(); ++i) results[i].fdr = fdr[i];
    return results;
}

}  // namespace biofab::stats
