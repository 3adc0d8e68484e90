#include "biofab/split/jaccard.hpp"

#include <stdexcept>
#include <unordered_set>

namespace biofab::split {

double jaccard(const stats::GeneSet& a, const stats::GeneSet& b) {
    if (a.genes.empty() || b.genes.empty())
        throw std::invalid_argument("jaccard: empty gene set");
    const std::unordered_set<std::string> sa(a.genes.begin(), a.genes.end());
    const std::unordered_set<std::string> sb(b.genes.begin(), b.genes.end());
    std::size_t inter = 0;
    for (const auto& g : sa)
        if (sb.count(g)) ++inter;
    const std::size_t uni = sa.size() + sb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<stats::GeneSet> max_jaccard_filter(std::span<const stats::GeneSet> test_sets,
                                               std::span<const stats::GeneSet> train_sets,
                                               double threshold, Exec exec) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("max_jaccard_filter: threshold outside [0,1]");

    // sort every gene list once; pairwise overlap is then a linear merge
    auto sorted_genes = [](std::span<const stats::GeneSet> sets) {
        std::vector<std::vector<std::string>> out(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (sets[i].genes.empty())
                throw std::invalid_argument("max_jaccard_filter: empty gene set " +
                                            sets[i].name);
            out[i] = sets[i].genes;
            std::sort(out[i].begin(), out[i].end());
            out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
        }
        return out;
    };
    const auto tests = sorted_genes(test_sets);
    const auto trains = sorted_genes(train_sets);

    std::vector<char> keep(test_sets.size(), 1);
    const std::int64_t n = static_cast<std::int64_t>(test_sets.size());
    const bool parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& t = tests[static_cast<std::size_t>(i)];
        for (const auto& s : trains) {
            std::size_t inter = 0, a = 0, b = 0;
            while (a < t.size() && b < s.size()) {
                const int cmp = t[a].compare(s[b]);
                if (cmp == 0) {
                    ++inter;
                    ++a;
                    ++b;
                } else if (cmp < 0) {
                    ++a;
                } else {
                    ++b;
                }
            }
            const double j = static_cast<double>(inter) /
                             static_cast<double>(t.size() + s.size() - inter);
            if (j > threshold) {
                keep[static_cast<std::size_t>(i)] = 0;
                break;
            }
        }
    }

    std::vector<stats::GeneSet> retained;
    for (std::size_t i = 0; i < test_sets.size(); ++i)
        if (keep[i]) retained.push_back(test_sets[i]);
    return retained;
}

}  // namespace biofab::split
