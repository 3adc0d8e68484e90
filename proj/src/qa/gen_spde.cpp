#include <algorithm>
#include <cstdio>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/stats/descriptive.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

std::string option_text(const SpatialScoreRecord& r) {
    return r.gene_symbol + " (ensembl " + r.ensembl_id + ")";
}

}  // namespace

GenResult gen_spde(std::span<const SpatialScoreRecord> records,
                   std::size_t per_indication_count, std::uint64_t seed) {
    GenResult result;

    std::map<std::string, std::vector<const SpatialScoreRecord*>> by_indication;
    for (const auto& r : records) by_indication[r.indication].push_back(&r);

    for (const auto& [indication, recs] : by_indication) {
        std::vector<double> scores;
        scores.reserve(recs.size());
        for (const auto* r : recs) scores.push_back(r->score);
        const double q_hi = stats::quantile(scores, 0.99);
        const double q_lo = stats::quantile(scores, 0.01);

        struct DirectionSpec {
            const char* word;
            const char* type;
            bool up;
            std::size_t count;
        };
        const std::size_t up_count = (per_indication_count + 1) / 2;
        const DirectionSpec specs[2] = {
            {"upregulated", "upregulated_in_tumour_islets", true, up_count},
            {"downregulated", "downregulated_in_tumour_islets", false,
             per_indication_count - up_count},
        };

        for (const auto& spec : specs) {
            std::vector<const SpatialScoreRecord*> tails, distractors;
            for (const auto* r : recs) {
                if (spec.up) {
                    if (r->score >= q_hi) tails.push_back(r);
                    else if (r->score <= 0.5) distractors.push_back(r);
                } else {
                    if (r->score <= q_lo) tails.push_back(r);
                    else if (r->score >= -0.5) distractors.push_back(r);
                }
            }
            if (tails.empty() || distractors.empty()) {
                result.warnings.push_back({"SPDE", indication,
                                           std::string("insufficient ") + spec.word +
                                               " pool; no items emitted"});
                continue;
            }

            Rng rng(derive_seed(seed, "spde:" + indication + ":" + spec.word));
            for (std::size_t i = 0; i < spec.count; ++i) {
                const auto* positive = tails[rng.below(tails.size())];
                const SpatialScoreRecord* distractor = nullptr;
                for (int attempt = 0; attempt < 16; ++attempt) {
                    const auto* cand = distractors[rng.below(distractors.size())];
                    if (cand->gene_symbol != positive->gene_symbol) {
                        distractor = cand;
                        break;
                    }
                }
                if (!distractor) continue;  // lone distractor equals the positive

                char idbuf[32];
                std::snprintf(idbuf, sizeof(idbuf), "%05zu", i);
                QaItem item;
                item.id = "spde-" + slug(indication) + "-" + (spec.up ? "up" : "down") + "-" +
                          idbuf;
                item.family = "SPDE";
                item.question_type = spec.type;
                item.question = std::string("Which gene is ") + spec.word +
                                " in tumour islets versus stroma in " + indication + "?";
                item.options = {{"A", option_text(*positive)}, {"B", option_text(*distractor)}};
                item.answer = "A";
                item.subjects = {{"indication", indication},
                                 {"gene", positive->gene_symbol}};
                item.metadata["direction"] = spec.up ? "up" : "down";
                item.metadata["positive_gene"] = positive->gene_symbol;
                item.metadata["distractor_gene"] = distractor->gene_symbol;
                set_entities(item, "gene", {positive->gene_symbol, distractor->gene_symbol});
                set_entities(item, "indication", {indication});
                result.items.push_back(shuffle_options(std::move(item), seed));
            }
        }
    }
    return result;
}

}  // namespace biofab::qa
