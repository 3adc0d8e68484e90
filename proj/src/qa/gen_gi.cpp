#include <stdexcept>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

GenResult gen_gi(std::span<const GiFeatureRecord> records, std::uint64_t seed) {
    GenResult result;
    const auto& catalog = gi_question_catalog();

    std::size_t row = 0;
    for (const auto& rec : records) {
        ++row;
        if (!rec.has_score) continue;  // missing feature score

        const GiQuestionType* qt = nullptr;
        for (const auto& entry : catalog)
            if (entry.key == rec.feature_type) {
                qt = &entry;
                break;
            }
        if (!qt)
            throw std::invalid_argument("gen_gi: feature_type '" + rec.feature_type +
                                        "' is not in the question catalog");

        Rng rng(derive_seed(seed, "gi:" + rec.gene + ":" + rec.indication + ":" +
                                      rec.feature_type));
        const std::string& pattern =
            qt->technical_patterns[rng.below(qt->technical_patterns.size())];

        QaItem item;
        item.id = "gi-" + slug(rec.indication) + "-" + slug(rec.gene) + "-" +
                  slug(rec.feature_type);
        item.family = "GI";
        item.question_type = rec.feature_type;
        item.question =
            instantiate(pattern, {{"GENE", rec.gene}, {"INDICATION", rec.indication}});
        item.options = {{"A", "True"}, {"B", "False"}};
        item.answer = rec.truth ? "A" : "B";
        item.subjects = {{"gene", rec.gene}, {"indication", rec.indication}};
        item.metadata["label"] = rec.truth ? "true" : "false";
        item.metadata["base_question"] = instantiate(
            qt->base_pattern, {{"GENE", rec.gene}, {"INDICATION", rec.indication}});
        item.metadata["is_alternative_phrasing"] = "true";
        set_entities(item, "gene", {rec.gene});
        set_entities(item, "indication", {rec.indication});
        result.items.push_back(shuffle_options(std::move(item), seed));
    }
    return result;
}

}  // namespace biofab::qa
