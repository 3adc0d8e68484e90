#include <map>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

GenResult gen_ttp(std::span<const TtpAnnotation> annotations, std::uint64_t seed) {
    GenResult result;
    const auto& catalog = ttp_question_catalog();

    // question text -> (item index, key) for duplicate collapsing
    std::map<std::string, std::pair<std::size_t, std::string>> seen;

    for (const auto& ann : annotations) {
        for (const auto& qt : catalog) {
            // the bulk modality type covers both decision fields
            std::vector<std::pair<std::string, std::string>> instances;
            if (qt.type == "multiple_choice") {
                if (ann.fields.count("small_molecule"))
                    instances.emplace_back("small_molecule",
                                           "Can {GENE} be targeted by a small molecule?");
                if (ann.fields.count("antibody"))
                    instances.emplace_back("antibody", "Can {GENE} be targeted by an antibody?");
            } else if (ann.fields.count(qt.field)) {
                instances.emplace_back(qt.field, qt.pattern);
            }

            for (const auto& [field, pattern] : instances) {
                const bool value = ann.fields.at(field);
                const bool yes = qt.negative ? !value : value;
                const std::string question = instantiate(pattern, {{"GENE", ann.target}});
                const std::string key_label = yes ? "Yes" : "No";

                const auto it = seen.find(question);
                if (it != seen.end()) {
                    const std::string& prior_key = it->second.second;
                    if (prior_key != key_label)
                        result.conflicts.push_back("conflicting keys for duplicate question '" +
                                                   question + "' (kept first occurrence)");
                    continue;  // keep-first policy
                }

                QaItem item;
                item.id = "ttp-" + slug(ann.target) + "-" + slug(qt.type) + "-" + slug(field);
                item.family = "TTP";
                item.question_type = qt.type;
                item.question = question;
                item.options = {{"A", "Yes"}, {"B", "No"}};
                item.answer = yes ? "A" : "B";
                item.subjects = {{"target", ann.target}};
                item.metadata["field"] = field;
                item.metadata["is_alternative_phrasing"] = qt.alt ? "true" : "false";
                item.metadata["is_negative_example"] = qt.negative ? "true" : "false";
                set_entities(item, "target", {ann.target});
                seen[question] = {result.items.size(), key_label};
                result.items.push_back(shuffle_options(std::move(item), seed));
            }
        }
    }
    return result;
}

}  // namespace biofab::qa
