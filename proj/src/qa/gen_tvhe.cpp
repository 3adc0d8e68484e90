#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

GenResult gen_tvhe(const std::map<std::string, std::vector<stats::DEResult>>& de_by_indication,
                   const TemplateBank& bank, std::uint64_t seed) {
    GenResult result;
    if (bank.templates.empty())
        throw std::invalid_argument("gen_tvhe: empty template bank");

    for (const auto& [indication, results] : de_by_indication) {
        for (const auto& de : results) {
            if (de.de_class == stats::DeClass::excluded) continue;

            Rng rng(derive_seed(seed, "tvhe:" + indication + ":" + de.gene_id));
            const QaTemplate& tpl = bank.templates[rng.below(bank.templates.size())];
            std::map<std::string, std::string> slots = {{"GENE", de.gene_id},
                                                        {"INDICATION", indication}};
            std::map<std::string, std::string> variant;
            for (const auto& [slot, choices] : bank.slots) {
                const std::string& chosen = choices[rng.below(choices.size())];
                slots[slot] = chosen;
                variant[slot] = chosen;
            }
            const std::string tumour_text = slots.count("TUMOUR_TERM")
                                                ? slots.at("TUMOUR_TERM")
                                                : std::string("tumour tissue");
            const std::string normal_text = slots.count("NORMAL_TERM")
                                                ? slots.at("NORMAL_TERM")
                                                : std::string("adjacent normal tissue");

            QaItem item;
            item.id = "tvhe-" + slug(indication) + "-" + slug(de.gene_id);
            item.family = "TvHE";
            item.question_type = "expression_tumour_vs_healthy";
            item.question = instantiate(tpl.pattern, slots);
            item.options = {{"A", tumour_text}, {"B", normal_text}};
            item.answer = de.de_class == stats::DeClass::tumour_up ? "A" : "B";
            item.subjects = {{"gene", de.gene_id}, {"indication", indication}};
            item.metadata["direction"] = to_string(de.de_class);
            item.metadata["template"] = tpl.id;
            item.metadata["is_alternative_phrasing"] = tpl.alt ? "true" : "false";
            set_entities(item, "gene", {de.gene_id});
            set_entities(item, "indication", {indication});
            result.items.push_back(shuffle_options(std::move(item), seed));
        }
    }
    return result;
}

}  // namespace biofab::qa
