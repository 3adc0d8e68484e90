#include <algorithm>
#include <cmath>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

std::string option_text(const std::string& pathway, stats::Direction d) {
    return pathway + " - " + stats::to_string(d);
}

}  // namespace

GenResult gen_dpp(std::span<const DppContext> contexts, const std::string& difficulty,
                  std::uint64_t seed) {
    if (difficulty != "easy" && difficulty != "hard")
        throw std::invalid_argument("gen_dpp: difficulty must be easy or hard");
    GenResult result;

    std::size_t index = 0;
    for (const auto& ctx : contexts) {
        ++index;
        const std::string ctx_name =
            ctx.drug + "/" + ctx.cell_line + "/" + format_compact(ctx.concentration_um);

        std::vector<const stats::EnrichmentResult*> significant;
        for (const auto& r : ctx.results)
            if (r.fdr < 0.05) significant.push_back(&r);
        if (significant.empty()) {
            result.warnings.push_back({"DPP", ctx_name, "no significant pathway; skipped"});
            continue;
        }

        // maximal |NES|, ties broken by pathway name
        const stats::EnrichmentResult* best = significant.front();
        for (const auto* r : significant) {
            if (std::abs(r->nes) > std::abs(best->nes) ||
                (std::abs(r->nes) == std::abs(best->nes) && r->set_name < best->set_name))
                best = r;
        }

        Rng rng(derive_seed(seed, "dpp:" + ctx_name));
        std::string distractor_text;
        if (difficulty == "hard") {
            std::vector<const stats::EnrichmentResult*> others;
            for (const auto* r : significant)
                if (r != best) others.push_back(r);
            if (others.empty()) {
                result.warnings.push_back(
                    {"DPP", ctx_name, "no second significant pathway for hard mode; skipped"});
                continue;
            }
            const auto* pick = others[rng.below(others.size())];
            distractor_text = option_text(pick->set_name, pick->direction);
        } else {
            std::vector<std::string> space;
            for (const auto& name : ctx.pathway_space)
                if (name != best->set_name) space.push_back(name);
            if (space.empty()) {
                result.warnings.push_back({"DPP", ctx_name, "pathway space too small; skipped"});
                continue;
            }
            const std::string& name = space[rng.below(space.size())];
            const auto dir = rng.coin() ? stats::Direction::upregulated
                                        : stats::Direction::downregulated;
            distractor_text = option_text(name, dir);
        }
        const std::string correct_text = option_text(best->set_name, best->direction);
        if (distractor_text == correct_text) continue;

        QaItem item;
        item.id = "dpp-" + slug(ctx.drug) + "-" + slug(ctx.cell_line) + "-" +
                  slug(format_compact(ctx.concentration_um));
        item.family = "DPP";
        item.question_type = "most_perturbed_pathway";
        item.question = "Which Reactome gene set would be most significantly affected by " +
                        ctx.drug + " at " + format_compact(ctx.concentration_um) + " µM in " +
                        ctx.cell_line + " cells, and in which direction: upregulation or "
                        "downregulation?";
        item.options = {{"A", correct_text}, {"B", distractor_text}};
        item.answer = "A";
        item.subjects = {{"drug", ctx.drug}, {"cell_line", ctx.cell_line},
                         {"pathway", best->set_name}};
        item.metadata["difficulty"] = difficulty;
        item.metadata["direction"] = stats::to_string(best->direction);
        item.metadata["nes"] = format_double(best->nes);
        item.metadata["concentration_um"] = format_compact(ctx.concentration_um);
        set_entities(item, "drug", {ctx.drug});
        set_entities(item, "cell_line", {ctx.cell_line});
        const std::string distractor_pathway =
            distractor_text.substr(0, distractor_text.rfind(" - "));
        set_entities(item, "pathway", {best->set_name, distractor_pathway});
        result.items.push_back(shuffle_options(std::move(item), seed));
    }
    return result;
}

}  // namespace biofab::qa
