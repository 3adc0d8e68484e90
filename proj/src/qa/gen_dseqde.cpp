#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

std::string gene_stem(const std::string& target, const std::string& gene,
                      const std::string& context) {
    return "Would a drug inhibiting the activity of the target " + target +
           " induce a deregulation of gene " + gene + " in " + context + " cells?";
}

}  // namespace

GenResult gen_dseqde(std::span<const TargetContextDegs> deg_sets, const PathwayMap& pathway_map,
                     const std::string& question_kind, std::uint64_t seed) {
    GenResult result;
    const bool all = question_kind == "all";
    if (!all && question_kind != "yes_no_gene" && question_kind != "pairwise_gene" &&
        question_kind != "pairwise_pathway")
        throw std::invalid_argument("gen_dseqde: unknown question kind '" + question_kind + "'");

    for (const auto& tc : deg_sets) {
        if (tc.degs.empty()) {
            result.warnings.push_back({"DSeqDE", tc.target + "/" + tc.context,
                                       "target has no positives; skipped"});
            continue;
        }
        const std::unordered_set<std::string> deg_set(tc.degs.begin(), tc.degs.end());
        std::vector<std::string> positives = tc.degs;
        std::vector<std::string> negatives;
        for (const auto& g : tc.universe)
            if (!deg_set.count(g)) negatives.push_back(g);
        std::sort(positives.begin(), positives.end());
        std::sort(negatives.begin(), negatives.end());

        const std::string ctx_tag = tc.target + ":" + tc.context;
        const std::string ctx_slug = slug(tc.target) + "-" + slug(tc.context);

        if (all || question_kind == "yes_no_gene") {
            // negatives downsampled so per-target yes/no label counts match
            Rng rng(derive_seed(seed, "dseqde:yn:" + ctx_tag));
            const std::size_t k = std::min(positives.size(), negatives.size());
            const auto pos = k < positives.size() ? rng.sample(positives, k) : positives;
            const auto neg = rng.sample(negatives, k);
            for (std::size_t i = 0; i < k; ++i) {
                for (int is_pos = 1; is_pos >= 0; --is_pos) {
                    const std::string& gene = is_pos ? pos[i] : neg[i];
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%05zu", i * 2 + (is_pos ? 0 : 1));
                    QaItem item;
                    item.id = "dseqde-yn-" + ctx_slug + "-" + buf;
                    item.family = "DSeqDE";
                    item.question_type = "yes_no_gene";
                    item.question = gene_stem(tc.target, gene, tc.context);
                    item.options = {{"A", "Yes"}, {"B", "No"}};
                    item.answer = is_pos ? "A" : "B";
                    item.subjects = {{"target", tc.target}, {"gene", gene},
                                     {"context", tc.context}};
                    item.metadata["label"] = is_pos ? "yes" : "no";
                    set_entities(item, "target", {tc.target});
                    set_entities(item, "gene", {gene});
                    set_entities(item, "context", {tc.context});
                    result.items.push_back(shuffle_options(std::move(item), seed));
                }
            }
        }

        if (all || question_kind == "pairwise_gene") {
            Rng rng(derive_seed(seed, "dseqde:pg:" + ctx_tag));
            const std::size_t k = std::min(positives.size(), negatives.size());
            const auto pos = rng.sample(positives, k);
            const auto neg = rng.sample(negatives, k);
            for (std::size_t i = 0; i < k; ++i) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%05zu", i);
                QaItem item;
                item.id = "dseqde-pg-" + ctx_slug + "-" + buf;
                item.family = "DSeqDE";
                item.question_type = "pairwise_gene";
                item.question = "Which of these two genes would be deregulated by a drug "
                                "inhibiting the activity of the target " +
                                tc.target + " in " + tc.context + " cells?";
                item.options = {{"A", pos[i]}, {"B", neg[i]}};
                item.answer = "A";
                item.subjects = {{"target", tc.target}, {"gene", pos[i]},
                                 {"context", tc.context}};
                set_entities(item, "target", {tc.target});
                set_entities(item, "gene", {pos[i], neg[i]});
                set_entities(item, "context", {tc.context});
                result.items.push_back(shuffle_options(std::move(item), seed));
            }
        }

        if (all || question_kind == "pairwise_pathway") {
            // candidate universe: pathways touching this target's gene panel
            const std::unordered_set<std::string> universe_set(tc.universe.begin(),
                                                               tc.universe.end());
            std::vector<std::string> hit, unhit;
            for (const auto& pw : pathway_map.pathways) {
                bool any_deg = false, any_measured = false;
                for (const auto& g : pw.genes) {
                    if (deg_set.count(g)) any_deg = true;
                    if (universe_set.count(g)) any_measured = true;
                }
                if (!any_measured) continue;
                (any_deg ? hit : unhit).push_back(pw.name);
            }
            Rng rng(derive_seed(seed, "dseqde:pp:" + ctx_tag));
            const std::size_t k = std::min(hit.size(), unhit.size());
            const auto pos = rng.sample(hit, k);
            const auto neg = rng.sample(unhit, k);
            for (std::size_t i = 0; i < k; ++i) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%05zu", i);
                QaItem item;
                item.id = "dseqde-pp-" + ctx_slug + "-" + buf;
                item.family = "DSeqDE";
                item.question_type = "pairwise_pathway";
                item.question = "Which of these two pathways would be deregulated by a drug "
                                "inhibiting the activity of the target " +
                                tc.target + " in " + tc.context + " cells?";
                item.options = {{"A", pos[i]}, {"B", neg[i]}};
                item.answer = "A";
                item.subjects = {{"target", tc.target}, {"pathway", pos[i]},
                                 {"context", tc.context}};
                set_entities(item, "target", {tc.target});
                set_entities(item, "pathway", {pos[i], neg[i]});
                set_entities(item, "context", {tc.context});
                result.items.push_back(shuffle_options(std::move(item), seed));
            }
        }
    }
    return result;
}

}  // namespace biofab::qa
