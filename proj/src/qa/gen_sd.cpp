#include <algorithm>
#include <stdexcept>

#include "biofab/qa/generators.hpp"
#include "biofab/qa/shuffle.hpp"
#include "biofab/rng.hpp"
#include "biofab/text.hpp"

namespace biofab::qa {

namespace {

std::string indexed_sequence(const std::string& sequence) {
    std::vector<std::string> tokens;
    tokens.reserve(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i)
        tokens.push_back(std::string(1, sequence[i]) + std::to_string(i + 1));
    return join(tokens, " ");
}

std::string residue_list(const std::string& sequence, const PocketRecord& pocket) {
    std::vector<std::string> tokens;
    tokens.reserve(pocket.residue_positions.size());
    for (std::size_t pos : pocket.residue_positions) {
        if (pos == 0 || pos > sequence.size())
            throw std::invalid_argument("pocket residue position out of range");
        tokens.push_back(std::string(1, sequence[pos - 1]) + std::to_string(pos));
    }
    return join(tokens, " ");
}

}  // namespace

GenResult gen_sd(std::span<const ProteinPockets> proteins, std::uint64_t seed) {
    GenResult result;

    for (const auto& protein : proteins) {
        if (protein.pockets.size() < 2) {
            result.warnings.push_back({"SD", protein.protein_id, "single pocket; skipped"});
            continue;
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < protein.pockets.size(); ++i)
            if (protein.pockets[i].druggability > protein.pockets[best].druggability) best = i;
        bool tied = false;
        for (std::size_t i = 0; i < protein.pockets.size(); ++i)
            if (i != best &&
                protein.pockets[i].druggability == protein.pockets[best].druggability)
                tied = true;
        if (tied) {
            result.warnings.push_back({"SD", protein.protein_id, "tied top score; skipped"});
            continue;
        }

        Rng rng(derive_seed(seed, "sd:" + protein.protein_id));
        std::size_t other = rng.below(protein.pockets.size() - 1);
        if (other >= best) ++other;

        QaItem item;
        item.id = "sd-" + slug(protein.protein_id);
        item.family = "SD";
        item.question_type = "druggability";
        item.question = "Given the protein with amino-acid sequence " +
                        indexed_sequence(protein.sequence) +
                        ", which one of these two binding sites (specified by the "
                        "corresponding amino-acids from the original sequence) has the highest "
                        "druggability score?";
        item.options = {{"A", residue_list(protein.sequence, protein.pockets[best])},
                        {"B", residue_list(protein.sequence, protein.pockets[other])}};
        item.answer = "A";
        item.subjects = {{"protein", protein.protein_id}};
        item.metadata["top_score"] = format_double(protein.pockets[best].druggability);
        item.metadata["other_score"] = format_double(protein.pockets[other].druggability);
        set_entities(item, "protein", {protein.protein_id});
        result.items.push_back(shuffle_options(std::move(item), seed));
    }
    return result;
}

}  // namespace biofab::qa
