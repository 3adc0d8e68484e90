#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biofab/qa/item.hpp"
#include "biofab/qa/sources.hpp"
#include "biofab/qa/templates.hpp"
#include "biofab/stats/diffexp.hpp"

namespace biofab::qa {

struct GenWarning {
    std::string family;
    std::string context;
    std::string message;
};

struct GenResult {
    std::vector<QaItem> items;
    std::vector<GenWarning> warnings;
    std::vector<std::string> conflicts;  // TTP duplicate-question log
};

/// Binary A/B items asking which gene moves in the queried direction between
/// tumour islets and stroma. Positives are drawn (with replacement) from the
/// per-indication extreme tails (s >= Q0.99 up / s <= Q0.01 down), distractors
/// from outside the queried tail (s <= 0.5 up / s >= -0.5 down). An
/// indication/direction without both pools yields zero items plus a warning.
GenResult gen_spde(std::span<const SpatialScoreRecord> records,
                   std::size_t per_indication_count, std::uint64_t seed);

/// One phrasing variant per eligible (gene, indication) DE call; options are
/// the two tissue sides, keyed by DE class. Excluded genes emit nothing.
GenResult gen_tvhe(const std::map<std::string, std::vector<stats::DEResult>>& de_by_indication,
                   const TemplateBank& bank, std::uint64_t seed);

/// True/False items, exactly one technical rephrasing per scored record.
GenResult gen_gi(std::span<const GiFeatureRecord> records, std::uint64_t seed);

struct TcgasaConfig {
    std::string subtype;  // signature_expression | signature_similarity |
                          // cancer_similarity | cancer_signature_comparison
    std::string metric = "wasserstein";  // or "mmd"
    std::size_t count = 1000;
    double min_mean_gap_sd = 0.5;  // SE pair gap, in units of per-cancer mean SD
    double tail_fraction = 0.25;   // CSC high/low tail width
    std::size_t max_genes = 10;    // gene snippet length in question text
};

GenResult gen_tcgasa(const SignatureActivityTable& table, const TcgasaConfig& config,
                     std::uint64_t seed);

/// question_kind: yes_no_gene | pairwise_gene | pairwise_pathway | all.
/// Yes/No negatives are downsampled to per-target balance.
GenResult gen_dseqde(std::span<const TargetContextDegs> deg_sets, const PathwayMap& pathway_map,
                     const std::string& question_kind, std::uint64_t seed);

/// Most-perturbed-pathway items; correct option is the FDR<0.05 result with
/// maximal |NES| (ties broken by name), distractor drawn from the full
/// pathway space (easy) or the remaining significant set (hard).
GenResult gen_dpp(std::span<const DppContext> contexts, const std::string& difficulty,
                  std::uint64_t seed);

/// Yes/No items over the 28 target-profiling question types; duplicate
/// question texts collapse to the first occurrence and conflicting keys are
/// logged in GenResult::conflicts.
GenResult gen_ttp(std::span<const TtpAnnotation> annotations, std::uint64_t seed);

/// One item per protein: top-scoring pocket against one random other pocket.
/// Single-pocket proteins and tied top scores are skipped.
GenResult gen_sd(std::span<const ProteinPockets> proteins, std::uint64_t seed);

}  // namespace biofab::qa
