#pragma once

#include <cstdint>
#include <map>

#include "biofab/qa/item.hpp"
#include "biofab/qa/sources.hpp"
#include "biofab/split/ontology.hpp"
#include "biofab/stats/diffexp.hpp"

namespace biofab::synth {

/// Sizes of the bundled synthetic fixtures. Defaults give a corpus of
/// 50k+ items across the eight families while staying laptop-fast.
struct SynthConfig {
    std::size_t spde_indications = 6;
    std::size_t spde_genes_per_indication = 500;

    std::size_t tvhe_indications = 12;
    std::size_t tvhe_genes = 260;
    std::size_t tvhe_tumour_samples = 10;
    std::size_t tvhe_normal_samples = 6;

    std::size_t gi_records = 21000;

    std::size_t tcgasa_cancers = 12;
    std::size_t tcgasa_signatures = 40;
    std::size_t tcgasa_samples_per_cancer = 40;
    std::size_t tcgasa_universe = 400;

    std::size_t dseq_targets = 36;
    std::size_t dseq_contexts_per_target = 2;
    std::size_t dseq_genes_per_target = 300;
    std::size_t dseq_degs_per_context = 60;
    std::size_t dseq_pathways_per_target = 24;

    std::size_t dpp_drugs = 24;
    std::size_t dpp_cell_lines = 6;
    std::size_t dpp_pathways = 70;
    std::size_t dpp_universe = 400;
    std::size_t dpp_n_perm = 1500;

    std::size_t ttp_targets = 160;
    std::size_t sd_proteins = 300;
};

std::vector<qa::SpatialScoreRecord> spatial_scores(std::uint64_t seed,
                                                   const SynthConfig& cfg = {});

/// Planted-DE expression matrices run through the real differential
/// expression kernel, one table per indication.
std::map<std::string, std::vector<stats::DEResult>> tvhe_de_tables(
    std::uint64_t seed, const SynthConfig& cfg = {});

std::vector<qa::GiFeatureRecord> gi_features(std::uint64_t seed, const SynthConfig& cfg = {});

/// Per-sample activities computed with the real rank-difference enrichment on
/// synthetic expression with planted signature shifts.
qa::SignatureActivityTable activity_table(std::uint64_t seed, const SynthConfig& cfg = {});

/// Per-target disjoint gene pools (assay panels), so entity-disjoint splits
/// are feasible by construction.
std::vector<qa::TargetContextDegs> deg_sets(std::uint64_t seed, const SynthConfig& cfg = {});
qa::PathwayMap dseq_pathway_map(std::uint64_t seed, const SynthConfig& cfg = {});

struct DppFixture {
    std::vector<qa::DppContext> contexts;
    split::OntologyGraph ontology;  // pathway hierarchy incl. member gene sets
};

/// Contexts with one planted perturbed pathway each; enrichment tables come
/// from the real permutation kernel.
DppFixture dpp_fixture(std::uint64_t seed, const SynthConfig& cfg = {});

std::vector<qa::TtpAnnotation> ttp_annotations(std::uint64_t seed, const SynthConfig& cfg = {});
std::vector<qa::ProteinPockets> protein_pockets(std::uint64_t seed, const SynthConfig& cfg = {});

/// Planted-rule trainer fixture: the control token in the question determines
/// the answer letter (family "TOY").
std::vector<qa::QaItem> toyrule_items(std::uint64_t seed, std::size_t count);

}  // namespace biofab::synth
