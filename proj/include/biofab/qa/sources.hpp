#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biofab/stats/enrichment.hpp"
#include "biofab/stats/ssgsea.hpp"

namespace biofab::qa {

/// One in-house spatial contrast score for a (indication, gene) pair.
struct SpatialScoreRecord {
    std::string indication;
    std::string gene_symbol;
    std::string ensembl_id;
    double score = 0;
};

/// Pre-labeled True/False feature record; items without a score are skipped.
struct GiFeatureRecord {
    std::string gene;
    std::string indication;
    std::string feature_type;  // key into gi_question_catalog()
    bool has_score = true;
    bool truth = false;
};

/// Per-sample signature activities per cancer: activity[cancer][signature]
/// is one scalar per sample.
struct SignatureActivityTable {
    std::vector<std::string> cancers;
    std::vector<stats::GeneSet> signatures;
    std::vector<std::vector<std::vector<double>>> activity;

    std::size_t cancer_index(const std::string& name) const;
    std::size_t signature_index(const std::string& name) const;
};

/// Deregulated genes for one (inhibitory target, cancer context) contrast.
struct TargetContextDegs {
    std::string target;
    std::string context;
    std::vector<std::string> degs;
    std::vector<std::string> universe;  // all measured genes incl. degs
};

struct PathwayMap {
    std::vector<stats::GeneSet> pathways;
};

/// Enrichment table for one (drug, cell line, concentration) context.
struct DppContext {
    std::string drug;
    std::string cell_line;
    double concentration_um = 0;
    std::vector<stats::EnrichmentResult> results;
    std::vector<std::string> pathway_space;  // full library names
};

/// Target decision table row; absent fields skip the matching templates.
struct TtpAnnotation {
    std::string target;
    std::map<std::string, bool> fields;
};

struct PocketRecord {
    std::vector<std::size_t> residue_positions;  // 1-based into the sequence
    double druggability = 0;
};

struct ProteinPockets {
    std::string protein_id;
    std::string sequence;  // one-letter residues
    std::vector<PocketRecord> pockets;
};

// Delimited-text ingestion (headers documented in the README).
std::vector<SpatialScoreRecord> read_spatial_scores(const std::string& path);
std::vector<GiFeatureRecord> read_gi_features(const std::string& path);
SignatureActivityTable read_activity_table(const std::string& activity_path,
                                           const std::string& signature_path);
std::vector<TargetContextDegs> read_deg_table(const std::string& path);
PathwayMap read_pathway_map(const std::string& path);
std::vector<DppContext> read_dpp_enrichment(const std::string& path);
std::vector<TtpAnnotation> read_ttp_annotations(const std::string& path);
std::vector<ProteinPockets> read_pockets(const std::string& path);

}  // namespace biofab::qa
