#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "biofab/parallel.hpp"
#include "biofab/qa/generators.hpp"

namespace biofab::qa {

/// Source tables the audit re-derives answers from. Only the spans/pointers
/// for families present in the corpus need to be populated.
struct AuditSources {
    std::span<const SpatialScoreRecord> spatial;
    const std::map<std::string, std::vector<stats::DEResult>>* tvhe_de = nullptr;
    std::span<const GiFeatureRecord> gi;
    const SignatureActivityTable* activities = nullptr;
    std::span<const TargetContextDegs> deg_sets;
    const PathwayMap* pathway_map = nullptr;
    std::span<const DppContext> dpp;
    std::span<const TtpAnnotation> ttp;
    std::span<const ProteinPockets> proteins;
};

struct AuditReport {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::map<std::string, std::size_t> checked_by_family;
    std::vector<std::string> failures;  // first 20 mismatch descriptions

    bool passing() const { return mismatches == 0 && checked > 0; }
};

/// Re-derives every item's stored answer from the source tables (tail
/// membership, DE class, argmin distance, argmax |NES|, DEG membership,
/// annotation flag, pocket argmax). A mismatch means the corpus and its
/// sources disagree.
AuditReport audit_corpus(std::span<const QaItem> items, const AuditSources& sources,
                         Exec exec = Exec::parallel);

/// DSeqDE yes/no per-target label balance: yes count == no count per target.
bool audit_dseqde_balance(std::span<const QaItem> items, std::string* detail = nullptr);

}  // namespace biofab::qa
