#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biofab/qa/item.hpp"

namespace biofab::split {

struct RoleSpec {
    std::string role;
    bool include_entity_list = true;  // pull option/stem entities from metadata
};

struct SplitConfig {
    std::vector<RoleSpec> subject_roles;      // roles that must be disjoint
    double holdout_ratio = 0.1;               // used when holdout_subjects is empty
    std::vector<std::string> holdout_subjects;  // explicit test entities
    std::string holdout_role;                 // role of the explicit list
    std::vector<std::string> stratify_keys;   // metadata keys ("direction", ...)
    std::uint64_t seed = 0;
    double stratum_tolerance = 0.05;   // absolute share deviation from corpus
    double letter_tolerance = 0.02;    // answer-letter share deviation from 1/k
    std::size_t letter_min_items = 10000;  // letter check applies above this size
};

struct StratumRow {
    std::string key;
    std::string value;
    double corpus_share = 0;
    double train_share = 0;
    double test_share = 0;
    bool within_tolerance = true;
};

struct SplitReport {
    std::map<std::string, std::size_t> overlap_counts;  // role -> shared entities
    std::vector<std::string> violations;
    std::vector<StratumRow> strata;
    std::map<std::string, double> letter_share_train;
    std::map<std::string, double> letter_share_test;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t n_dropped = 0;

    bool passing() const;
    std::string to_text() const;
};

struct SplitResult {
    std::vector<qa::QaItem> train;
    std::vector<qa::QaItem> test;
    SplitReport report;
};

/// Entities an item contributes to a role: the subjects entry plus, when the
/// role says so, the option/stem entity list recorded at generation time.
std::vector<std::string> item_entities(const qa::QaItem& item, const RoleSpec& role);

/// Deterministic leakage-safe split. Explicit holdout subjects pin the test
/// side; otherwise items are grouped into components connected by shared
/// entities and assigned greedily against the ratio and stratification
/// targets. Throws when an entity spans every item.
SplitResult entity_disjoint_split(std::span<const qa::QaItem> items, const SplitConfig& config);

/// Recomputes every disjointness / stratification / letter-balance check from
/// scratch; violations are report content, not errors.
SplitReport verify_split(std::span<const qa::QaItem> train, std::span<const qa::QaItem> test,
                         const SplitConfig& config);

}  // namespace biofab::split
