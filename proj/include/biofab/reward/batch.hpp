#pragma once

#include <string>

#include "biofab/reward/reward.hpp"

namespace biofab::reward {

struct ScoreStats {
    std::size_t scored = 0;
    double mean_total = 0;
    double accuracy = 0;  // share with correct == 1
};

/// Joins completions JSONL ({item_id, text}) with the dataset and writes
/// rewards JSONL ({item_id, family, question_type, format, tag_count,
/// valid_choice, correct, total}), sorted by item_id. Completions whose
/// item_id has no dataset entry are an error listing the orphans.
ScoreStats score_completions_file(const std::string& dataset_path,
                                  const std::string& completions_path,
                                  const std::string& out_path,
                                  const VerifierConfig& config = {});

}  // namespace biofab::reward
