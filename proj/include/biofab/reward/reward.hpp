#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "biofab/qa/item.hpp"

namespace biofab::reward {

/// Literal tag occurrences and the bodies of the first matched pairs.
/// Tag spelling is never normalized; bodies are whitespace-trimmed.
struct CompletionParse {
    std::string raw;
    int think_open = 0;
    int think_close = 0;
    int answer_open = 0;
    int answer_close = 0;
    std::optional<std::string> think_body;
    std::optional<std::string> answer_body;
};

CompletionParse parse_completion(std::string_view text);

struct VerifierConfig {
    bool match_option_text = false;  // also accept the exact option text
};

/// 1 iff the completion is a think-block followed by an answer-block, each
/// tag exactly once, in order, with nothing but whitespace outside the blocks.
int reward_format(const CompletionParse& parse);

/// 0.25 for each of the four tags occurring exactly once.
double reward_tag_count(const CompletionParse& parse);

/// 1 iff the trimmed answer body exactly matches an option label
/// (case-sensitive); with match_option_text also an option's exact text.
int reward_valid_choice(const std::optional<std::string>& answer_body,
                        std::span<const qa::QaOption> options,
                        const VerifierConfig& config = {});

/// 1 iff the trimmed answer body equals the answer key (letter label).
int reward_correct(const std::optional<std::string>& answer_body, const std::string& key);

/// Config-aware variant matching the key letter or, with match_option_text,
/// the keyed option's exact text.
int reward_correct(const std::optional<std::string>& answer_body, const qa::QaItem& item,
                   const VerifierConfig& config);

struct RewardVector {
    int format = 0;
    double tag_count = 0;
    int valid_choice = 0;
    int correct = 0;
    double total = 0;  // unweighted sum, in [0, 4]
};

RewardVector total_reward(std::string_view text, const qa::QaItem& item,
                          const VerifierConfig& config = {});

}  // namespace biofab::reward
