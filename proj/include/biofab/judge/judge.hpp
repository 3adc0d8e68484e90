#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biofab/qa/item.hpp"

namespace biofab::judge {

struct JudgeConfig {
    std::string endpoint;  // e.g. http://127.0.0.1:8080/v1
    std::string model = "default";
    double temperature = 0.0;
    std::size_t repeats = 5;
    double timeout_s = 30.0;
    std::size_t max_parallel = 4;
    std::size_t retries_per_repeat = 1;
    double backoff_ms = 200.0;
};

struct ChatMessage {
    std::string role;
    std::string content;
};

/// Pairwise reasoning-preference prompt. The wording is fixed; everything
/// outside the three slots must stay byte-identical to the template shipped
/// in tests/fixtures/preference_prompt_template.txt.
std::vector<ChatMessage> build_preference_prompt(const std::string& question,
                                                 const std::string& response1,
                                                 const std::string& response2);

const std::string& preference_system_template();
const std::string& preference_user_template();

/// Consistency prompt: question, options and the reasoning trace only. The
/// model's actual answer never enters the prompt.
std::vector<ChatMessage> build_consistency_prompt(const std::string& question,
                                                  std::span<const qa::QaOption> options,
                                                  const std::string& reasoning);

/// Reads the first <json>...</json> block and returns the "rating" field;
/// only -1 and +1 are accepted. Throws on anything else.
int parse_rating(const std::string& judge_text);

/// First whitespace-separated token (trailing .,;:) stripped) equal to an
/// option label. Throws when no label is found.
std::string parse_letter(const std::string& judge_text,
                         std::span<const qa::QaOption> options);

/// Transport over an OpenAI-compatible /chat/completions endpoint. Tests use
/// the same transport against an in-process mock server.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual std::string complete(const JudgeConfig& config,
                                 const std::vector<ChatMessage>& messages) = 0;
};

std::unique_ptr<ChatTransport> make_http_transport();

struct PreferenceResult {
    std::string item_id;
    std::vector<int> ratings;    // canonical orientation (+1 favours A)
    std::vector<bool> swapped;   // order-alternation schedule actually used
    std::size_t failures = 0;    // repeats lost after retry
    double mean = 0;             // over successful repeats
    std::string preferred;       // "A", "B" or "tie"
};

/// `repeats` judgments with response order alternating across repeats;
/// ratings are mapped back to canonical sides before averaging. A repeat
/// failing after one retry is recorded as missing; all-missing throws.
PreferenceResult judge_preference(const std::string& item_id, const std::string& question,
                                  const std::string& response_a, const std::string& response_b,
                                  const JudgeConfig& config, ChatTransport& transport);

struct ConsistencyResult {
    std::string item_id;
    std::string predicted;
    std::string actual;
    bool consistent = false;
};

ConsistencyResult judge_consistency(const qa::QaItem& item, const std::string& reasoning,
                                    const std::string& actual_answer,
                                    const JudgeConfig& config, ChatTransport& transport);

std::string preference_to_jsonl(const PreferenceResult& r);
std::string consistency_to_jsonl(const ConsistencyResult& r);

}  // namespace biofab::judge
